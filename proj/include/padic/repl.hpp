#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "padic/eval.hpp"
#include "padic/expr.hpp"

namespace padic {

namespace detail {

inline std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

inline void report(std::ostream& err, const std::string& line, const Error& e) {
  err << "error: " << e.what() << '\n';
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    err << "  " << line << "\n  " << std::string(pe->offset(), ' ') << "^\n";
  }
}

inline bool parse_switch(const std::string& word) {
  if (word == "on") return true;
  if (word == "off") return false;
  throw Error(ErrorKind::InvalidArgument, "expected on or off, got '" + word + "'");
}

// Applies one `:` directive; returns false on `:quit`.
inline bool directive(const std::string& line, EvalContext& ctx) {
  std::istringstream in(line.substr(1));
  std::string cmd, key, value, extra;
  in >> cmd >> key >> value >> extra;
  if (cmd == "quit" || cmd == "q") return false;
  if (cmd != "set") throw Error(ErrorKind::InvalidArgument, "unknown directive ':" + cmd + "'");
  if (value.empty() || !extra.empty()) throw Error(ErrorKind::InvalidArgument, "usage: :set p|N|marker|machine <value>");
  EvalContext next = ctx;
  if (key == "p") {
    BigInt b = parse_integer(value);
    if (b < 2 || b >= kMaxBase) throw Error(ErrorKind::InvalidArgument, "base must lie in [2, 2^32)");
    next.base = b.convert_to<Digit>();
  } else if (key == "N") {
    BigInt n = parse_integer(value);
    if (n < 1 || n > 1'000'000) throw Error(ErrorKind::InvalidArgument, "precision must lie in [1, 10^6]");
    next.precision = n.convert_to<std::int64_t>();
  } else if (key == "marker") {
    next.marker = parse_switch(value);
  } else if (key == "machine") {
    next.machine = parse_switch(value);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown setting '" + key + "'");
  }
  ctx = next;
  return true;
}

}  // namespace detail

/// Line-oriented loop: expressions print their value, `:set` changes the
/// context, `:quit` ends. Errors are reported on `err` and the loop goes on.
/// Returns 0, or 5 if the output stream fails.
inline int repl(std::istream& in, std::ostream& out, std::ostream& err, EvalContext ctx = {}, bool prompt = false) {
  std::string raw;
  while (true) {
    if (prompt) out << "padic> " << std::flush;
    if (!std::getline(in, raw)) break;
    std::string line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    try {
      if (line.front() == ':') {
        if (!detail::directive(line, ctx)) break;
        continue;
      }
      out << format_result(eval(*parse(line), ctx), ctx) << '\n';
    } catch (const Error& e) {
      detail::report(err, line, e);
    }
    if (!out) return 5;
  }
  if (prompt) out << '\n';
  return out ? 0 : 5;
}

}  // namespace padic
