#pragma once

// Expression language for the REPL and `eval`:
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := '-' unary | atom
//   atom  := RATLIT | call | '(' expr ')'
//   call  := NAME '(' expr (',' expr)* ')'
//   RATLIT := INT ('/' INT)?
//
// The `/` inside a rational literal binds tighter than division, so `343/2`
// is a single literal while `(343)/2` is a division.

#include <cctype>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "padic/arith.hpp"

namespace padic {

enum class BinaryOp { Add, Sub, Mul, Div };
enum class Function { Val, Norm, Dist, Sqrt, Expand };

constexpr std::string_view function_name(Function f) {
  switch (f) {
    case Function::Val: return "val";
    case Function::Norm: return "norm";
    case Function::Dist: return "dist";
    case Function::Sqrt: return "sqrt";
    case Function::Expand: return "expand";
  }
  return "";
}

constexpr std::size_t function_arity(Function f) { return f == Function::Dist ? 2 : 1; }

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Literal {
  Rational value;
};
struct Neg {
  ExprPtr operand;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Call {
  Function function;
  std::vector<ExprPtr> args;
};

struct Expr {
  std::variant<Literal, Neg, Binary, Call> node;
};

inline ExprPtr make_literal(Rational q) { return std::make_shared<const Expr>(Expr{Literal{std::move(q)}}); }
inline ExprPtr make_neg(ExprPtr e) { return std::make_shared<const Expr>(Expr{Neg{std::move(e)}}); }
inline ExprPtr make_binary(BinaryOp op, ExprPtr l, ExprPtr r) {
  return std::make_shared<const Expr>(Expr{Binary{op, std::move(l), std::move(r)}});
}
inline ExprPtr make_call(Function f, std::vector<ExprPtr> args) {
  return std::make_shared<const Expr>(Expr{Call{f, std::move(args)}});
}

/// Structural equality of trees.
inline bool same_tree(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* x = std::get_if<Literal>(&a.node)) return x->value == std::get<Literal>(b.node).value;
  if (auto* x = std::get_if<Neg>(&a.node)) return same_tree(*x->operand, *std::get<Neg>(b.node).operand);
  if (auto* x = std::get_if<Binary>(&a.node)) {
    const auto& y = std::get<Binary>(b.node);
    return x->op == y.op && same_tree(*x->lhs, *y.lhs) && same_tree(*x->rhs, *y.rhs);
  }
  const auto& x = std::get<Call>(a.node);
  const auto& y = std::get<Call>(b.node);
  if (x.function != y.function || x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (!same_tree(*x.args[i], *y.args[i])) return false;
  }
  return true;
}

/// A SyntaxError that knows where parsing stopped and what would have been
/// accepted there.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::set<std::string> expected, const std::string& detail = {})
      : Error(ErrorKind::SyntaxError, message(offset, expected, detail)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  static std::string message(std::size_t offset, const std::set<std::string>& expected, const std::string& detail) {
    std::string s = "at offset " + std::to_string(offset);
    if (!detail.empty()) s += ": " + detail;
    if (!expected.empty()) {
      s += detail.empty() ? ": expected " : "; expected ";
      bool first = true;
      for (const auto& e : expected) {
        if (!first) s += ", ";
        s += e;
        first = false;
      }
    }
    return s;
  }

  std::size_t offset_;
  std::set<std::string> expected_;
};

namespace detail {

enum class Tok { Int, Name, Plus, Minus, Star, Slash, LParen, RParen, Comma, End, Invalid };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (true) {
    while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    if (i == src.size()) {
      out.push_back({Tok::End, i, {}});
      return out;
    }
    const std::size_t start = i;
    const char c = src[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::Int, start, src.substr(start, i - start)});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      out.push_back({Tok::Name, start, src.substr(start, i - start)});
      continue;
    }
    Tok kind = Tok::Invalid;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      default: break;
    }
    ++i;
    out.push_back({kind, start, src.substr(start, 1)});
    // Nothing after an invalid character is ever inspected.
    if (kind == Tok::Invalid) {
      out.push_back({Tok::End, i, {}});
      return out;
    }
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

  ExprPtr parse_all() {
    ExprPtr e = expr({"end of input"});
    if (peek().kind != Tok::End) fail({"end of input"});
    return e;
  }

 private:
  // `follow` is what may legally come after the current expression; it is
  // only used to build the expected-token set of diagnostics.
  ExprPtr expr(const std::set<std::string>& follow) {
    ExprPtr lhs = term(follow);
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      BinaryOp op = next().kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      lhs = make_binary(op, lhs, term(follow));
    }
    return lhs;
  }

  ExprPtr term(const std::set<std::string>& follow) {
    ExprPtr lhs = unary();
    while (true) {
      if (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
        BinaryOp op = next().kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
        lhs = make_binary(op, lhs, unary());
        continue;
      }
      // Anything else must be something the enclosing rule accepts.
      static const std::set<std::string> kOperators{"'+'", "'-'", "'*'", "'/'"};
      if (!accepted_after_term(peek().kind, follow)) {
        std::set<std::string> expected = kOperators;
        expected.insert(follow.begin(), follow.end());
        fail(expected);
      }
      return lhs;
    }
  }

  static bool accepted_after_term(Tok t, const std::set<std::string>& follow) {
    switch (t) {
      case Tok::Plus:
      case Tok::Minus: return true;
      case Tok::End: return follow.count("end of input") != 0;
      case Tok::RParen: return follow.count("')'") != 0;
      case Tok::Comma: return follow.count("','") != 0;
      default: return false;
    }
  }

  ExprPtr unary() {
    if (peek().kind == Tok::Minus) {
      next();
      return make_neg(unary());
    }
    return atom();
  }

  ExprPtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: return rational_literal();
      case Tok::Name: return call();
      case Tok::LParen: {
        next();
        ExprPtr inner = expr({"')'"});
        expect(Tok::RParen, "')'");
        return inner;
      }
      default: fail({"'-'", "'('", "integer", "function name"});
    }
  }

  ExprPtr rational_literal() {
    const Token& n = next();
    BigInt numerator = parse_integer(n.text);
    if (peek().kind == Tok::Slash && peek(1).kind == Tok::Int) {
      next();
      const Token& d = next();
      BigInt denominator = parse_integer(d.text);
      if (denominator == 0) throw ParseError(d.offset, {"nonzero integer"}, "zero denominator");
      return make_literal(Rational(numerator, denominator));
    }
    return make_literal(Rational(numerator));
  }

  ExprPtr call() {
    const Token& name = next();
    static const std::vector<Function> kFunctions{Function::Val, Function::Norm, Function::Dist, Function::Sqrt,
                                                  Function::Expand};
    const Function* fn = nullptr;
    for (const auto& f : kFunctions) {
      if (function_name(f) == name.text) fn = &f;
    }
    if (fn == nullptr) {
      std::set<std::string> names;
      for (auto f : kFunctions) names.insert(std::string(function_name(f)));
      throw ParseError(name.offset, names, "unknown function '" + std::string(name.text) + "'");
    }
    expect(Tok::LParen, "'('");
    const std::size_t arity = function_arity(*fn);
    std::vector<ExprPtr> args;
    while (true) {
      const bool more = args.size() + 1 < arity;
      args.push_back(expr({more ? "','" : "')'"}));
      if (!more) break;
      expect(Tok::Comma, "','");
    }
    expect(Tok::RParen, "')'");
    return make_call(*fn, std::move(args));
  }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  void expect(Tok kind, const std::string& label) {
    if (peek().kind != kind) fail({label});
    next();
  }
  [[noreturn]] void fail(const std::set<std::string>& expected) const {
    const Token& t = peek();
    std::string detail = t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + std::string(t.text) + "'";
    throw ParseError(t.offset, expected, detail);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline int precedence(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    return (b->op == BinaryOp::Add || b->op == BinaryOp::Sub) ? 1 : 2;
  }
  if (std::holds_alternative<Neg>(e.node)) return 3;
  return 4;
}

}  // namespace detail

/// Throws ParseError (kind SyntaxError) at the first token that cannot
/// continue a valid expression.
inline ExprPtr parse(std::string_view text) { return detail::Parser(text).parse_all(); }

/// Canonical text with minimal parentheses; parse(render(e)) rebuilds e.
inline std::string render(const Expr& e) {
  auto wrap = [](const Expr& sub, bool needed) {
    std::string s = render(sub);
    return needed ? "(" + s + ")" : s;
  };
  if (const auto* lit = std::get_if<Literal>(&e.node)) {
    std::string s = to_string(lit->value);
    return lit->value < 0 ? "(" + s + ")" : s;
  }
  if (const auto* n = std::get_if<Neg>(&e.node)) {
    return "-" + wrap(*n->operand, detail::precedence(*n->operand) < 3);
  }
  if (const auto* b = std::get_if<Binary>(&e.node)) {
    const int prec = detail::precedence(e);
    static constexpr const char* kSymbols[] = {" + ", " - ", " * ", " / "};
    std::string lhs = wrap(*b->lhs, detail::precedence(*b->lhs) < prec);
    bool rhs_parens = detail::precedence(*b->rhs) <= prec;
    // `2 / 3` would read back as the literal 2/3.
    if (b->op == BinaryOp::Div && !lhs.empty() && std::isdigit(static_cast<unsigned char>(lhs.back())) &&
        std::holds_alternative<Literal>(b->rhs->node)) {
      rhs_parens = true;
    }
    return lhs + kSymbols[static_cast<int>(b->op)] + wrap(*b->rhs, rhs_parens);
  }
  const auto& c = std::get<Call>(e.node);
  std::string s = std::string(function_name(c.function)) + "(";
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    if (i != 0) s += ", ";
    s += render(*c.args[i]);
  }
  return s + ")";
}

}  // namespace padic
