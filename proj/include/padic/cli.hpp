#pragma once

// The `padic` command line. Kept header-only so the test suites can drive
// every subcommand in-process with their own streams.

#include <CLI11.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "padic/adeles.hpp"
#include "padic/completion.hpp"
#include "padic/eval.hpp"
#include "padic/repl.hpp"

namespace padic::cli {

enum ExitCode : int { kOk = 0, kSyntax = 2, kDomain = 3, kCapability = 4, kIo = 5 };

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError:
    case ErrorKind::InvalidArgument: return kSyntax;
    case ErrorKind::NonPrimeBase:
    case ErrorKind::EvenPrimeUnsupported:
    case ErrorKind::FactorizationLimitExceeded: return kCapability;
    case ErrorKind::Io: return kIo;
    default: return kDomain;
  }
}

struct Options {
  std::string base = "10";
  std::int64_t precision = 12;
  bool marker = false;
  bool machine = false;
  bool real = false;

  EvalContext context() const {
    BigInt b = parse_integer(base);
    if (b < 2 || b >= kMaxBase) throw Error(ErrorKind::InvalidArgument, "base must lie in [2, 2^32)");
    EvalContext ctx{b.convert_to<Digit>(), precision, marker, machine};
    ctx.validate();
    return ctx;
  }

  Place place() const { return real ? Place::real() : Place::finite(parse_integer(base)); }
};

namespace detail {

inline std::vector<Rational> read_sequence(std::istream& in) {
  std::vector<Rational> seq;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = padic::detail::trim(line);
    if (!t.empty()) seq.push_back(parse_rational(t));
  }
  if (in.bad()) throw Error(ErrorKind::Io, "failed reading sequence");
  return seq;
}

inline void print_product_formula(const Rational& q, const Options& opt, bool expansions, std::uint64_t bound,
                                  std::ostream& out) {
  if (q == 0) throw Error(ErrorKind::ZeroInput, "the product formula needs a nonzero rational");
  AdeleVector a = adele_of(q, opt.precision, expansions, bound);
  Rational product = 1;
  for (const auto& [place, n] : a.rows()) {
    product *= n.to_rational();
    if (opt.machine) {
      out << "place=" << place.str() << ' ' << machine_record(n) << '\n';
      continue;
    }
    out << place.str() << " | " << n.str();
    if (expansions && place.is_finite()) {
      out << " | " << a.finite_entries.at(place.prime()).expansion->render(opt.marker);
    }
    out << '\n';
  }
  if (opt.machine) {
    out << "kind=product " << machine_record(NormValue::real_abs(product)) << '\n';
  } else {
    out << "product | " << to_string(product) << '\n';
  }
}

inline void print_cauchy(const CauchyReport& report, const Options& opt, std::ostream& out) {
  out << "place=" << report.place.str() << " depth=" << report.depth_checked << '\n';
  for (const auto& step : report.schedule) {
    out << "k=" << step.k << " tolerance=" << step.tolerance.str();
    if (step.start) {
      out << " m=" << *step.start;
    } else {
      const auto& w = *step.failure;
      out << " fail i=" << w.i << " j=" << w.j << " distance=" << w.distance.str();
    }
    out << '\n';
  }
  (void)opt;
}

}  // namespace detail

/// Runs one command line; returns the process exit status.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact p-adic arithmetic: valuations, norms, digit series, Hensel lifting and adeles", "padic"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("-p,--base", opt.base, "Base (a prime for norms and square roots); default 10");
  app.add_option("-N,--precision", opt.precision, "Significant digits; default 12")->check(CLI::PositiveNumber);
  app.add_flag("--marker", opt.marker, "Append the ` + O(b^M)` precision marker");
  app.add_flag("--machine", opt.machine, "Emit key=value records");

  std::vector<std::string> expr_words;
  std::string arg_a, arg_b, cauchy_file;
  std::size_t depth = 0;
  std::int64_t k_max = 5;
  std::uint64_t count = 10;
  std::uint64_t bound = kDefaultTrialBound;
  bool expansions = false;

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an expression");
  eval_cmd->add_option("expression", expr_words, "Expression text")->required();
  auto* expand_cmd = app.add_subcommand("expand", "Exact periodic digit expansion of a rational");
  expand_cmd->add_option("q", arg_a)->required();
  auto* norm_cmd = app.add_subcommand("norm", "Norm of a rational at the base or the real place");
  norm_cmd->add_option("q", arg_a)->required();
  norm_cmd->add_flag("--real", opt.real, "Use the real place");
  auto* dist_cmd = app.add_subcommand("dist", "Distance between two rationals");
  dist_cmd->add_option("a", arg_a)->required();
  dist_cmd->add_option("b", arg_b)->required();
  dist_cmd->add_flag("--real", opt.real, "Use the real place");
  auto* val_cmd = app.add_subcommand("val", "Valuation of a rational");
  val_cmd->add_option("q", arg_a)->required();
  auto* pf_cmd = app.add_subcommand("product-formula", "Norms at every place and their product");
  pf_cmd->add_option("q", arg_a)->required();
  pf_cmd->add_flag("--expansions", expansions, "Show the digit expansion at each prime");
  pf_cmd->add_option("--bound", bound, "Trial division bound")->check(CLI::PositiveNumber);
  auto* cauchy_cmd = app.add_subcommand("cauchy", "Prefix-certified Cauchy analysis of a sequence");
  cauchy_cmd->add_option("file", cauchy_file, "One rational per line; stdin when omitted or '-'");
  cauchy_cmd->add_option("--depth", depth, "Terms to inspect; default all");
  cauchy_cmd->add_option("--k-max", k_max, "Largest tolerance exponent; default 5")->check(CLI::PositiveNumber);
  cauchy_cmd->add_flag("--real", opt.real, "Use the real place");
  auto* sqrt_cmd = app.add_subcommand("sqrt", "Square root by Hensel lifting (odd prime base)");
  sqrt_cmd->add_option("a", arg_a)->required();
  app.add_subcommand("idempotent", "Nontrivial idempotent pair of a composite base");
  auto* probe_cmd = app.add_subcommand("probe", "Norms of n*x for n = 1..count");
  probe_cmd->add_option("x", arg_a)->required();
  probe_cmd->add_option("--count", count, "Largest multiple; default 10")->check(CLI::PositiveNumber);
  probe_cmd->add_flag("--real", opt.real, "Use the real place");
  app.add_subcommand("repl", "Interactive evaluator");

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kSyntax;
  }

  try {
    EvalContext ctx = opt.context();
    auto* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "eval") {
      std::string text;
      for (const auto& w : expr_words) text += (text.empty() ? "" : " ") + w;
      try {
        out << format_result(eval(*parse(text), ctx), ctx) << '\n';
      } catch (const ParseError& e) {
        padic::detail::report(err, text, e);
        return kSyntax;
      }
    } else if (name == "expand") {
      out << format_result(expansion_of(parse_rational(arg_a), ctx.base), ctx) << '\n';
    } else if (name == "norm" || name == "dist") {
      Rational q = parse_rational(arg_a);
      if (name == "dist") q -= parse_rational(arg_b);
      NormValue n = (opt.real || ctx.prime_base()) ? norm(q, opt.place())
                                                   : digit_norm(from_rational(q, ctx.base, ctx.precision));
      out << (ctx.machine ? "kind=norm place=" + (opt.real ? std::string("inf") : opt.base) + " " + machine_record(n)
                          : n.str())
          << '\n';
    } else if (name == "val") {
      Rational q = parse_rational(arg_a);
      Valuation v = ctx.prime_base() ? valuation_rat(q, BigInt(ctx.base))
                                     : digit_valuation(from_rational(q, ctx.base, ctx.precision));
      out << format_result(v, ctx) << '\n';
    } else if (name == "product-formula") {
      detail::print_product_formula(parse_rational(arg_a), opt, expansions, bound, out);
    } else if (name == "cauchy") {
      std::vector<Rational> seq;
      if (cauchy_file.empty() || cauchy_file == "-") {
        seq = detail::read_sequence(in);
      } else {
        std::ifstream file(cauchy_file);
        if (!file) throw Error(ErrorKind::Io, "cannot open " + cauchy_file);
        seq = detail::read_sequence(file);
      }
      std::size_t d = depth == 0 ? seq.size() : depth;
      detail::print_cauchy(is_cauchy(seq, opt.place(), d, k_max), opt, out);
    } else if (name == "sqrt") {
      out << format_result(hensel_sqrt(parse_rational(arg_a), BigInt(ctx.base), ctx.precision), ctx) << '\n';
    } else if (name == "idempotent") {
      auto [e, e_comp] = idempotent_witness(ctx.base, ctx.precision);
      if (ctx.machine) {
        out << "name=e " << machine_record(e) << '\n' << "name=e' " << machine_record(e_comp) << '\n';
      } else {
        out << "e  = " << e.render(ctx.marker) << '\n' << "e' = " << e_comp.render(ctx.marker) << '\n';
      }
    } else if (name == "probe") {
      auto norms = archimedean_probe(parse_rational(arg_a), opt.place(), count);
      for (std::size_t i = 0; i < norms.size(); ++i) {
        if (ctx.machine) {
          out << "n=" << i + 1 << ' ' << machine_record(norms[i]) << '\n';
        } else {
          out << i + 1 << ' ' << norms[i].str() << '\n';
        }
      }
    } else if (name == "repl") {
      return repl(in, out, err, ctx, false);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
  out.flush();
  return out ? kOk : kIo;
}

}  // namespace padic::cli
