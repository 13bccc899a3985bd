#pragma once

// Evaluates expression trees in a (base, precision) context. Subtrees built
// only from literals stay exact rationals; anything involving a lifted
// square root is carried as a digit series in the number module.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "padic/completion.hpp"
#include "padic/expr.hpp"
#include "padic/number.hpp"
#include "padic/valuation.hpp"

namespace padic {

struct EvalContext {
  Digit base = 10;
  std::int64_t precision = 12;
  bool marker = false;
  bool machine = false;

  void validate() const {
    if (base < 2 || base >= kMaxBase) throw Error(ErrorKind::InvalidArgument, "base must lie in [2, 2^32)");
    if (precision < 1) throw Error(ErrorKind::InvalidArgument, "precision must be at least 1");
  }
  bool prime_base() const { return is_prime(BigInt(base)); }
};

using EvalResult = std::variant<PadicNumber, Valuation, NormValue, RationalExpansion>;

namespace detail {

struct Evaluated {
  EvalResult value;
  std::optional<Rational> exact;
};

inline Evaluated exact_number(const Rational& q, const EvalContext& ctx) {
  return {from_rational(q, ctx.base, ctx.precision), q};
}

inline PadicNumber as_digits(const Evaluated& v, const EvalContext& ctx) {
  if (v.exact) return from_rational(*v.exact, ctx.base, ctx.precision);
  if (const auto* x = std::get_if<PadicNumber>(&v.value)) return *x;
  throw Error(ErrorKind::InvalidArgument, "operand has no numeric value");
}

inline const Rational& require_exact(const Evaluated& v, std::string_view what) {
  if (!v.exact) throw Error(ErrorKind::PrecisionLoss, std::string(what) + " needs an exact rational operand");
  return *v.exact;
}

inline Evaluated valuation_of(const Evaluated& v, const EvalContext& ctx) {
  Valuation result = (v.exact && ctx.prime_base()) ? valuation_rat(*v.exact, BigInt(ctx.base))
                                                   : digit_valuation(as_digits(v, ctx));
  std::optional<Rational> exact;
  if (result.is_finite()) exact = Rational(result.exponent());
  return {result, exact};
}

inline Evaluated norm_of(const Evaluated& v, const EvalContext& ctx) {
  NormValue result = (v.exact && ctx.prime_base()) ? norm(*v.exact, Place::finite(BigInt(ctx.base)))
                                                   : digit_norm(as_digits(v, ctx));
  return {result, result.to_rational()};
}

inline Evaluated eval_node(const Expr& e, const EvalContext& ctx) {
  if (const auto* lit = std::get_if<Literal>(&e.node)) return exact_number(lit->value, ctx);

  if (const auto* n = std::get_if<Neg>(&e.node)) {
    Evaluated x = eval_node(*n->operand, ctx);
    if (x.exact) return exact_number(-*x.exact, ctx);
    return {negate(as_digits(x, ctx)), std::nullopt};
  }

  if (const auto* b = std::get_if<Binary>(&e.node)) {
    Evaluated l = eval_node(*b->lhs, ctx);
    Evaluated r = eval_node(*b->rhs, ctx);
    if (l.exact && r.exact) {
      switch (b->op) {
        case BinaryOp::Add: return exact_number(*l.exact + *r.exact, ctx);
        case BinaryOp::Sub: return exact_number(*l.exact - *r.exact, ctx);
        case BinaryOp::Mul: return exact_number(*l.exact * *r.exact, ctx);
        case BinaryOp::Div:
          if (*r.exact == 0) throw Error(ErrorKind::ZeroOperand, "division by zero");
          return exact_number(*l.exact / *r.exact, ctx);
      }
    }
    PadicNumber x = as_digits(l, ctx), y = as_digits(r, ctx);
    switch (b->op) {
      case BinaryOp::Add: return {add(x, y), std::nullopt};
      case BinaryOp::Sub: return {sub(x, y), std::nullopt};
      case BinaryOp::Mul: return {mul(x, y), std::nullopt};
      case BinaryOp::Div: return {div(x, y), std::nullopt};
    }
  }

  const auto& c = std::get<Call>(e.node);
  switch (c.function) {
    case Function::Val: return valuation_of(eval_node(*c.args[0], ctx), ctx);
    case Function::Norm: return norm_of(eval_node(*c.args[0], ctx), ctx);
    case Function::Dist: {
      Evaluated a = eval_node(*c.args[0], ctx);
      Evaluated b2 = eval_node(*c.args[1], ctx);
      if (a.exact && b2.exact) return norm_of(exact_number(*a.exact - *b2.exact, ctx), ctx);
      return norm_of({sub(as_digits(a, ctx), as_digits(b2, ctx)), std::nullopt}, ctx);
    }
    case Function::Sqrt: {
      const Rational& a = require_exact(eval_node(*c.args[0], ctx), "sqrt");
      return {hensel_sqrt(a, BigInt(ctx.base), ctx.precision), std::nullopt};
    }
    case Function::Expand: {
      const Rational& q = require_exact(eval_node(*c.args[0], ctx), "expand");
      return {expansion_of(q, ctx.base), q};
    }
  }
  throw Error(ErrorKind::InvalidArgument, "malformed expression");
}

template <typename Range>
std::string join_digits(const Range& ds) {
  std::string s;
  for (auto d : ds) {
    if (!s.empty()) s += ',';
    s += std::to_string(d);
  }
  return s;
}

}  // namespace detail

inline EvalResult eval(const Expr& e, const EvalContext& ctx) {
  ctx.validate();
  return detail::eval_node(e, ctx).value;
}

/// `kind=padic base=10 valuation=0 digits=7,6,6,6 modulus_exponent=4`;
/// digits are listed least significant first.
inline std::string machine_record(const PadicNumber& x) {
  std::string base = " base=" + std::to_string(x.base());
  if (x.is_exact_zero()) return "kind=zero" + base;
  if (x.is_inexact_zero()) return "kind=inexact_zero" + base + " modulus_exponent=" + std::to_string(x.modulus_exponent());
  return "kind=padic" + base + " valuation=" + std::to_string(x.valuation()) +
         " digits=" + detail::join_digits(x.digits()) + " modulus_exponent=" + std::to_string(x.modulus_exponent());
}

inline std::string machine_record(const NormValue& n) {
  Rational q = n.to_rational();
  return "norm_num=" + num(q).str() + " norm_den=" + den(q).str();
}

inline std::string format_result(const EvalResult& r, const EvalContext& ctx) {
  const std::string base = " base=" + std::to_string(ctx.base);
  if (const auto* x = std::get_if<PadicNumber>(&r)) {
    return ctx.machine ? machine_record(*x) : x->render(ctx.marker);
  }
  if (const auto* v = std::get_if<Valuation>(&r)) {
    return ctx.machine ? "kind=valuation" + base + " valuation=" + v->str() : v->str();
  }
  if (const auto* n = std::get_if<NormValue>(&r)) {
    return ctx.machine ? "kind=norm" + base + " " + machine_record(*n) : n->str();
  }
  const auto& e = std::get<RationalExpansion>(r);
  if (!ctx.machine) return e.str();
  return "kind=expansion" + base + " valuation=" + std::to_string(e.valuation) +
         " digits=" + detail::join_digits(e.preperiod) + " period=" + detail::join_digits(e.period);
}

}  // namespace padic
