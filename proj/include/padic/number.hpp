#pragma once

// Truncated base-g digit series: every nonzero value is a residue class
// modulo g^(v+N), stored as N little-endian digits starting at exponent v.
// Prime and composite bases share the same representation; operations that
// need a unit (invert, div) refuse the ones that are zero divisors.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "padic/arith.hpp"
#include "padic/valuation.hpp"

namespace padic {

using Digit = std::uint64_t;

/// Digits are multiplied in 128-bit accumulators, so the base must fit in
/// 32 bits.
inline constexpr Digit kMaxBase = Digit{1} << 32;

class PadicNumber {
 public:
  enum class Kind { ExactZero, Approx, InexactZero };

  static PadicNumber exact_zero(Digit base) { return PadicNumber(check_base(base), Kind::ExactZero, 0, {}); }

  /// A value known to be 0 modulo base^modulus_exponent and nothing more.
  static PadicNumber inexact_zero(Digit base, std::int64_t modulus_exponent) {
    return PadicNumber(check_base(base), Kind::InexactZero, modulus_exponent, {});
  }

  /// Digits little-endian from exponent `valuation`; the lowest must be
  /// nonzero and the precision is the number of digits.
  static PadicNumber approx(Digit base, std::int64_t valuation, std::vector<Digit> digits) {
    check_base(base);
    if (digits.empty()) throw Error(ErrorKind::InvalidArgument, "precision must be at least 1");
    if (digits.front() == 0) throw Error(ErrorKind::InvalidArgument, "lowest digit must be nonzero");
    for (Digit d : digits) {
      if (d >= base) throw Error(ErrorKind::InvalidArgument, "digit out of range for base");
    }
    return PadicNumber(base, Kind::Approx, valuation, std::move(digits));
  }

  /// The residue class of `residue * base^low` modulo base^modulus_exponent.
  static PadicNumber from_residue(Digit base, const BigInt& residue, std::int64_t modulus_exponent,
                                  std::int64_t low = 0) {
    check_base(base);
    if (modulus_exponent <= low) return inexact_zero(base, modulus_exponent);
    auto count = static_cast<std::size_t>(modulus_exponent - low);
    BigInt r = mod(residue, ipow(BigInt(base), count));
    std::vector<Digit> digits(count);
    for (auto& d : digits) {
      d = (r % base).convert_to<Digit>();
      r /= base;
    }
    return normalized(base, low, std::move(digits), modulus_exponent);
  }

  Digit base() const { return base_; }
  Kind kind() const { return kind_; }
  bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
  bool is_inexact_zero() const { return kind_ == Kind::InexactZero; }
  bool is_approx() const { return kind_ == Kind::Approx; }

  /// Exponent of the lowest stored digit. Only meaningful for Approx.
  std::int64_t valuation() const { return approx_only().valuation_; }
  /// Relative precision N (number of stored digits).
  std::int64_t precision() const { return static_cast<std::int64_t>(approx_only().digits_.size()); }
  std::span<const Digit> digits() const { return digits_; }

  /// v + N for Approx, M for InexactZero(M). ExactZero has no bound.
  std::int64_t modulus_exponent() const {
    if (kind_ == Kind::ExactZero) throw Error(ErrorKind::InvalidArgument, "exact zero has unbounded precision");
    return kind_ == Kind::InexactZero ? valuation_ : valuation_ + precision();
  }

  /// The stored digits read as one integer in [0, base^N).
  BigInt unit_residue() const {
    BigInt r = 0;
    for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) r = r * base_ + *it;
    return r;
  }

  /// Text form `...d_k...d_0` (with a radix point when v < 0); the ` + O(b^M)`
  /// suffix is appended when `marker` is set. Inexact zeros always carry it.
  std::string render(bool marker = false) const;

  friend bool operator==(const PadicNumber&, const PadicNumber&) = default;

 private:
  friend PadicNumber add(const PadicNumber&, const PadicNumber&);
  friend PadicNumber mul(const PadicNumber&, const PadicNumber&);

  PadicNumber(Digit base, Kind kind, std::int64_t valuation, std::vector<Digit> digits)
      : base_(base), kind_(kind), valuation_(valuation), digits_(std::move(digits)) {}

  static Digit check_base(Digit base) {
    if (base < 2 || base >= kMaxBase) {
      throw Error(ErrorKind::InvalidArgument, "base must lie in [2, 2^32), got " + std::to_string(base));
    }
    return base;
  }

  const PadicNumber& approx_only() const {
    if (kind_ == Kind::Approx) return *this;
    if (kind_ == Kind::InexactZero) {
      throw Error(ErrorKind::PrecisionLoss, "zero to precision O(" + std::to_string(base_) + "^" +
                                                std::to_string(valuation_) + ") has no known valuation");
    }
    throw Error(ErrorKind::InvalidArgument, "exact zero has no digits");
  }

  // Drops low zero digits; all-zero windows become InexactZero(modulus).
  static PadicNumber normalized(Digit base, std::int64_t low, std::vector<Digit> digits,
                                std::int64_t modulus_exponent) {
    auto first = std::find_if(digits.begin(), digits.end(), [](Digit d) { return d != 0; });
    if (first == digits.end()) return PadicNumber(base, Kind::InexactZero, modulus_exponent, {});
    low += first - digits.begin();
    digits.erase(digits.begin(), first);
    return PadicNumber(base, Kind::Approx, low, std::move(digits));
  }

  Digit base_;
  Kind kind_;
  std::int64_t valuation_;  // v for Approx, M for InexactZero
  std::vector<Digit> digits_;
};

namespace detail {

using Wide = unsigned __int128;

inline void require_same_base(const PadicNumber& x, const PadicNumber& y) {
  if (x.base() != y.base()) {
    throw Error(ErrorKind::BaseMismatch,
                "bases " + std::to_string(x.base()) + " and " + std::to_string(y.base()) + " differ");
  }
}

inline char digit_char(Digit d) { return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10); }

/// q = base^valuation * numerator / denominator with base not dividing the
/// numerator and gcd(denominator, base) = 1.
struct UnitForm {
  std::int64_t valuation = 0;
  BigInt numerator;
  BigInt denominator;
  Digit denominator_inverse = 0;  // modulo base
};

inline UnitForm unit_form(const Rational& q, Digit base) {
  const BigInt g(base);
  BigInt a = num(q);
  BigInt b = den(q);
  // Split b into a part built from the base's primes and a part coprime to it.
  BigInt smooth = 1;
  for (BigInt f = gcd(b, g); f != 1; f = gcd(b, g)) {
    b /= f;
    smooth *= f;
  }
  // Clear the smooth part with the least power of the base it divides.
  std::int64_t v = 0;
  BigInt scale = 1;
  while (scale % smooth != 0) {
    scale *= g;
    --v;
  }
  a *= scale / smooth;
  BigInt qd, rd;
  for (;;) {
    boost::multiprecision::divide_qr(a, g, qd, rd);
    if (rd != 0) break;
    a.swap(qd);
    ++v;
  }
  UnitForm form{v, std::move(a), std::move(b), 0};
  form.denominator_inverse = mod_inverse(form.denominator, g)->convert_to<Digit>();
  return form;
}

/// One step of base-g long division of r / denominator: returns the digit d
/// with denominator*d == r (mod g) and replaces r by (r - denominator*d) / g.
inline Digit next_digit(BigInt& r, const UnitForm& form, Digit base) {
  Digit low = mod(r, BigInt(base)).convert_to<Digit>();
  Digit d = static_cast<Digit>(static_cast<Wide>(low) * form.denominator_inverse % base);
  r -= form.denominator * d;
  r /= base;
  return d;
}

/// r -= w * u modulo base^r.size().
inline void sub_scaled(std::vector<Digit>& r, Digit w, std::span<const Digit> u, Digit base) {
  Wide carry = 0;   // of w*u
  Digit borrow = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    Wide prod = carry + (i < u.size() ? static_cast<Wide>(w) * u[i] : 0);
    Digit pd = static_cast<Digit>(prod % base);
    carry = prod / base;
    Digit sub = pd + borrow;
    if (r[i] >= sub) {
      r[i] -= sub;
      borrow = 0;
    } else {
      r[i] = r[i] + base - sub;
      borrow = 1;
    }
  }
}

}  // namespace detail

/// The digits of q to N places. Zero maps to ExactZero. For a composite base
/// the value is first shifted so that the remaining denominator is coprime
/// to the base, which is always possible.
inline PadicNumber from_rational(const Rational& q, Digit base, std::int64_t precision) {
  if (precision < 1) throw Error(ErrorKind::InvalidArgument, "precision must be at least 1");
  if (q == 0) return PadicNumber::exact_zero(base);
  PadicNumber::exact_zero(base);  // validates the base
  detail::UnitForm form = detail::unit_form(q, base);
  std::vector<Digit> digits(static_cast<std::size_t>(precision));
  BigInt r = form.numerator;
  for (auto& d : digits) d = detail::next_digit(r, form, base);
  return PadicNumber::approx(base, form.valuation, std::move(digits));
}

inline PadicNumber add(const PadicNumber& x, const PadicNumber& y) {
  detail::require_same_base(x, y);
  if (x.is_exact_zero()) return y;
  if (y.is_exact_zero()) return x;
  const Digit base = x.base();
  const std::int64_t modulus = std::min(x.modulus_exponent(), y.modulus_exponent());
  const std::int64_t low = std::min(x.valuation_, y.valuation_);
  if (low >= modulus) return PadicNumber::inexact_zero(base, modulus);

  auto digit_at = [](const PadicNumber& z, std::int64_t e) -> Digit {
    if (!z.is_approx()) return 0;
    std::int64_t i = e - z.valuation_;
    return (i >= 0 && i < static_cast<std::int64_t>(z.digits_.size())) ? z.digits_[static_cast<std::size_t>(i)] : 0;
  };
  std::vector<Digit> out(static_cast<std::size_t>(modulus - low));
  Digit carry = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto e = low + static_cast<std::int64_t>(i);
    detail::Wide s = static_cast<detail::Wide>(digit_at(x, e)) + digit_at(y, e) + carry;
    out[i] = static_cast<Digit>(s % base);
    carry = static_cast<Digit>(s / base);
  }
  return PadicNumber::normalized(base, low, std::move(out), modulus);
}

/// Base complement: first nonzero digit d becomes base - d, every later digit
/// base - 1 - d. The result has the same valuation and precision.
inline PadicNumber negate(const PadicNumber& x) {
  if (!x.is_approx()) return x;
  std::vector<Digit> out(x.digits().begin(), x.digits().end());
  out[0] = x.base() - out[0];
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = x.base() - 1 - out[i];
  return PadicNumber::approx(x.base(), x.valuation(), std::move(out));
}

inline PadicNumber sub(const PadicNumber& x, const PadicNumber& y) {
  detail::require_same_base(x, y);
  return add(x, negate(y));
}

/// Valuations add and the relative precision is the smaller of the two.
/// In a composite base the low product digits may vanish, which raises the
/// valuation and spends precision.
inline PadicNumber mul(const PadicNumber& x, const PadicNumber& y) {
  detail::require_same_base(x, y);
  const Digit base = x.base();
  if (x.is_exact_zero() || y.is_exact_zero()) return PadicNumber::exact_zero(base);
  if (x.is_inexact_zero() && y.is_inexact_zero()) {
    return PadicNumber::inexact_zero(base, x.valuation_ + y.valuation_);
  }
  if (x.is_inexact_zero()) return PadicNumber::inexact_zero(base, x.valuation_ + y.valuation_);
  if (y.is_inexact_zero()) return PadicNumber::inexact_zero(base, x.valuation_ + y.valuation_);

  const std::size_t n = std::min(x.digits_.size(), y.digits_.size());
  std::vector<Digit> out(n);
  detail::Wide carry = 0;
  for (std::size_t k = 0; k < n; ++k) {
    detail::Wide acc = carry;
    carry = 0;
    for (std::size_t i = 0; i <= k; ++i) {
      acc += static_cast<detail::Wide>(x.digits_[i]) * y.digits_[k - i];
      // Keep the accumulator bounded by folding into the carry.
      if (acc >= (detail::Wide{1} << 120)) {
        carry += acc / base;
        acc %= base;
      }
    }
    out[k] = static_cast<Digit>(acc % base);
    carry += acc / base;
  }
  const std::int64_t v = x.valuation_ + y.valuation_;
  return PadicNumber::normalized(base, v, std::move(out), v + static_cast<std::int64_t>(n));
}

/// Multiplicative inverse to the operand's relative precision, computed digit
/// by digit. Fails for zeros and, in composite bases, for zero divisors.
inline PadicNumber invert(const PadicNumber& x) {
  if (!x.is_approx()) throw Error(ErrorKind::ZeroOperand, "cannot invert zero");
  const Digit base = x.base();
  auto d0 = mod_inverse(BigInt(x.digits()[0]), BigInt(base));
  if (!d0) {
    throw Error(ErrorKind::NotInvertible, "unit digit " + std::to_string(x.digits()[0]) +
                                              " shares a factor with base " + std::to_string(base));
  }
  const Digit inv0 = d0->convert_to<Digit>();
  const auto n = static_cast<std::size_t>(x.precision());
  std::vector<Digit> r(n, 0);
  r[0] = 1;
  std::vector<Digit> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<Digit>(static_cast<detail::Wide>(r[0]) * inv0 % base);
    detail::sub_scaled(r, out[i], x.digits(), base);
    r.erase(r.begin());  // r[0] is now zero
  }
  return PadicNumber::approx(base, -x.valuation(), std::move(out));
}

inline PadicNumber div(const PadicNumber& x, const PadicNumber& y) {
  detail::require_same_base(x, y);
  return mul(x, invert(y));
}

/// Index of the lowest nonzero digit. Inexact zeros only bound it from below
/// and raise PrecisionLoss.
inline Valuation digit_valuation(const PadicNumber& x) {
  if (x.is_exact_zero()) return Valuation::infinite();
  return Valuation::finite(x.valuation());
}

/// base^{-v} read off the digits; for a composite base this is the g-adic
/// size used by the decadic examples (|9 - (-1)|_10 = 10^{-1}).
inline NormValue digit_norm(const PadicNumber& x) {
  if (x.is_exact_zero()) return NormValue::zero();
  return NormValue::power(BigInt(x.base()), -x.valuation());
}

inline NormValue digit_distance(const PadicNumber& x, const PadicNumber& y) { return digit_norm(sub(x, y)); }

inline std::string PadicNumber::render(bool marker) const {
  auto suffix = [&](std::int64_t m) { return " + O(" + std::to_string(base_) + "^" + std::to_string(m) + ")"; };
  if (kind_ == Kind::ExactZero) return "0";
  if (kind_ == Kind::InexactZero) return "0" + suffix(valuation_);

  const bool spaced = base_ > 36;
  const std::int64_t top = modulus_exponent() - 1;
  const std::int64_t bottom = std::min<std::int64_t>(valuation_, 0);
  std::string out = "...";
  bool first = true;
  for (std::int64_t e = top; e >= bottom; --e) {
    if (e == -1) {
      out += '.';
      first = true;
    }
    Digit d = e < valuation_ ? 0 : digits_[static_cast<std::size_t>(e - valuation_)];
    if (spaced) {
      if (!first) out += ' ';
      out += std::to_string(d);
    } else {
      out += detail::digit_char(d);
    }
    first = false;
  }
  if (top < -1) {
    // Every known digit sits below the radix point.
    out.insert(3, ".");
  }
  if (marker) out += suffix(modulus_exponent());
  return out;
}

/// An eventually periodic digit stream: `preperiod` then `period` repeated
/// forever, both little-endian, starting at exponent `valuation`.
struct RationalExpansion {
  Digit base = 10;
  std::int64_t valuation = 0;
  std::vector<Digit> preperiod;
  std::vector<Digit> period;

  bool operator==(const RationalExpansion&) const = default;

  /// Most significant first, the repeating block in parentheses: 1/3 in
  /// base 10 prints as `(6)7`.
  std::string str() const {
    auto put = [&](std::string& s, Digit d) {
      if (base > 36) {
        if (!s.empty() && s.back() != '(') s += ' ';
        s += std::to_string(d);
      } else {
        s += detail::digit_char(d);
      }
    };
    std::string s = "(";
    for (auto it = period.rbegin(); it != period.rend(); ++it) put(s, *it);
    s += ")";
    for (auto it = preperiod.rbegin(); it != preperiod.rend(); ++it) put(s, *it);
    if (valuation > 0) s += std::string(static_cast<std::size_t>(valuation), '0');
    if (valuation < 0) s += " * " + std::to_string(base) + "^" + std::to_string(valuation);
    return s;
  }
};

/// Exact periodic expansion of q. Long division by a fixed denominator only
/// visits finitely many remainders, and distinct remainders give distinct
/// tails, so the first repeated remainder yields the minimal preperiod and
/// period.
inline RationalExpansion expansion_of(const Rational& q, Digit base) {
  PadicNumber::exact_zero(base);
  RationalExpansion e{base, 0, {}, {}};
  if (q == 0) {
    e.period = {0};
    return e;
  }
  detail::UnitForm form = detail::unit_form(q, base);
  e.valuation = form.valuation;
  std::map<BigInt, std::size_t> seen;
  std::vector<Digit> stream;
  BigInt r = form.numerator;
  while (true) {
    auto [it, inserted] = seen.emplace(r, stream.size());
    if (!inserted) {
      e.preperiod.assign(stream.begin(), stream.begin() + static_cast<std::ptrdiff_t>(it->second));
      e.period.assign(stream.begin() + static_cast<std::ptrdiff_t>(it->second), stream.end());
      return e;
    }
    stream.push_back(detail::next_digit(r, form, base));
  }
}

/// Sums the stream as a geometric series: base^v (P + base^L * C / (1 - base^K)).
inline Rational rational_of(const RationalExpansion& e) {
  if (e.period.empty()) throw Error(ErrorKind::InvalidArgument, "expansion needs a nonempty period");
  const BigInt g(e.base);
  auto digits_value = [&](const std::vector<Digit>& ds) {
    BigInt v = 0;
    for (auto it = ds.rbegin(); it != ds.rend(); ++it) v = v * g + *it;
    return v;
  };
  BigInt head = digits_value(e.preperiod);
  BigInt cycle = digits_value(e.period);
  BigInt shift = ipow(g, e.preperiod.size());
  BigInt period_mod = ipow(g, e.period.size());
  Rational value = Rational(head) + make_rational(shift * cycle, BigInt(1 - period_mod));
  return value * rpow(g, e.valuation);
}

}  // namespace padic
