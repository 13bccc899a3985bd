#pragma once

// p-adic valuation, the place norms on Q and the metric they induce.
// Every value here is exact; nothing is ever converted to floating point.

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <variant>

#include "padic/arith.hpp"
#include "padic/primes.hpp"

namespace padic {

/// v_p(x): a signed exponent, or +infinity for x = 0.
class Valuation {
 public:
  static constexpr Valuation infinite() { return Valuation(); }
  static constexpr Valuation finite(std::int64_t e) { return Valuation(e); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  constexpr std::int64_t exponent() const { return exponent_; }

  /// v(ab) = v(a) + v(b), with infinity absorbing.
  friend constexpr Valuation operator+(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return infinite();
    return finite(a.exponent_ + b.exponent_);
  }

  friend constexpr bool operator==(Valuation a, Valuation b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.exponent_ == b.exponent_);
  }
  friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.exponent_ <=> b.exponent_;
  }

  std::string str() const { return infinite_ ? "inf" : std::to_string(exponent_); }
  friend std::ostream& operator<<(std::ostream& os, Valuation v) { return os << v.str(); }

 private:
  constexpr Valuation() = default;
  constexpr explicit Valuation(std::int64_t e) : infinite_(false), exponent_(e) {}

  bool infinite_ = true;
  std::int64_t exponent_ = 0;
};

/// A place of Q: the real place or the finite place of a prime.
class Place {
 public:
  static Place real() { return Place(); }

  /// Throws NonPrimeBase unless p passes the primality check. Primes beyond
  /// 64 bits are accepted on a probabilistic test and marked as such.
  static Place finite(const BigInt& p) {
    Primality result = check_prime(p);
    if (result == Primality::Composite) {
      throw Error(ErrorKind::NonPrimeBase, p.str() + " is not prime");
    }
    return Place(p, result == Primality::ProbablePrime);
  }

  bool is_real() const { return prime_ == 0; }
  bool is_finite() const { return prime_ != 0; }
  /// Zero for the real place.
  const BigInt& prime() const { return prime_; }
  bool probable_prime() const { return probable_; }

  std::string str() const { return is_real() ? "inf" : prime_.str(); }

  friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
  /// The real place sorts first, then primes ascending.
  friend bool operator<(const Place& a, const Place& b) { return a.prime_ < b.prime_; }

 private:
  Place() = default;
  Place(BigInt p, bool probable) : prime_(std::move(p)), probable_(probable) {}

  BigInt prime_ = 0;
  bool probable_ = false;
};

/// The exact value of a norm: zero, an integer power of a base, or the real
/// absolute value as a nonnegative rational.
class NormValue {
 public:
  struct Zero {
    bool operator==(const Zero&) const = default;
  };
  struct Power {
    BigInt base;
    std::int64_t exponent;
    bool operator==(const Power&) const = default;
  };
  struct RealAbs {
    Rational value;
    bool operator==(const RealAbs&) const = default;
  };

  static NormValue zero() { return NormValue(Zero{}); }
  static NormValue power(BigInt base, std::int64_t exponent) {
    return NormValue(Power{std::move(base), exponent});
  }
  static NormValue real_abs(Rational value) {
    if (value == 0) return zero();
    if (value < 0) value = -value;
    return NormValue(RealAbs{std::move(value)});
  }

  bool is_zero() const { return std::holds_alternative<Zero>(rep_); }
  bool is_power() const { return std::holds_alternative<Power>(rep_); }
  bool is_real_abs() const { return std::holds_alternative<RealAbs>(rep_); }
  const Power& as_power() const { return std::get<Power>(rep_); }
  const RealAbs& as_real_abs() const { return std::get<RealAbs>(rep_); }

  Rational to_rational() const {
    if (is_zero()) return Rational(0);
    if (is_power()) return rpow(as_power().base, as_power().exponent);
    return as_real_abs().value;
  }

  std::string str() const { return to_string(to_rational()); }

  friend bool operator==(const NormValue& a, const NormValue& b) {
    if (a.is_power() && b.is_power() && a.as_power().base == b.as_power().base) {
      return a.as_power().exponent == b.as_power().exponent;
    }
    return a.to_rational() == b.to_rational();
  }

  /// Same-base powers compare by exponent; everything else by exact value.
  friend std::strong_ordering operator<=>(const NormValue& a, const NormValue& b) {
    if (a.is_zero() || b.is_zero()) return !a.is_zero() <=> !b.is_zero();
    if (a.is_power() && b.is_power() && a.as_power().base == b.as_power().base) {
      return a.as_power().exponent <=> b.as_power().exponent;
    }
    Rational x = a.to_rational(), y = b.to_rational();
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Exact product. Same-base powers add exponents; mixing bases is refused.
  friend NormValue operator*(const NormValue& a, const NormValue& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    if (a.is_power() && b.is_power()) {
      if (a.as_power().base != b.as_power().base) {
        throw Error(ErrorKind::BaseMismatch, "norms at different places");
      }
      return power(a.as_power().base, a.as_power().exponent + b.as_power().exponent);
    }
    if (a.is_real_abs() && b.is_real_abs()) return real_abs(a.as_real_abs().value * b.as_real_abs().value);
    throw Error(ErrorKind::BaseMismatch, "norms at different places");
  }

  friend std::ostream& operator<<(std::ostream& os, const NormValue& n) { return os << n.str(); }

 private:
  explicit NormValue(std::variant<Zero, Power, RealAbs> rep) : rep_(std::move(rep)) {}

  std::variant<Zero, Power, RealAbs> rep_;
};

namespace detail {

// Exponent of the largest power of p dividing n != 0, by repeated division.
inline std::int64_t multiplicity(BigInt n, const BigInt& p) {
  std::int64_t e = 0;
  BigInt q, r;
  for (;;) {
    boost::multiprecision::divide_qr(n, p, q, r);
    if (r != 0) return e;
    n.swap(q);
    ++e;
  }
}

inline void require_prime(const BigInt& p) {
  if (!is_prime(p)) throw Error(ErrorKind::NonPrimeBase, p.str() + " is not prime");
}

}  // namespace detail

inline Valuation valuation_int(const BigInt& n, const BigInt& p) {
  detail::require_prime(p);
  if (n == 0) return Valuation::infinite();
  return Valuation::finite(detail::multiplicity(n, p));
}

inline Valuation valuation_rat(const Rational& q, const BigInt& p) {
  detail::require_prime(p);
  if (q == 0) return Valuation::infinite();
  return Valuation::finite(detail::multiplicity(num(q), p) - detail::multiplicity(den(q), p));
}

/// |q|_p = p^{-v_p(q)} at a finite place, |q| at the real place.
inline NormValue norm(const Rational& q, const Place& place) {
  if (q == 0) return NormValue::zero();
  if (place.is_real()) return NormValue::real_abs(q);
  const BigInt& p = place.prime();
  std::int64_t v = detail::multiplicity(num(q), p) - detail::multiplicity(den(q), p);
  return NormValue::power(p, -v);
}

inline NormValue distance(const Rational& a, const Rational& b, const Place& place) {
  return norm(a - b, place);
}

/// Membership of x in the ball of the given radius around center: strict
/// comparison for the open ball, non-strict for the closed one.
inline bool ball_contains(const Rational& center, const NormValue& radius, const Rational& x,
                          const Place& place, bool closed) {
  NormValue d = distance(center, x, place);
  return closed ? d <= radius : d < radius;
}

}  // namespace padic
