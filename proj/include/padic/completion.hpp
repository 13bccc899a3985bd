#pragma once

// Witnesses for completing Q at a place: prefix-certified Cauchy analysis,
// square roots lifted digit by digit, idempotents of composite bases, and
// the non-Archimedean probe.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "padic/arith.hpp"
#include "padic/number.hpp"
#include "padic/primes.hpp"
#include "padic/valuation.hpp"

namespace padic {

/// Tolerance p^{-k} at a finite place, 10^{-k} at the real place.
inline NormValue cauchy_tolerance(const Place& place, std::int64_t k) {
  if (place.is_real()) return NormValue::real_abs(rpow(BigInt(10), -k));
  return NormValue::power(place.prime(), -k);
}

struct CauchyWitness {
  std::size_t i;
  std::size_t j;
  NormValue distance;
};

struct CauchyStep {
  std::int64_t k;
  NormValue tolerance;
  /// Least start index certified within the inspected prefix, if any.
  std::optional<std::size_t> start;
  /// Set exactly when `start` is empty: a pair at or beyond every candidate
  /// start whose distance is not below the tolerance.
  std::optional<CauchyWitness> failure;
};

struct CauchyReport {
  Place place;
  std::size_t depth_checked;
  std::vector<CauchyStep> schedule;
};

/// For each k in 1..k_max finds the least m such that every pair
/// m <= i < j < depth is closer than the tolerance. A start is only reported
/// when at least one pair remains to certify it; nothing is claimed about
/// terms past the inspected prefix.
inline CauchyReport is_cauchy(std::span<const Rational> seq, const Place& place, std::size_t depth,
                              std::int64_t k_max) {
  if (depth < 2) throw Error(ErrorKind::InsufficientDepth, "need at least two terms");
  if (depth > seq.size()) throw Error(ErrorKind::InsufficientDepth, "depth exceeds sequence length");

  // Largest distance from term i to any later term, and where it occurs.
  std::vector<std::pair<NormValue, std::size_t>> spread;
  spread.reserve(depth - 1);
  for (std::size_t i = 0; i + 1 < depth; ++i) {
    NormValue best = distance(seq[i], seq[i + 1], place);
    std::size_t at = i + 1;
    for (std::size_t j = i + 2; j < depth; ++j) {
      NormValue d = distance(seq[i], seq[j], place);
      if (d > best) {
        best = d;
        at = j;
      }
    }
    spread.emplace_back(std::move(best), at);
  }

  CauchyReport report{place, depth, {}};
  for (std::int64_t k = 1; k <= k_max; ++k) {
    NormValue tol = cauchy_tolerance(place, k);
    std::optional<std::size_t> last_bad;
    for (std::size_t i = spread.size(); i-- > 0;) {
      if (spread[i].first >= tol) {
        last_bad = i;
        break;
      }
    }
    CauchyStep step{k, tol, std::nullopt, std::nullopt};
    if (!last_bad) {
      step.start = 0;
    } else if (*last_bad + 2 < depth) {
      step.start = *last_bad + 1;
    } else {
      const auto& [d, j] = spread[*last_bad];
      step.failure = CauchyWitness{*last_bad, j, d};
    }
    report.schedule.push_back(std::move(step));
  }
  return report;
}

namespace detail {

// Square root of a quadratic residue n modulo an odd prime p (Tonelli-Shanks).
inline BigInt sqrt_mod_prime(const BigInt& n, const BigInt& p) {
  using boost::multiprecision::powm;
  if (n == 0) return 0;
  BigInt q = p - 1;
  std::uint64_t s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  BigInt z = 2;
  while (powm(z, (p - 1) / 2, p) != p - 1) ++z;
  BigInt c = powm(z, q, p);
  BigInt r = powm(n, (q + 1) / 2, p);
  BigInt t = powm(n, q, p);
  std::uint64_t m = s;
  while (t != 1) {
    std::uint64_t i = 0;
    for (BigInt tt = t; tt != 1; tt = tt * tt % p) ++i;
    BigInt b = c;
    for (std::uint64_t e = 0; e + i + 1 < m; ++e) b = b * b % p;
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return r;
}

}  // namespace detail

/// Square root of a in Q_p to N digits, for an odd prime p. The root whose
/// unit digit lies in [1, (p-1)/2] is returned; the other one is its negation.
inline PadicNumber hensel_sqrt(const Rational& a, const BigInt& p, std::int64_t precision) {
  detail::require_prime(p);
  if (p == 2) throw Error(ErrorKind::EvenPrimeUnsupported, "square roots at p = 2 are not supported");
  if (precision < 1) throw Error(ErrorKind::InvalidArgument, "precision must be at least 1");
  if (p >= kMaxBase) throw Error(ErrorKind::InvalidArgument, "prime too large for a digit base");
  const Digit base = p.convert_to<Digit>();
  if (a == 0) return PadicNumber::exact_zero(base);

  const std::int64_t v = valuation_rat(a, p).exponent();
  if (v % 2 != 0) {
    throw Error(ErrorKind::OddValuation, "v_" + p.str() + "(" + to_string(a) + ") = " + std::to_string(v) + " is odd");
  }
  const Rational unit = a * rpow(p, -v);
  const BigInt u0 = rational_residue(unit, p);
  if (boost::multiprecision::powm(u0, (p - 1) / 2, p) != 1) {
    throw Error(ErrorKind::NoSquareRoot, to_string(a) + " is not a square modulo " + p.str());
  }
  BigInt x = detail::sqrt_mod_prime(u0, p);
  if (x > (p - 1) / 2) x = p - x;

  // Digit-by-digit lift: with x^2 == u mod p^k, the next digit d solves
  // 2 x0 d == (u - x^2) / p^k (mod p).
  const BigInt modulus = ipow(p, static_cast<std::uint64_t>(precision));
  const BigInt u = rational_residue(unit, modulus);
  const BigInt half_slope = *mod_inverse(2 * x, p);
  BigInt pk = p;
  for (std::int64_t k = 1; k < precision; ++k) {
    BigInt excess = (u - x * x) / pk;  // exact: x^2 == u mod p^k
    BigInt d = mod(excess * half_slope, p);
    x += d * pk;
    pk *= p;
  }
  PadicNumber root = PadicNumber::from_residue(base, x, precision);
  std::vector<Digit> digits(root.digits().begin(), root.digits().end());
  return PadicNumber::approx(base, v / 2, std::move(digits));
}

/// A pair (e, 1 - e) with e^2 == e and e(1 - e) == 0 modulo base^N, neither
/// congruent to 0 or 1 modulo the base. e is 0 modulo the largest prime-power
/// block P^N of base^N and 1 modulo the cofactor, assembled by CRT.
inline std::pair<PadicNumber, PadicNumber> idempotent_witness(Digit base, std::int64_t precision) {
  if (precision < 1) throw Error(ErrorKind::InvalidArgument, "precision must be at least 1");
  PadicNumber::exact_zero(base);
  auto factors = factor(BigInt(base));
  if (factors.size() < 2) {
    throw Error(ErrorKind::NoNontrivialIdempotent,
                std::to_string(base) + " is a prime power; its only idempotents are 0 and 1");
  }
  BigInt block = 1;
  for (const auto& [prime, e] : factors) {
    BigInt pe = ipow(prime, e);
    if (pe > block) block = pe;
  }
  const auto n = static_cast<std::uint64_t>(precision);
  const BigInt block_n = ipow(block, n);
  const BigInt rest_n = ipow(BigInt(base) / block, n);
  const BigInt modulus = block_n * rest_n;
  const BigInt e = block_n * *mod_inverse(block_n, rest_n) % modulus;
  const BigInt e_comp = mod(1 - e, modulus);
  return {PadicNumber::from_residue(base, e, precision), PadicNumber::from_residue(base, e_comp, precision)};
}

/// |n x| at the place for n = 1..n_max.
inline std::vector<NormValue> archimedean_probe(const Rational& x, const Place& place, std::uint64_t n_max) {
  if (x == 0) throw Error(ErrorKind::ZeroInput, "probe needs a nonzero value");
  std::vector<NormValue> out;
  out.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) out.push_back(norm(x * n, place));
  return out;
}

}  // namespace padic
