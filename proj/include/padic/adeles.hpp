#pragma once

// Diagonal adeles of a rational: its norm at the real place and at every
// prime, with only finitely many primes giving a norm other than 1.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "padic/arith.hpp"
#include "padic/number.hpp"
#include "padic/primes.hpp"
#include "padic/valuation.hpp"

namespace padic {

struct AdeleEntry {
  NormValue norm;
  std::optional<PadicNumber> expansion;
};

struct AdeleVector {
  Rational value;
  NormValue real_norm = NormValue::zero();
  /// Keyed by prime. Every prime not listed has norm 1.
  std::map<BigInt, AdeleEntry> finite_entries;
  std::set<BigInt> support;
  std::int64_t precision = 0;
  bool with_expansions = false;

  NormValue norm_at(const Place& place) const {
    if (place.is_real()) return real_norm;
    auto it = finite_entries.find(place.prime());
    if (it != finite_entries.end()) return it->second.norm;
    return value == 0 ? NormValue::zero() : NormValue::power(place.prime(), 0);
  }

  /// Real place first, then the support in ascending order.
  std::vector<std::pair<Place, NormValue>> rows() const {
    std::vector<std::pair<Place, NormValue>> out{{Place::real(), real_norm}};
    for (const auto& [p, entry] : finite_entries) out.emplace_back(Place::finite(p), entry.norm);
    return out;
  }
};

/// Support is found by trial division up to `bound`; a cofactor that cannot
/// be certified raises FactorizationLimitExceeded.
inline AdeleVector adele_of(const Rational& q, std::int64_t precision, bool expansions,
                            std::uint64_t bound = kDefaultTrialBound) {
  AdeleVector a;
  a.value = q;
  a.precision = precision;
  a.with_expansions = expansions;
  a.real_norm = norm(q, Place::real());
  if (q == 0) return a;

  std::set<BigInt> primes;
  for (const auto& [p, e] : factor(num(q), bound)) primes.insert(p);
  for (const auto& [p, e] : factor(den(q), bound)) primes.insert(p);
  for (const BigInt& p : primes) {
    AdeleEntry entry{norm(q, Place::finite(p)), std::nullopt};
    if (expansions) {
      if (p >= kMaxBase) throw Error(ErrorKind::InvalidArgument, "prime " + p.str() + " too large for digit expansion");
      entry.expansion = from_rational(q, p.convert_to<Digit>(), precision);
    }
    a.support.insert(p);
    a.finite_entries.emplace(p, std::move(entry));
  }
  return a;
}

/// The product of |q|_v over all places; equals 1 for every nonzero q.
inline Rational product_formula(const Rational& q, std::uint64_t bound = kDefaultTrialBound) {
  if (q == 0) throw Error(ErrorKind::ZeroInput, "the product formula needs a nonzero rational");
  AdeleVector a = adele_of(q, 1, false, bound);
  Rational product = a.real_norm.to_rational();
  for (const auto& [p, entry] : a.finite_entries) product *= entry.norm.to_rational();
  return product;
}

inline AdeleVector adele_add(const AdeleVector& x, const AdeleVector& y, std::int64_t precision) {
  return adele_of(x.value + y.value, precision, x.with_expansions || y.with_expansions);
}

inline AdeleVector adele_mul(const AdeleVector& x, const AdeleVector& y, std::int64_t precision) {
  return adele_of(x.value * y.value, precision, x.with_expansions || y.with_expansions);
}

}  // namespace padic
