#pragma once

#include <boost/multiprecision/miller_rabin.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <random>

#include "padic/arith.hpp"

namespace padic {

enum class Primality { Composite, Prime, ProbablePrime };

/// Miller-Rabin with the first twelve prime bases, which is exact below
/// 3.3e24 and so covers every 64-bit input. Beyond 2^64 the answer is
/// ProbablePrime after 25 random rounds.
inline Primality check_prime(const BigInt& n) {
  if (n < 2) return Primality::Composite;
  static constexpr std::array<unsigned, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned b : kBases) {
    if (n == b) return Primality::Prime;
    if (n % b == 0) return Primality::Composite;
  }
  static const BigInt kDeterministicLimit = BigInt(1) << 64;
  if (n >= kDeterministicLimit) {
    std::mt19937_64 gen(0x5eed);
    return boost::multiprecision::miller_rabin_test(n, 25, gen) ? Primality::ProbablePrime
                                                                : Primality::Composite;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned b : kBases) {
    BigInt x = boost::multiprecision::powm(BigInt(b), d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return Primality::Composite;
  }
  return Primality::Prime;
}

inline bool is_prime(const BigInt& n) { return check_prime(n) != Primality::Composite; }

inline constexpr std::uint64_t kDefaultTrialBound = 1'000'000;

/// Factorization of |n| by trial division up to `bound`. A leftover cofactor
/// below bound^2 is necessarily prime; anything larger is reported as
/// FactorizationLimitExceeded rather than guessed at.
inline std::map<BigInt, std::uint64_t> factor(BigInt n, std::uint64_t bound = kDefaultTrialBound) {
  if (n < 0) n = -n;
  if (n == 0) throw Error(ErrorKind::ZeroInput, "cannot factor zero");
  std::map<BigInt, std::uint64_t> out;
  auto strip = [&](std::uint64_t p) {
    std::uint64_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e != 0) out[BigInt(p)] = e;
  };
  strip(2);
  for (std::uint64_t p = 3; p <= bound; p += 2) {
    if (BigInt(p) * p > n) break;
    strip(p);
  }
  if (n > 1) {
    if (n > BigInt(bound) * bound) {
      throw Error(ErrorKind::FactorizationLimitExceeded,
                  "cofactor " + n.str() + " survives trial division up to " + std::to_string(bound));
    }
    out[n] += 1;
  }
  return out;
}

}  // namespace padic
