#pragma once

// Exact integer and rational arithmetic shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "padic/error.hpp"

namespace padic {

using BigInt = boost::multiprecision::cpp_int;
/// Always in lowest terms with a positive denominator; zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

/// n/d for any nonzero d (cpp_rational itself rejects negative denominators).
inline Rational make_rational(const BigInt& n, const BigInt& d) {
  if (d == 0) throw Error(ErrorKind::ZeroOperand, "rational with zero denominator");
  return d < 0 ? Rational(BigInt(-n), BigInt(-d)) : Rational(n, d);
}

inline BigInt ipow(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp != 0) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp != 0) b *= b;
  }
  return result;
}

/// base^exp for a possibly negative exponent.
inline Rational rpow(const BigInt& base, std::int64_t exp) {
  if (exp >= 0) return Rational(ipow(base, static_cast<std::uint64_t>(exp)));
  return Rational(BigInt(1), ipow(base, static_cast<std::uint64_t>(-exp)));
}

/// Least nonnegative residue of a modulo m (m > 0).
inline BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

/// Inverse of a modulo m by the extended Euclidean algorithm, or nullopt when
/// gcd(a, m) != 1.
inline std::optional<BigInt> mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt r0 = mod(a, m), r1 = m;
  BigInt s0 = 1, s1 = 0;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) {
    if (m == 1) return BigInt(0);
    return std::nullopt;
  }
  return mod(s0, m);
}

/// a/b reduced modulo m, for b invertible mod m.
inline BigInt rational_residue(const Rational& q, const BigInt& m) {
  auto inv = mod_inverse(den(q), m);
  if (!inv) throw Error(ErrorKind::NotInvertible, "denominator shares a factor with the modulus");
  return mod(num(q) * *inv, m);
}

inline std::string to_string(const BigInt& n) { return n.str(); }

inline std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

inline BigInt parse_integer(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw Error(ErrorKind::SyntaxError, "expected an integer, got '" + std::string(text) + "'");
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') throw Error(ErrorKind::SyntaxError, "expected an integer, got '" + std::string(text) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

/// Parses `a` or `a/b` with optional surrounding whitespace.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  BigInt n = parse_integer(trim(text.substr(0, slash)));
  BigInt d = parse_integer(trim(text.substr(slash + 1)));
  return make_rational(n, d);
}

}  // namespace padic
