#include "padic/valuation.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace padic {
namespace {

Rational R(long n, long d = 1) { return make_rational(n, d); }

TEST(Valuation, Integers) {
  EXPECT_TRUE(valuation_int(0, 5).is_infinite());
  EXPECT_EQ(valuation_int(343, 7), Valuation::finite(3));
  EXPECT_EQ(valuation_int(12, 2), Valuation::finite(2));
  EXPECT_EQ(valuation_int(-12, 3), Valuation::finite(1));
}

TEST(Valuation, Rationals) {
  EXPECT_EQ(valuation_rat(R(5, 9), 3), Valuation::finite(-2));
  EXPECT_EQ(valuation_rat(R(343, 2), 7), Valuation::finite(3));
  for (auto p : oracle::small_primes()) EXPECT_EQ(valuation_rat(R(1), BigInt(p)), Valuation::finite(0));
  EXPECT_TRUE(valuation_rat(R(0), 11).is_infinite());
}

TEST(Valuation, CompositeBaseRejected) {
  try {
    valuation_int(100, 10);
    FAIL() << "expected NonPrimeBase";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPrimeBase);
  }
  EXPECT_THROW(valuation_rat(R(1, 2), 1), Error);
}

TEST(Valuation, InfiniteAbsorbsAndOrdersLast) {
  EXPECT_TRUE((Valuation::infinite() + Valuation::finite(3)).is_infinite());
  EXPECT_LT(Valuation::finite(1000), Valuation::infinite());
  EXPECT_EQ(Valuation::finite(-2) + Valuation::finite(5), Valuation::finite(3));
}

TEST(Place, PrimalityChecked) {
  EXPECT_THROW(Place::finite(1), Error);
  EXPECT_THROW(Place::finite(91), Error);
  EXPECT_FALSE(Place::finite(BigInt("18446744073709551557")).probable_prime());  // largest 64-bit prime
  Place big = Place::finite(BigInt("170141183460469231731687303715884105727"));  // 2^127 - 1
  EXPECT_TRUE(big.probable_prime());
  EXPECT_THROW(Place::finite(BigInt("170141183460469231731687303715884105729")), Error);
  EXPECT_TRUE(Place::real() < Place::finite(2));
}

TEST(Norm, Examples) {
  for (auto p : oracle::small_primes()) EXPECT_TRUE(norm(R(0), Place::finite(p)).is_zero());
  NormValue n12 = norm(R(12), Place::finite(2));
  EXPECT_EQ(n12, NormValue::power(2, -2));
  EXPECT_EQ(n12.to_rational(), R(1, 4));
  EXPECT_EQ(norm(R(7), Place::finite(5)), NormValue::power(5, 0));
  EXPECT_EQ(norm(R(7), Place::finite(5)).to_rational(), R(1));
  EXPECT_EQ(norm(R(-5, 8), Place::real()).to_rational(), R(5, 8));
}

TEST(Distance, Examples) {
  EXPECT_EQ(distance(R(9), R(-1), Place::finite(2)), NormValue::power(2, -1));
  EXPECT_EQ(distance(R(99), R(-1), Place::finite(5)), NormValue::power(5, -2));
  EXPECT_TRUE(distance(R(3, 7), R(3, 7), Place::real()).is_zero());
  EXPECT_TRUE(distance(R(3, 7), R(3, 7), Place::finite(3)).is_zero());
}

TEST(Ball, Membership) {
  const Place five = Place::finite(5);
  const NormValue r = NormValue::power(5, -1);
  EXPECT_TRUE(ball_contains(R(0), r, R(25), five, false));
  EXPECT_FALSE(ball_contains(R(0), r, R(1), five, false));
  EXPECT_TRUE(ball_contains(R(3, 4), r, R(3, 4), five, false));
  // |5|_5 = 5^-1 sits on the boundary.
  EXPECT_FALSE(ball_contains(R(0), r, R(5), five, false));
  EXPECT_TRUE(ball_contains(R(0), r, R(5), five, true));
  EXPECT_FALSE(ball_contains(R(1), NormValue::zero(), R(1), five, false));
  EXPECT_TRUE(ball_contains(R(1), NormValue::zero(), R(1), five, true));
  EXPECT_TRUE(ball_contains(R(0), NormValue::real_abs(R(1, 2)), R(1, 3), Place::real(), false));
}

TEST(NormValue, ExactOrderingAndProduct) {
  EXPECT_LT(NormValue::zero(), NormValue::power(2, -100));
  EXPECT_LT(NormValue::power(3, -2), NormValue::power(3, -1));
  EXPECT_EQ(NormValue::power(2, -2) * NormValue::power(2, 5), NormValue::power(2, 3));
  EXPECT_TRUE((NormValue::zero() * NormValue::power(7, 1)).is_zero());
  EXPECT_THROW(NormValue::power(2, 1) * NormValue::power(3, 1), Error);
  // Different bases still compare by exact value.
  EXPECT_LT(NormValue::power(2, -2), NormValue::power(3, -1));
}

// Ultrametric equality when the norms differ: checked against plain integer
// valuations before the randomized suite relies on it.
TEST(Norm, SharpenedUltrametricMatchesBruteForce) {
  for (auto p : {2, 3, 5, 7}) {
    for (std::int64_t a = -60; a <= 60; ++a) {
      for (std::int64_t b = -60; b <= 60; ++b) {
        if (a == 0 || b == 0 || a + b == 0) continue;
        int va = oracle::small_valuation(a, p), vb = oracle::small_valuation(b, p);
        if (va == vb) continue;
        ASSERT_EQ(oracle::small_valuation(a + b, p), std::min(va, vb));
        ASSERT_EQ(norm(R(a + b), Place::finite(p)), std::max(norm(R(a), Place::finite(p)), norm(R(b), Place::finite(p))));
      }
    }
  }
}

class MetricProperties : public ::testing::TestWithParam<int> {};

TEST_P(MetricProperties, AxiomsAndUltrametric) {
  const int prime = GetParam();
  const Place place = prime == 0 ? Place::real() : Place::finite(prime);
  oracle::RationalGen gen(1234 + prime, 10'000);
  for (int i = 0; i < 500; ++i) {
    Rational a = gen.next(), b = gen.next(), c = gen.next();
    NormValue dab = distance(a, b, place);
    if (a != b) {
      EXPECT_GT(dab, NormValue::zero());
    }
    EXPECT_TRUE(distance(a, a, place).is_zero());
    EXPECT_EQ(dab, distance(b, a, place));
    EXPECT_LE(dab.to_rational(), distance(a, c, place).to_rational() + distance(c, b, place).to_rational());
    if (place.is_finite()) {
      NormValue na = norm(a, place), nb = norm(b, place);
      EXPECT_LE(norm(a + b, place), std::max(na, nb));
      EXPECT_LE(norm(a + b, place).to_rational(), na.to_rational() + nb.to_rational());
      EXPECT_EQ(norm(a * b, place), na * nb);
      if (na != nb) {
        EXPECT_EQ(norm(a + b, place), std::max(na, nb));
      }
      EXPECT_EQ(valuation_rat(a * b, place.prime()), valuation_rat(a, place.prime()) + valuation_rat(b, place.prime()));
      if (a != 0) {
        for (int n = 1; n <= 20; ++n) EXPECT_LE(norm(a * n, place), na);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Places, MetricProperties, ::testing::Values(0, 2, 3, 5, 7));

}  // namespace
}  // namespace padic
