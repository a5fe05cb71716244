#include "gpd/double_double.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"

namespace gpd {
namespace {

using oracle::Real;

Real to_real(const DoubleDouble& x) { return Real(x.hi) + Real(x.lo); }

double rel_err(const DoubleDouble& got, const Real& want) {
  return static_cast<double>(abs((to_real(got) - want) / want));
}

TEST(DoubleDouble, TwoSumIsExact) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> mag(-30, 30);
  for (int i = 0; i < 1000; ++i) {
    const double a = std::ldexp(1.0 + (rng() >> 11) * 0x1p-53, static_cast<int>(mag(rng)));
    const double b = -std::ldexp(1.0 + (rng() >> 11) * 0x1p-53, static_cast<int>(mag(rng)));
    const DoubleDouble s = dd_detail::two_sum(a, b);
    EXPECT_EQ(Real(s.hi) + Real(s.lo), Real(a) + Real(b));
  }
}

TEST(DoubleDouble, FromUint64IsExact) {
  for (std::uint64_t n : {0ULL, 1ULL, (1ULL << 53) + 1, 0xFFFFFFFFFFFFFFFFULL, 12345678901234567ULL}) {
    const DoubleDouble x = dd_from_uint64(n);
    EXPECT_EQ(to_real(x), Real(n)) << n;
  }
}

TEST(DoubleDouble, ArithmeticMatchesExtendedPrecision) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const DoubleDouble a = DoubleDouble{u(rng)} / 3.0;
    const DoubleDouble b = DoubleDouble{u(rng)} / 7.0;
    const Real ra = to_real(a);
    const Real rb = to_real(b);
    EXPECT_LT(rel_err(a * b, ra * rb), 1e-30);
    EXPECT_LT(rel_err(a / b, ra / rb), 1e-30);
    if (abs(ra + rb) > abs(ra) * 1e-3) EXPECT_LT(rel_err(a + b, ra + rb), 1e-29);
  }
}

TEST(DoubleDouble, ExpAndLogMatchExtendedPrecision) {
  std::mt19937_64 rng(3);
  // Below about e^-600 the low word of the result falls under the normal range.
  std::uniform_real_distribution<double> u(-600.0, 700.0);
  for (int i = 0; i < 300; ++i) {
    const double x = u(rng);
    const DoubleDouble ex = exp(DoubleDouble{x});
    EXPECT_LT(rel_err(ex, exp(Real(x))), 1e-29) << x;
    const double y = std::exp(u(rng) / 2.0);
    const DoubleDouble ly = log(DoubleDouble{y});
    EXPECT_LT(static_cast<double>(abs(to_real(ly) - log(Real(y)))), 1e-29 * std::max(1.0, std::abs(ly.hi))) << y;
  }
}

TEST(DoubleDouble, ExpEdgeCases) {
  EXPECT_EQ(exp(DoubleDouble{0.0}).hi, 1.0);
  EXPECT_EQ(exp(DoubleDouble{-800.0}).hi, 0.0);
  EXPECT_TRUE(std::isinf(exp(DoubleDouble{800.0}).hi));
  EXPECT_EQ(log(DoubleDouble{1.0}).hi, 0.0);
  EXPECT_TRUE(std::isnan(log(DoubleDouble{-1.0}).hi));
}

TEST(DoubleDouble, IntegerPower) {
  const DoubleDouble base = affine(1.0, 0.1, 7.0);  // 1.7 to double-double accuracy
  const Real want = pow(Real(1.0) + Real(0.1) * 7, 30);
  EXPECT_LT(rel_err(pow(base, 30), want), 1e-29);
  EXPECT_EQ(pow(DoubleDouble{0.0}, 0).hi, 1.0);
}

}  // namespace
}  // namespace gpd
