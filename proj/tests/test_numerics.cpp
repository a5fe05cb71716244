#include "gpd/numerics.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "gpd/errors.hpp"
#include "oracle.hpp"

namespace gpd {
namespace {

using oracle::Real;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double naive_sum(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

Real exact_sum(const std::vector<double>& xs) {
  Real s = 0;
  for (double x : xs) s += x;
  return s;
}

TEST(CompensatedSum, CanonicalCancellation) {
  const std::vector<double> xs{1e16, 1.0, -1e16};
  EXPECT_EQ(compensated_sum(xs), 1.0);
}

TEST(CompensatedSum, Empty) { EXPECT_EQ(compensated_sum({}), 0.0); }

TEST(CompensatedSum, ManyTenths) {
  const std::vector<double> xs(1'000'000, 0.1);
  const double got = compensated_sum(xs);
  EXPECT_NEAR(got, 1e5, 1e-7);
  EXPECT_GT(std::abs(naive_sum(xs) - 1e5), std::abs(got - 1e5));
}

TEST(CompensatedSum, ErrorBoundOnRandomSequences) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-40, 40);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(2000);
    double abs_total = 0.0;
    for (double& x : xs) {
      x = std::ldexp(mant(rng), expo(rng));
      abs_total += std::abs(x);
    }
    const double err = static_cast<double>(abs(Real(compensated_sum(xs)) - exact_sum(xs)));
    EXPECT_LE(err, 2 * kEps * abs_total) << "trial " << trial;
  }
}

TEST(CompensatedSum, BeatsNaiveOnAdversarialSequences) {
  // 1 followed by a million values below half an ulp of 1.
  std::vector<double> tiny_tail{1.0};
  tiny_tail.insert(tiny_tail.end(), 1'000'000, 1e-17);
  // Alternating huge/small values that naive summation swallows.
  std::vector<double> alternating;
  for (int i = 0; i < 10'000; ++i) {
    alternating.push_back(1e10);
    alternating.push_back(0.123456789);
    alternating.push_back(-1e10);
    alternating.push_back(1e-7);
  }
  for (const auto* xs : {&tiny_tail, &alternating}) {
    const Real exact = exact_sum(*xs);
    const double comp_err = static_cast<double>(abs(Real(compensated_sum(*xs)) - exact));
    const double naive_err = static_cast<double>(abs(Real(naive_sum(*xs)) - exact));
    EXPECT_GE(naive_err, 1e3 * comp_err);
    EXPECT_GT(naive_err, 0.0);
  }
}

TEST(CompensatedAccumulator, ExposesState) {
  CompensatedAccumulator acc;
  acc.add(1e16).add(1.0);
  EXPECT_EQ(acc.sum(), 1e16);
  EXPECT_EQ(acc.compensation(), 1.0);
  acc += -1e16;
  EXPECT_EQ(acc.result(), 1.0);
}

TEST(LogFactorial, SmallValuesAreExact) {
  EXPECT_EQ(log_factorial(0), 0.0);
  EXPECT_EQ(log_factorial(1), 0.0);
}

TEST(LogFactorial, Ten) {
  // log 3628800
  EXPECT_NEAR(log_factorial(10), 15.104412573075515295, 15.1044 * 1e-15);
}

TEST(LogFactorial, OneMillion) {
  // 60-digit reference: 12815518.3846581696242510758929658...
  const double want = 12815518.384658169624251;
  EXPECT_LE(std::abs(log_factorial(1'000'000) - want) / want, 1e-13);
}

TEST(LogFactorial, MatchesExactFactorialUpTo170) {
  for (std::uint64_t n = 2; n <= 170; ++n) {
    const Real exact = oracle::factorial(n);
    const double rel = static_cast<double>(abs((Real(std::exp(log_factorial(n))) - exact) / exact));
    EXPECT_LE(rel, 1e-13) << n;
  }
}

TEST(LogFactorial, RelativeAccuracyAcrossTableAndSeries) {
  Real log_fact = 0;
  for (std::uint64_t n = 2; n <= 3000; ++n) {
    log_fact += log(Real(n));
    const double rel = static_cast<double>(abs((Real(log_factorial(n)) - log_fact) / log_fact));
    ASSERT_LE(rel, 1e-14) << n;
    const DoubleDouble dd = log_factorial_dd(n);
    const double dd_rel = static_cast<double>(abs((Real(dd.hi) + Real(dd.lo) - log_fact) / log_fact));
    ASSERT_LE(dd_rel, 1e-28) << n;
  }
}

TEST(Stirling, One) {
  const auto s = stirling_approx(1);
  ASSERT_TRUE(s.value.has_value());
  EXPECT_NEAR(*s.value, 0.92213700889578911688, 1e-15);
}

TEST(Stirling, TenAgainstExactFactorial) {
  const auto s = stirling_approx(10);
  ASSERT_TRUE(s.value.has_value());
  EXPECT_NEAR(*s.value, 3598695.6187410359216, 1e-7);
  const double rel = 1.0 - *s.value / 3628800.0;
  EXPECT_NEAR(rel, 0.0083, 0.0001);
}

TEST(Stirling, RatioApproachesOneMonotonically) {
  double previous = 0.0;
  for (std::uint64_t n : {10ULL, 100ULL, 1000ULL}) {
    const double ratio = std::exp(stirling_approx(n).log_value - log_factorial(n));
    EXPECT_LT(ratio, 1.0);
    EXPECT_GT(ratio, previous);
    previous = ratio;
  }
  EXPECT_GT(previous, 1.0 - 1e-4);
}

TEST(Stirling, LinearValueOnlyWhileRepresentable) {
  EXPECT_TRUE(stirling_approx(170).value.has_value());
  EXPECT_FALSE(stirling_approx(171).value.has_value());
  EXPECT_THROW(stirling_approx(0), DomainError);
}

TEST(FindRoot, Linear) {
  auto f = [](double x) { return x - 0.5; };
  EXPECT_DOUBLE_EQ(find_root(f, RootBracket::make(f, 0.0, 1.0), 1e-14), 0.5);
}

TEST(FindRoot, Lambda0Equation) {
  const double e_inv = std::exp(-1.0);
  auto f = [e_inv](double x) { return x * std::exp(x) - e_inv; };
  const double root = find_root(f, RootBracket::make(f, 0.2, 0.3), 1e-15);
  EXPECT_NEAR(root, 0.2784645428, 5e-11);
}

TEST(FindRoot, SquareRootOfTwo) {
  auto f = [](double x) { return x * x - 2.0; };
  EXPECT_NEAR(find_root(f, RootBracket::make(f, 1.0, 2.0), 1e-13), 1.41421356237, 1e-11);
  EXPECT_NEAR(find_root(f, RootBracket::make(f, 1.0, 2.0), 1e-15), std::sqrt(2.0), 1e-12);
}

TEST(FindRoot, ResidualWithinTolerance) {
  const std::vector<std::pair<std::function<double(double)>, std::pair<double, double>>> cases{
      {[](double x) { return std::cos(x) - x; }, {0.0, 1.0}},
      {[](double x) { return x * x * x - x - 1.0; }, {1.0, 2.0}},
      {[](double x) { return std::exp(x) - 10.0; }, {0.0, 5.0}},
      {[](double x) { return std::tanh(20 * (x - 0.3)); }, {-1.0, 1.0}},
      {[](double x) { return std::pow(x - 0.7, 3); }, {0.0, 1.0}},
  };
  for (double tol : {1e-6, 1e-10, 1e-14}) {
    for (const auto& [f, range] : cases) {
      const double x = find_root(f, RootBracket::make(f, range.first, range.second), tol);
      EXPECT_GE(x, range.first);
      EXPECT_LE(x, range.second);
      EXPECT_LE(std::abs(f(x)), tol) << "tol " << tol << " x " << x;
    }
  }
}

TEST(FindRoot, BracketValidation) {
  auto f = [](double x) { return x * x + 1.0; };
  EXPECT_THROW(RootBracket::make(f, 0.0, 1.0), DomainError);
  auto g = [](double x) { return x; };
  EXPECT_THROW(RootBracket::make(g, 1.0, -1.0), DomainError);
  EXPECT_THROW(find_root(g, RootBracket::make(g, -1.0, 2.0), 0.0), DomainError);
}

TEST(FindRoot, NonFiniteInteriorIsReported) {
  auto f = [](double x) { return x == -1.0 ? -1.0 : (x == 2.0 ? 1.0 : std::numeric_limits<double>::quiet_NaN()); };
  EXPECT_THROW(find_root(f, RootBracket::make(f, -1.0, 2.0), 1e-12), NonConvergenceError);
}

TEST(UlpDistance, Basics) {
  EXPECT_EQ(ulp_distance(1.0, 1.0), 0U);
  EXPECT_EQ(ulp_distance(1.0, std::nextafter(1.0, 2.0)), 1U);
  EXPECT_EQ(ulp_distance(-0.0, 0.0), 0U);
  EXPECT_EQ(ulp_distance(-std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::denorm_min()), 2U);
  double x = 0.3;
  for (int i = 0; i < 4; ++i) x = std::nextafter(x, 0.0);
  EXPECT_EQ(ulp_distance(0.3, x), 4U);
}

}  // namespace
}  // namespace gpd
