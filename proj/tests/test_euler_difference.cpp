#include "gpd/euler_difference.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "gpd/errors.hpp"

namespace gpd {
namespace {

Rational q(const char* s) { return parse_rational(s); }

ExactValue diff(const Rational& a, const Rational& b, unsigned p, unsigned k) {
  return difference_exact(DifferenceQuery::make(a, b, p, k));
}

// Brute-force k-th forward difference by repeated differencing of the
// sequence f(n) = (a + b n)^p; independent of the binomial-sum route.
Rational repeated_difference(const Rational& a, const Rational& b, unsigned p, unsigned k) {
  std::vector<Rational> seq;
  for (unsigned n = 0; n <= k; ++n) {
    Rational v{1};
    for (unsigned i = 0; i < p; ++i) v *= a + b * n;
    seq.push_back(v);
  }
  for (unsigned level = 0; level < k; ++level) {
    for (std::size_t i = 0; i + 1 < seq.size() - level; ++i) seq[i] = seq[i + 1] - seq[i];
  }
  return seq[0];
}

TEST(DifferenceExact, WorkedExamples) {
  EXPECT_EQ(diff(3, 2, 2, 3), Rational(0));
  EXPECT_EQ(diff(0, 1, 3, 3), Rational(6));
  // 1*1 - 2*9 + 1*25
  EXPECT_EQ(diff(1, 2, 2, 2), Rational(8));
}

TEST(DifferenceExact, ReducedRationalResults) {
  const ExactValue v = diff(q("1/2"), q("1/3"), 3, 3);
  // B^k k! = (1/27) * 6 = 2/9
  EXPECT_EQ(v.numerator(), 2);
  EXPECT_EQ(v.denominator(), 9);
  EXPECT_FALSE(v.is_integer());
  EXPECT_EQ(v.to_string(), "2/9");
  const ExactValue w = diff(q("-3"), q("5"), 4, 2);
  EXPECT_TRUE(w.is_integer());
  EXPECT_GE(w.denominator(), 1);
}

TEST(DifferenceExact, AgreesWithRepeatedDifferencing) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> num(-7, 7);
  std::uniform_int_distribution<int> den(1, 5);
  std::uniform_int_distribution<unsigned> order(0, 14);
  for (int i = 0; i < 300; ++i) {
    const Rational a = Rational(num(rng)) / den(rng);
    const Rational b = Rational(num(rng)) / den(rng);
    const unsigned p = order(rng);
    const unsigned k = order(rng);
    EXPECT_EQ(diff(a, b, p, k), repeated_difference(a, b, p, k)) << a << " " << b << " " << p << " " << k;
  }
}

TEST(DifferenceExact, CapsAreEnforced) {
  EXPECT_NO_THROW(DifferenceQuery::make(1, 1, 64, 64));
  EXPECT_THROW(DifferenceQuery::make(1, 1, 65, 3), CapExceededError);
  EXPECT_THROW(DifferenceQuery::make(1, 1, 3, 65), CapExceededError);
  BigInt factorial64 = 1;
  for (int i = 2; i <= 64; ++i) factorial64 *= i;
  EXPECT_EQ(diff(1, 1, 64, 64), Rational(factorial64));
}

TEST(DifferenceExact, LinearityInTheFunction) {
  for (const auto& [a1, b1, a2, b2] : {std::tuple{1, 2, -3, 1}, std::tuple{0, 5, 2, -2}, std::tuple{7, 0, -1, 3}}) {
    for (unsigned p = 0; p <= 6; ++p) {
      for (unsigned k = 0; k <= 6; ++k) {
        // sum_n (-1)^{k-n} C(k,n) [f(n) + g(n)] splits into the two differences.
        Rational combined{0};
        for (unsigned n = 0; n <= k; ++n) {
          Rational f{1};
          Rational g{1};
          for (unsigned i = 0; i < p; ++i) {
            f *= Rational(a1) + Rational(b1) * n;
            g *= Rational(a2) + Rational(b2) * n;
          }
          const Rational term = Rational(binomial_exact(k, n)) * (f + g);
          combined += ((k - n) % 2 == 0) ? term : Rational(-term);
        }
        EXPECT_EQ(combined, diff(a1, b1, p, k).value() + diff(a2, b2, p, k).value());
      }
    }
  }
}

TEST(DifferenceExact, IndependentOfShiftWhenPAtMostK) {
  for (unsigned k = 0; k <= 9; ++k) {
    for (unsigned p = 0; p <= k; ++p) {
      const ExactValue base = diff(0, q("3/2"), p, k);
      for (const char* a : {"-5", "1/7", "11"}) EXPECT_EQ(diff(q(a), q("3/2"), p, k), base) << a << p << k;
    }
  }
}

TEST(Binomial, ExactValues) {
  EXPECT_EQ(binomial_exact(5, 2), 10);
  EXPECT_EQ(binomial_exact(64, 32), BigInt("1832624140942590534"));
  EXPECT_EQ(binomial_exact(3, 4), 0);
}

TEST(ParseRational, FormsAndErrors) {
  EXPECT_EQ(q("-1/2"), Rational(-1) / 2);
  EXPECT_EQ(q("4/6"), Rational(2) / 3);
  EXPECT_EQ(q("7"), Rational(7));
  EXPECT_THROW(q("abc"), DomainError);
  EXPECT_THROW(q(""), DomainError);
  EXPECT_THROW(q("1/0"), DomainError);
}

TEST(DifferenceFloat, WorkedExamples) {
  EXPECT_NEAR(difference_float(3.0, 2.0, 2, 3), 0.0, 1e-9);
  EXPECT_NEAR(difference_float(0.5, 0.25, 4, 4), 0.09375, 1e-10);
  EXPECT_EQ(difference_float(123.0, 0.0, 0, 0), 1.0);
}

TEST(DifferenceFloat, AgreesWithExactOnSweep) {
  constexpr double kEps = 2.220446049250313e-16;
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      for (unsigned k = 0; k <= 12; ++k) {
        for (unsigned p = 0; p <= 12; ++p) {
          const double exact = diff(a, b, p, k).to_double();
          const double got = difference_float(a, b, p, k);
          const double scale = difference_magnitude(a, b, p, k);
          EXPECT_LE(std::abs(got - exact), 1e-9 * std::max(1.0, scale * kEps)) << a << b << p << k;
        }
      }
    }
  }
}

TEST(DifferenceFloat, CancellationGrowsWithOrder) {
  // Relative to the exact value the double-double error is bounded by the
  // cancelled magnitude, which explodes with k.
  const double small = difference_magnitude(1.0, 0.2, 5, 5);
  const double large = difference_magnitude(1.0, 0.2, 40, 40);
  EXPECT_GT(large / small, 1e20);
  EXPECT_THROW(difference_float(1.0, 1.0, 65, 1), CapExceededError);
}

TEST(VerifyGould, IntegerSweep) {
  std::vector<Rational> values;
  for (int i = -2; i <= 2; ++i) values.emplace_back(i);
  const VerificationReport r = verify_gould(values, values, 10);
  EXPECT_TRUE(r.passed) << r.detail;
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_EQ(r.identity, "euler-difference");
}

TEST(VerifyGould, FractionalSweep) {
  const std::vector<Rational> a{q("1/2"), q("1/3")};
  const std::vector<Rational> b{q("1/5")};
  EXPECT_TRUE(verify_gould(a, b, 8).passed);
}

TEST(VerifyGould, ZeroSlope) {
  const std::vector<Rational> a{q("4")};
  const std::vector<Rational> b{q("0")};
  EXPECT_TRUE(verify_gould(a, b, 3).passed);
  EXPECT_EQ(diff(4, 0, 3, 3), Rational(0));
}

TEST(VerifyGould, MaxOrderCap) {
  const std::vector<Rational> v{Rational(1)};
  EXPECT_THROW(verify_gould(v, v, 21), CapExceededError);
}

}  // namespace
}  // namespace gpd
