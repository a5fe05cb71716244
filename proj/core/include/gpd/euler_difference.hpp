#pragma once

// k-th forward difference of the power (A + B n)^p:
//
//   D(A, B, p, k) = sum_{n=0}^{k} (-1)^{k-n} C(k, n) (A + B n)^p
//
// which is 0 for p < k and B^k k! for p = k.

#include <span>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "gpd/double_double.hpp"
#include "gpd/report.hpp"

namespace gpd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr unsigned kMaxDifferenceOrder = 64;
inline constexpr unsigned kMaxGouldSweepOrder = 20;

/// Exact rational in lowest terms with a positive denominator.
class ExactValue {
 public:
  ExactValue() = default;
  explicit ExactValue(Rational value) : value_(std::move(value)) {}

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  const Rational& value() const { return value_; }
  bool is_integer() const { return denominator() == 1; }
  double to_double() const { return static_cast<double>(value_); }
  std::string to_string() const { return value_.str(); }

  friend bool operator==(const ExactValue& x, const ExactValue& y) { return x.value_ == y.value_; }
  friend bool operator==(const ExactValue& x, const Rational& y) { return x.value_ == y; }

 private:
  Rational value_{0};
};

/// Inputs of one difference; p and k are capped at kMaxDifferenceOrder.
class DifferenceQuery {
 public:
  static DifferenceQuery make(Rational a, Rational b, unsigned p, unsigned k);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  unsigned p() const { return p_; }
  unsigned k() const { return k_; }

 private:
  DifferenceQuery(Rational a, Rational b, unsigned p, unsigned k) : a_(std::move(a)), b_(std::move(b)), p_(p), k_(k) {}

  Rational a_;
  Rational b_;
  unsigned p_;
  unsigned k_;
};

/// Parses "3", "-1/2" and similar into a Rational; DomainError otherwise.
Rational parse_rational(const std::string& text);

/// Exact binomial coefficient by the multiplicative recurrence.
BigInt binomial_exact(unsigned k, unsigned n);

ExactValue difference_exact(const DifferenceQuery& query);

/// Double-double evaluation: each term is formed to ~2^-104 relative error and
/// summed in double-double, so the absolute error is about
/// p 2^-104 sum_n C(k,n)|a + b n|^p. Cancellation grows without bound in k.
DoubleDouble difference_extended(double a, double b, unsigned p, unsigned k);

/// difference_extended rounded to double.
double difference_float(double a, double b, unsigned p, unsigned k);

/// sum_n C(k,n) |a + b n|^p, the scale the alternating sum cancels down from.
double difference_magnitude(double a, double b, unsigned p, unsigned k);

/// Sweeps every (A, B) pair and 0 <= p <= k <= max_order in exact arithmetic.
/// A failure is reported in the returned report, not thrown. The p > k case
/// is not covered.
VerificationReport verify_gould(std::span<const Rational> a_values, std::span<const Rational> b_values,
                                unsigned max_order);

}  // namespace gpd
