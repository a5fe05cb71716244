#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "gpd/double_double.hpp"

namespace gpd {

/// Neumaier-compensated running sum. After any finite sequence of finite
/// terms, |result() - exact| <= 2 eps sum|x_i| (to first order).
class CompensatedAccumulator {
 public:
  CompensatedAccumulator& add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  CompensatedAccumulator& operator+=(double x) { return add(x); }

  double result() const { return sum_ + compensation_; }
  double sum() const { return sum_; }
  double compensation() const { return compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> terms);

/// Steps between a and b in the ordering of doubles: 0 when equal, 1 when adjacent.
std::uint64_t ulp_distance(double a, double b);

/// log n!, relative error below 1e-14; exactly 0 for n in {0, 1}.
double log_factorial(std::uint64_t n);

/// log n! in double-double. Table of cumulative log k for n <= 1024
/// (built once, thread-safe), Stirling series with five correction terms above.
DoubleDouble log_factorial_dd(std::uint64_t n);

inline constexpr std::uint64_t kLogFactorialTableSize = 1024;

/// Stirling's approximation n^n e^{-n} sqrt(2 pi n). The linear value is
/// only populated while it is representable (n <= 170).
struct StirlingApprox {
  double log_value = 0.0;
  std::optional<double> value;
};

StirlingApprox stirling_approx(std::uint64_t n);

/// Sign change of f certified at construction.
class RootBracket {
 public:
  static RootBracket make(const std::function<double(double)>& f, double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double f_lo() const { return f_lo_; }
  double f_hi() const { return f_hi_; }

 private:
  RootBracket(double lo, double hi, double f_lo, double f_hi) : lo_(lo), hi_(hi), f_lo_(f_lo), f_hi_(f_hi) {}

  double lo_;
  double hi_;
  double f_lo_;
  double f_hi_;
};

inline constexpr int kRootIterationCap = 200;

/// Illinois-modified false position with a bisection fallback whenever a
/// step fails to halve the bracket. Stops when |f(x)| <= tolerance, or when
/// the bracket has collapsed to adjacent doubles, in which case the endpoint
/// with the smaller |f| is returned. `f` must be pure and continuous on the bracket.
double find_root(const std::function<double(double)>& f, const RootBracket& bracket, double tolerance);

}  // namespace gpd
