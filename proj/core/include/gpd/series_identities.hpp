#pragma once

// The series
//
//   S(theta, lambda) = sum_{n>=0} (theta + lambda n)^n / n! * exp(-theta - lambda n)
//
// equals 1/(1 - lambda) for -lambda0 < lambda < 1, where lambda0 is the root
// of lambda e^lambda = e^-1. The module evaluates S directly and through the
// column-ordered double sum obtained by expanding the exponential, and checks
// sum_n P_n = S(theta, lambda) - lambda S(theta + lambda, lambda) = 1.

#include <cstdint>
#include <string_view>

#include "gpd/gpd_dist.hpp"
#include "gpd/report.hpp"
#include "gpd/series_result.hpp"

namespace gpd {

enum class ConvergenceClass { AbsolutelyConvergent, Convergent, Divergent, Boundary };

std::string_view to_string(ConvergenceClass c);

/// AbsolutelyConvergent carries Convergent semantics.
constexpr bool is_convergent(ConvergenceClass c) {
  return c == ConvergenceClass::AbsolutelyConvergent || c == ConvergenceClass::Convergent;
}

struct Lambda0 {
  double value = 0.0;
  double residual = 0.0;  // value * exp(value) - exp(-1)
};

inline constexpr double kSeriesEndpointMargin = 1e-6;
inline constexpr std::uint64_t kSeriesMaxTerms = 10'000'000;
inline constexpr double kCancellationCap = 1e12;
inline constexpr unsigned kMaxRearrangementOrder = 64;
inline constexpr int kBoundaryUlps = 4;

/// Direct log-space summation with a Neumaier accumulator. lambda must lie in
/// (-lambda0 + margin, 1 - margin).
SeriesResult s_series(double theta, double lambda, double tolerance, std::uint64_t max_terms = kSeriesMaxTerms);

/// 1/(1 - lambda); independent of theta.
double s_closed_form(double lambda);

/// sum_{k<=k_max} (1/k!) sum_{n<=k} (-1)^{k-n} C(k,n) (theta + lambda n)^k,
/// inner sums in double-double. Requires |lambda| < lambda0. Throws
/// CancellationError when some column's scaled magnitude
/// sum_n C(k,n)|theta + lambda n|^k / k! exceeds kCancellationCap / (1 - lambda).
/// tail_bound covers the omitted columns plus a rounding estimate.
SeriesResult s_by_rearrangement(double theta, double lambda, unsigned k_max);

/// Root of lambda e^lambda = e^-1 on [0.2, 0.3]. tolerance >= 1e-15.
Lambda0 lambda0(double tolerance = 1e-15);

/// lambda0(1e-15).value, computed once.
double lambda0_value();

/// |lambda| e^{1 + |lambda|}, the root-test limit for the absolute series.
double root_test_value(double lambda);

/// Compares the n-th root of the n-th absolute term |theta + lambda n|^n e^{|theta + lambda n|} / n!
/// with its limit |lambda| e^{1+|lambda|}. With log n! = n log n - n + log(2 pi n)/2 + delta,
/// remainder = gap - stirling_gap = -delta/n, and 1/(12n+1) < delta < 1/(12n).
struct RootTestProbe {
  double log_nth_root = 0.0;
  double log_limit = 0.0;
  double stirling_gap = 0.0;
  double remainder = 0.0;
  double remainder_lo = 0.0;  // -1/(12 n^2)
  double remainder_hi = 0.0;  // -1/(n (12 n + 1))
};

RootTestProbe root_test_probe(double theta, double lambda, std::uint64_t n);

/// Boundary within kBoundaryUlps of -lambda0, lambda0 or 1; otherwise the
/// strongest applicable class.
ConvergenceClass classify_convergence(double lambda);

/// Residual is the largest pairwise gap between sum_n P_n, the S-difference,
/// and 1. Series are summed to tolerance / 10.
VerificationReport telescoping_check(const GpdParams& params, double tolerance);

}  // namespace gpd
