#pragma once

// Generalized Poisson distribution on n = 0, 1, 2, ...
//
//   P_n(theta, lambda) = theta (theta + n lambda)^(n-1) / n! * exp(-theta - n lambda)
//
// for theta > 0 and 0 <= lambda < 1. lambda = 0 is Poisson(theta).

#include <cstdint>
#include <vector>

#include "gpd/series_result.hpp"

namespace gpd {

class GpdParams {
 public:
  /// Throws DomainError naming the parameter for theta <= 0, lambda outside
  /// [0, 1), or non-finite input.
  static GpdParams make(double theta, double lambda);

  double theta() const { return theta_; }
  double lambda() const { return lambda_; }

  friend bool operator==(const GpdParams&, const GpdParams&) = default;

 private:
  GpdParams(double theta, double lambda) : theta_(theta), lambda_(lambda) {}

  double theta_;
  double lambda_;
};

inline GpdParams validate_params(double theta, double lambda) { return GpdParams::make(theta, lambda); }

struct PmfTerm {
  std::uint64_t n = 0;
  double probability = 0.0;
  double log_probability = 0.0;
};

class TruncationPolicy {
 public:
  static constexpr double kDefaultTolerance = 1e-14;
  static constexpr std::uint64_t kDefaultMaxTerms = 10'000'000;

  explicit TruncationPolicy(double absolute_tolerance = kDefaultTolerance,
                            std::uint64_t max_terms = kDefaultMaxTerms);

  double absolute_tolerance() const { return absolute_tolerance_; }
  std::uint64_t max_terms() const { return max_terms_; }

 private:
  double absolute_tolerance_;
  std::uint64_t max_terms_;
};

/// Evaluated through a double-double log; n = 0 returns exactly exp(-theta).
PmfTerm pmf(const GpdParams& params, std::uint64_t n);
double log_pmf(const GpdParams& params, std::uint64_t n);

/// Compensated running sum of pmf(0..n), non-decreasing in n, clamped to [0, 1].
/// Once the remaining mass is provably below eps/8 the running value is frozen.
double cdf(const GpdParams& params, std::uint64_t n);

/// Smallest n with cdf(n) >= u. DomainError for u outside [0, 1);
/// NonConvergenceError when u lies above the representable cumulative mass
/// (only possible within a few ulp of 1).
std::uint64_t quantile(const GpdParams& params, double u);

/// Upper bound, valid for every m >= n >= 1, on T_{m+1}/T_m where
/// T_m = m^order P_m. Decreases in n towards lambda e^{1-lambda}.
double term_ratio_majorant(const GpdParams& params, std::uint64_t n, unsigned order);

/// Inversion sampling. Uniforms come from std::mt19937_64 seeded with `seed`,
/// mapped as u = (x >> 11) * 2^-53; each draw equals quantile(params, u).
std::vector<std::uint64_t> sample(const GpdParams& params, std::uint64_t seed, std::uint64_t count);

/// Map a raw 64-bit generator output to [0, 1).
constexpr double uniform_from_bits(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

/// sum_n n^order P_n, order in {0, 1, 2}, stopped once the geometric tail
/// bound from term_ratio_majorant is below the policy tolerance. Throws
/// TruncationError at max_terms.
SeriesResult truncated_moment(const GpdParams& params, unsigned order,
                              const TruncationPolicy& policy = TruncationPolicy{});

}  // namespace gpd
