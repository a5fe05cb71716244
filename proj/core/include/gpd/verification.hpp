#pragma once

// One-shot rerun of every identity the library certifies, over a (theta, lambda) grid.

#include <vector>

#include "gpd/report.hpp"

namespace gpd {

struct VerifyGrid {
  std::vector<double> thetas;
  std::vector<double> lambdas;
};

/// theta in {0.1, 0.5, 1, 2, 5, 10}, lambda in {-0.25, -0.1, 0, 0.1, ..., 0.9}.
VerifyGrid default_verify_grid();

struct VerifyOptions {
  VerifyGrid grid = default_verify_grid();
  double tolerance = 1e-10;
  unsigned k_max = 15;
};

/// Tolerance used at a given lambda: max(tolerance, 1e-8) once lambda >= 0.8,
/// where term decay slows towards the lambda -> 1 limit.
double relaxed_tolerance(double tolerance, double lambda);

/// Identity keys, in report order.
inline constexpr const char* kVerifiedIdentities[] = {
    "gpd-normalization", "s-series-closed-form", "s-series-theta-independence", "rearrangement",
    "telescoping",       "euler-difference",     "lambda0",                     "lambda0-digits",
    "lambda0-root-test", "root-test-stirling",   "stirling-ratio",              "classifier"};

/// Runs every check; a check that throws is reported as failed with the
/// error in `detail`. Throws DomainError for grid values outside the series
/// domain or a non-positive tolerance.
std::vector<VerificationReport> run_verification(const VerifyOptions& options);

bool all_passed(const std::vector<VerificationReport>& reports);

}  // namespace gpd
