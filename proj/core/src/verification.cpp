#include "gpd/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "gpd/errors.hpp"
#include "gpd/euler_difference.hpp"
#include "gpd/gpd_dist.hpp"
#include "gpd/numerics.hpp"
#include "gpd/series_identities.hpp"

namespace gpd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrintedLambda0 = 0.2784645428;
constexpr double kHighLambda = 0.8;
constexpr double kRelaxedFloor = 1e-8;
constexpr int kClassifierGridPoints = 1000;

std::string point_label(double theta, double lambda) {
  std::ostringstream os;
  os << "theta=" << theta << " lambda=" << lambda;
  return os.str();
}

std::string lambda_label(double lambda) {
  std::ostringstream os;
  os << "lambda=" << lambda;
  return os.str();
}

// Runs `check`, converting any exception into a failed report.
void guarded(std::vector<VerificationReport>& out, const std::string& identity, const std::string& label,
             double tolerance, const std::function<VerificationReport()>& check) {
  try {
    out.push_back(check());
  } catch (const std::exception& e) {
    out.push_back(make_report(identity, label, kInf, tolerance, std::string("error: ") + e.what()));
  }
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

VerifyGrid default_verify_grid() {
  VerifyGrid grid;
  grid.thetas = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
  grid.lambdas = {-0.25, -0.1};
  for (int i = 0; i <= 9; ++i) grid.lambdas.push_back(i / 10.0);
  return grid;
}

double relaxed_tolerance(double tolerance, double lambda) {
  return lambda >= kHighLambda ? std::max(tolerance, kRelaxedFloor) : tolerance;
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
}

std::vector<VerificationReport> run_verification(const VerifyOptions& options) {
  const double tol = options.tolerance;
  if (!(tol > 0.0)) throw DomainError("tolerance", "must be > 0");
  const auto thetas = sorted_unique(options.grid.thetas);
  const auto lambdas = sorted_unique(options.grid.lambdas);
  const double l0 = lambda0_value();
  for (double theta : thetas) {
    if (!std::isfinite(theta) || !(theta > 0.0)) throw DomainError("theta", "grid values must be finite and > 0");
  }
  for (double lambda : lambdas) {
    if (!(lambda > -l0 + kSeriesEndpointMargin && lambda < 1.0 - kSeriesEndpointMargin)) {
      throw DomainError("lambda", "grid values must lie in (-lambda0 + 1e-6, 1 - 1e-6)");
    }
  }

  std::vector<VerificationReport> out;

  for (double theta : thetas) {
    for (double lambda : lambdas) {
      if (lambda < 0.0) continue;
      const double t = relaxed_tolerance(tol, lambda);
      guarded(out, "gpd-normalization", point_label(theta, lambda), t, [&] {
        const auto r = truncated_moment(GpdParams::make(theta, lambda), 0, TruncationPolicy(t / 10.0));
        return make_report("gpd-normalization", point_label(theta, lambda), std::abs(r.value - 1.0), t,
                           "terms=" + std::to_string(r.terms_used));
      });
    }
  }

  for (double theta : thetas) {
    for (double lambda : lambdas) {
      const double t = relaxed_tolerance(tol, lambda);
      guarded(out, "s-series-closed-form", point_label(theta, lambda), t, [&] {
        const auto r = s_series(theta, lambda, t / 10.0);
        return make_report("s-series-closed-form", point_label(theta, lambda),
                           std::abs(r.value - s_closed_form(lambda)), t, "terms=" + std::to_string(r.terms_used));
      });
    }
  }

  for (double lambda : lambdas) {
    const double t = relaxed_tolerance(tol, lambda);
    guarded(out, "s-series-theta-independence", lambda_label(lambda), kInf, [&] {
      std::vector<SeriesResult> results;
      for (double theta : thetas) results.push_back(s_series(theta, lambda, t / 10.0));
      // Excess of each pairwise gap over that pair's summed tail bounds.
      double excess = 0.0;
      for (std::size_t i = 0; i < results.size(); ++i) {
        for (std::size_t j = i + 1; j < results.size(); ++j) {
          const double gap = std::abs(results[i].value - results[j].value);
          excess = std::max(excess, gap - results[i].tail_bound - results[j].tail_bound);
        }
      }
      return make_report("s-series-theta-independence", lambda_label(lambda), excess, 1e-12,
                         "residual is the largest pairwise gap beyond the summed tail bounds");
    });
  }

  for (double theta : thetas) {
    for (double lambda : lambdas) {
      if (std::abs(lambda) > 0.25) continue;
      guarded(out, "rearrangement", point_label(theta, lambda), kInf, [&] {
        const auto r = s_by_rearrangement(theta, lambda, options.k_max);
        return make_report("rearrangement", point_label(theta, lambda), std::abs(r.value - s_closed_form(lambda)),
                           r.tail_bound, "k_max=" + std::to_string(options.k_max) + ", declared cancellation-aware bound");
      });
    }
  }

  for (double theta : thetas) {
    for (double lambda : lambdas) {
      if (lambda < 0.0) continue;
      const double t = relaxed_tolerance(tol, lambda);
      guarded(out, "telescoping", point_label(theta, lambda), t,
              [&] { return telescoping_check(GpdParams::make(theta, lambda), t); });
    }
  }

  guarded(out, "euler-difference", "sweep", 0.0, [] {
    std::vector<Rational> a_values;
    for (const char* s : {"-2", "-1", "-1/2", "0", "1/2", "1", "2"}) a_values.push_back(parse_rational(s));
    std::vector<Rational> b_values;
    for (const char* s : {"-2", "-1", "1", "2", "1/3"}) b_values.push_back(parse_rational(s));
    return verify_gould(a_values, b_values, 12);
  });

  guarded(out, "lambda0", "root", tol, [&] {
    const Lambda0 root = lambda0(std::max(tol, 1e-15));
    std::ostringstream detail;
    detail.precision(17);
    detail << "lambda0=" << root.value;
    return make_report("lambda0", "root", std::abs(root.residual), tol, detail.str());
  });

  guarded(out, "lambda0-digits", "ten digits", 5e-11, [&] {
    return make_report("lambda0-digits", "ten digits", std::abs(l0 - kPrintedLambda0), 5e-11,
                       "agreement with 0.2784645428 to ten decimals");
  });

  guarded(out, "lambda0-root-test", "root_test_value(lambda0)", tol, [&] {
    return make_report("lambda0-root-test", "root_test_value(lambda0)", std::abs(root_test_value(l0) - 1.0), tol);
  });

  for (double lambda : lambdas) {
    if (lambda == 0.0) continue;
    guarded(out, "root-test-stirling", lambda_label(lambda), 1e-20, [&] {
      double excursion = 0.0;
      for (double theta : thetas) {
        for (std::uint64_t n : {10ULL, 100ULL, 1000ULL}) {
          const RootTestProbe p = root_test_probe(theta, lambda, n);
          excursion = std::max({excursion, p.remainder_lo - p.remainder, p.remainder - p.remainder_hi});
        }
      }
      return make_report("root-test-stirling", lambda_label(lambda), excursion, 1e-20,
                         "n-th root gap minus Stirling expansion within Robbins bounds, n in {10,100,1000}");
    });
  }

  guarded(out, "stirling-ratio", "n in {10,100,1000}", 1e-12, [] {
    double excursion = 0.0;
    double previous = -kInf;
    for (std::uint64_t n : {10ULL, 100ULL, 1000ULL}) {
      const double log_ratio = stirling_approx(n).log_value - log_factorial(n);
      const auto nd = static_cast<double>(n);
      excursion = std::max({excursion, -1.0 / (12.0 * nd) - log_ratio, log_ratio + 1.0 / (12.0 * nd + 1.0)});
      // stirling/n! must climb towards 1
      excursion = std::max(excursion, previous - log_ratio);
      previous = log_ratio;
    }
    return make_report("stirling-ratio", "n in {10,100,1000}", excursion, 1e-12,
                       "log(stirling/n!) inside (-1/(12n), -1/(12n+1)) and increasing");
  });

  guarded(out, "classifier", "1000 points on [-1, 1.2]", 0.0, [&] {
    int disagreements = 0;
    const double e_inv = std::exp(-1.0);
    for (int i = 0; i < kClassifierGridPoints; ++i) {
      const double lambda = -1.0 + 2.2 * i / (kClassifierGridPoints - 1);
      const ConvergenceClass c = classify_convergence(lambda);
      const bool absolute = root_test_value(lambda) < 1.0;
      const bool convergent = std::abs(lambda * std::exp(-lambda)) < e_inv && lambda < 1.0;
      if (c == ConvergenceClass::Boundary) {
        const bool near = ulp_distance(lambda, l0) <= kBoundaryUlps || ulp_distance(lambda, -l0) <= kBoundaryUlps ||
                          ulp_distance(lambda, 1.0) <= kBoundaryUlps;
        if (!near) ++disagreements;
        continue;
      }
      if ((c == ConvergenceClass::AbsolutelyConvergent) != absolute) ++disagreements;
      if (is_convergent(c) != convergent) ++disagreements;
    }
    return make_report("classifier", "1000 points on [-1, 1.2]", disagreements, 0.0,
                       "disagreements with the root-test and |lambda e^-lambda| < e^-1 criteria");
  });

  return out;
}

}  // namespace gpd
