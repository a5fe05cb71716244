#include "gpd/series_identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gpd/double_double.hpp"
#include "gpd/errors.hpp"
#include "gpd/euler_difference.hpp"
#include "gpd/numerics.hpp"

namespace gpd {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_theta(double theta) {
  if (!std::isfinite(theta) || !(theta > 0.0)) throw DomainError("theta", "must be finite and > 0");
}

// Upper bound on |u_{m+1}/u_m| for every m >= n, or +inf when none is known yet.
double s_term_ratio_majorant(double theta, double lambda, std::uint64_t n) {
  const auto nd = static_cast<double>(n);
  double r = std::numeric_limits<double>::infinity();
  if (lambda >= 0.0) {
    r = std::exp(1.0 - lambda) * (lambda + theta / (nd + 1.0));
  } else {
    const double mu = -lambda;
    const double excess = mu * nd - theta;  // |theta + lambda m| for m >= n
    if (excess > 0.0) r = mu * std::exp(1.0 + mu) * std::exp(theta / excess);
  }
  return r * (1.0 + 16 * kEps);
}

}  // namespace

std::string_view to_string(ConvergenceClass c) {
  switch (c) {
    case ConvergenceClass::AbsolutelyConvergent:
      return "AbsolutelyConvergent";
    case ConvergenceClass::Convergent:
      return "Convergent";
    case ConvergenceClass::Divergent:
      return "Divergent";
    case ConvergenceClass::Boundary:
      return "Boundary";
  }
  return "Unknown";
}

SeriesResult s_series(double theta, double lambda, double tolerance, std::uint64_t max_terms) {
  require_theta(theta);
  const double l0 = lambda0_value();
  if (!(lambda > -l0 + kSeriesEndpointMargin && lambda < 1.0 - kSeriesEndpointMargin)) {
    throw DomainError("lambda", "must lie in (-lambda0 + 1e-6, 1 - 1e-6) for the series to be summable");
  }
  if (!(tolerance > 0.0)) throw DomainError("tolerance", "must be > 0");

  // Terms and sum in double-double: for lambda < 0 the terms alternate and the
  // largest can exceed the sum by orders of magnitude.
  DoubleDouble acc{0.0};
  double tail = std::numeric_limits<double>::infinity();
  for (std::uint64_t n = 0; n < max_terms; ++n) {
    const auto nd = static_cast<double>(n);
    const DoubleDouble base = affine(theta, lambda, nd);
    DoubleDouble term{0.0};
    if (n == 0) {
      term = exp(DoubleDouble{-theta});
    } else if (base.hi != 0.0) {
      term = exp(log(abs(base)) * nd - base - log_factorial_dd(n));
      if (base.hi < 0.0 && (n % 2 == 1)) term = -term;
    }
    acc = acc + term;

    const double r = s_term_ratio_majorant(theta, lambda, n);
    if (r < 1.0) {
      tail = std::abs(term.hi) * r / (1.0 - r);
      if (tail <= tolerance) return {acc.to_double(), n + 1, tail, true};
    }
  }
  throw TruncationError("s_series: max_terms reached before the tail bound met tolerance",
                        {acc.to_double(), max_terms, tail, false});
}

double s_closed_form(double lambda) {
  if (std::isnan(lambda) || lambda >= 1.0) throw DomainError("lambda", "closed form requires lambda < 1");
  return 1.0 / (1.0 - lambda);
}

SeriesResult s_by_rearrangement(double theta, double lambda, unsigned k_max) {
  require_theta(theta);
  const double l0 = lambda0_value();
  if (!(std::abs(lambda) < l0)) {
    throw DomainError("lambda", "rearrangement requires |lambda| < lambda0 (absolute convergence)");
  }
  if (k_max < 1) throw DomainError("k_max", "must be >= 1");
  if (k_max > kMaxRearrangementOrder) {
    throw CapExceededError("k_max = " + std::to_string(k_max) + " exceeds cap " +
                           std::to_string(kMaxRearrangementOrder));
  }

  const double expected = s_closed_form(lambda);
  DoubleDouble sum;
  DoubleDouble inv_factorial{1.0};
  double rounding = 0.0;
  for (unsigned k = 0; k <= k_max; ++k) {
    if (k > 0) inv_factorial = inv_factorial / static_cast<double>(k);
    const double scaled_magnitude = difference_magnitude(theta, lambda, k, k) * inv_factorial.hi;
    if (!(scaled_magnitude <= kCancellationCap * expected)) {
      std::ostringstream msg;
      msg << "s_by_rearrangement: column k=" << k << " cancels from magnitude " << scaled_magnitude
          << ", beyond the cap " << kCancellationCap << " x " << expected;
      throw CancellationError(msg.str());
    }
    sum += difference_extended(theta, lambda, k, k) * inv_factorial;
    rounding += 4.0 * (k + 2) * 0x1.0p-104 * scaled_magnitude;
  }

  // Column k sums exactly to lambda^k, so the omitted columns total at most
  // |lambda|^{k_max+1} / (1 - |lambda|).
  const double mu = std::abs(lambda);
  const double truncation = std::pow(mu, k_max + 1) / (1.0 - mu);
  const double value = sum.to_double();
  return {value, k_max + 1U, truncation + rounding + kEps * std::abs(value), true};
}

Lambda0 lambda0(double tolerance) {
  if (!(tolerance >= 1e-15)) throw DomainError("tolerance", "must be >= 1e-15");
  const double e_inv = std::exp(-1.0);
  auto f = [e_inv](double x) { return x * std::exp(x) - e_inv; };
  const auto bracket = RootBracket::make(f, 0.2, 0.3);
  const double root = find_root(f, bracket, tolerance);
  return {root, f(root)};
}

double lambda0_value() {
  static const double value = lambda0(1e-15).value;
  return value;
}

double root_test_value(double lambda) {
  const double mu = std::abs(lambda);
  return mu * std::exp(1.0 + mu);
}

RootTestProbe root_test_probe(double theta, double lambda, std::uint64_t n) {
  require_theta(theta);
  if (!std::isfinite(lambda) || lambda == 0.0) throw DomainError("lambda", "must be finite and nonzero");
  if (n < 1) throw DomainError("n", "must be >= 1");

  const auto nd = static_cast<double>(n);
  const double mu = std::abs(lambda);
  const DoubleDouble magnitude = abs(affine(theta, lambda, nd));
  if (magnitude.hi == 0.0) throw DomainError("n", "theta + lambda n vanishes");

  const DoubleDouble log_root = (log(magnitude) * nd + magnitude - log_factorial_dd(n)) / nd;
  const DoubleDouble log_limit = log(DoubleDouble{mu}) + (DoubleDouble{1.0} + mu);
  const DoubleDouble gap = log_root - log_limit;

  const DoubleDouble mu_n = DoubleDouble{mu} * nd;
  const DoubleDouble stirling_gap = log(magnitude / mu_n) + (magnitude - mu_n) / nd -
                                    (dd_constants::half_log_two_pi + log(DoubleDouble{nd}) * 0.5) / nd;

  RootTestProbe probe;
  probe.log_nth_root = log_root.to_double();
  probe.log_limit = log_limit.to_double();
  probe.stirling_gap = stirling_gap.to_double();
  probe.remainder = (gap - stirling_gap).to_double();
  probe.remainder_lo = -1.0 / (12.0 * nd * nd);
  probe.remainder_hi = -1.0 / (nd * (12.0 * nd + 1.0));
  return probe;
}

ConvergenceClass classify_convergence(double lambda) {
  if (!std::isfinite(lambda)) return ConvergenceClass::Divergent;
  const double l0 = lambda0_value();
  const auto near = [lambda](double threshold) { return ulp_distance(lambda, threshold) <= kBoundaryUlps; };
  if (near(l0) || near(-l0) || near(1.0)) return ConvergenceClass::Boundary;
  if (std::abs(lambda) < l0) return ConvergenceClass::AbsolutelyConvergent;
  // lambda e^{-lambda} is increasing below 1 and equals -e^{-1} at -lambda0.
  if (lambda > -l0 && lambda < 1.0) return ConvergenceClass::Convergent;
  return ConvergenceClass::Divergent;
}

VerificationReport telescoping_check(const GpdParams& params, double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("tolerance", "must be > 0");
  const double theta = params.theta();
  const double lambda = params.lambda();
  const double series_tolerance = tolerance / 10.0;

  const SeriesResult s_theta = s_series(theta, lambda, series_tolerance);
  const SeriesResult s_shifted = s_series(theta + lambda, lambda, series_tolerance);
  const SeriesResult mass = truncated_moment(params, 0, TruncationPolicy(series_tolerance));
  const double difference = s_theta.value - lambda * s_shifted.value;

  const double residual =
      std::max({std::abs(mass.value - difference), std::abs(mass.value - 1.0), std::abs(difference - 1.0)});

  std::ostringstream label;
  label << "theta=" << theta << " lambda=" << lambda;
  std::ostringstream detail;
  detail.precision(17);
  detail << "sum_pmf=" << mass.value << " s_difference=" << difference << " terms=" << mass.terms_used << "/"
         << s_theta.terms_used << "/" << s_shifted.terms_used;
  return make_report("telescoping", label.str(), residual, tolerance, detail.str());
}

}  // namespace gpd
