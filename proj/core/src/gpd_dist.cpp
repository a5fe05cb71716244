#include "gpd/gpd_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "gpd/double_double.hpp"
#include "gpd/errors.hpp"
#include "gpd/numerics.hpp"

namespace gpd {

GpdParams GpdParams::make(double theta, double lambda) {
  if (!std::isfinite(theta)) throw DomainError("theta", "must be finite");
  if (!(theta > 0.0)) throw DomainError("theta", "must satisfy theta > 0");
  if (!std::isfinite(lambda)) throw DomainError("lambda", "must be finite");
  if (lambda < 0.0) throw DomainError("lambda", "must satisfy lambda >= 0");
  if (lambda >= 1.0) throw DomainError("lambda", "must satisfy lambda < 1");
  return {theta, lambda};
}

TruncationPolicy::TruncationPolicy(double absolute_tolerance, std::uint64_t max_terms)
    : absolute_tolerance_(absolute_tolerance), max_terms_(max_terms) {
  if (!(absolute_tolerance > 0.0)) throw DomainError("absolute_tolerance", "must be > 0");
  if (max_terms < 1) throw DomainError("max_terms", "must be >= 1");
}

namespace {

// Caches log(theta) across consecutive evaluations for the same parameters.
class PmfEvaluator {
 public:
  explicit PmfEvaluator(const GpdParams& params)
      : theta_(params.theta()), lambda_(params.lambda()), log_theta_(log(DoubleDouble{params.theta()})) {}

  DoubleDouble log_probability(std::uint64_t n) const {
    if (n == 0) return DoubleDouble{-theta_};
    const auto nd = static_cast<double>(n);
    const DoubleDouble base = affine(theta_, lambda_, nd);
    return log_theta_ + log(base) * static_cast<double>(n - 1) - log_factorial_dd(n) - base;
  }

  PmfTerm term(std::uint64_t n) const {
    if (n == 0) return {0, std::exp(-theta_), -theta_};
    const DoubleDouble lp = log_probability(n);
    const double p = std::exp(lp.hi) * (1.0 + lp.lo);
    return {n, std::min(p, 1.0), lp.to_double()};
  }

 private:
  double theta_;
  double lambda_;
  DoubleDouble log_theta_;
};

// Running cumulative sum shared by cdf, quantile and sample so all three see
// the identical sequence of values.
class CdfWalker {
 public:
  explicit CdfWalker(const GpdParams& params) : params_(params), eval_(params) {}

  // Adds pmf(next_index()) and returns the unclamped running value.
  double advance() {
    if (!frozen_) {
      const double p = eval_.term(next_).probability;
      acc_.add(p);
      running_ = std::max(running_, acc_.result());
      if (next_ >= 1) {
        const double r = term_ratio_majorant(params_, next_, 0);
        if (r < 1.0 && p * r / (1.0 - r) <= 0x1p-56) frozen_ = true;
      }
    }
    ++next_;
    return running_;
  }

  std::uint64_t next_index() const { return next_; }
  bool frozen() const { return frozen_; }

 private:
  GpdParams params_;
  PmfEvaluator eval_;
  CompensatedAccumulator acc_;
  double running_ = 0.0;
  std::uint64_t next_ = 0;
  bool frozen_ = false;
};

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

PmfTerm pmf(const GpdParams& params, std::uint64_t n) { return PmfEvaluator(params).term(n); }

double log_pmf(const GpdParams& params, std::uint64_t n) {
  if (n == 0) return -params.theta();
  return PmfEvaluator(params).log_probability(n).to_double();
}

double term_ratio_majorant(const GpdParams& params, std::uint64_t n, unsigned order) {
  if (n == 0) return std::numeric_limits<double>::infinity();
  const double theta = params.theta();
  const double lambda = params.lambda();
  const auto nd = static_cast<double>(n);
  // (1 + x)^(m-1) <= e^{(m-1)x} with x = lambda/(theta + m lambda) gives
  // P_{m+1}/P_m <= e^{1-lambda} (lambda + theta/(m+1)), decreasing in m.
  double r = std::exp(1.0 - lambda) * (lambda + theta / (nd + 1.0));
  const double growth = (nd + 1.0) / nd;
  for (unsigned i = 0; i < order; ++i) r *= growth;
  return r * (1.0 + 16 * std::numeric_limits<double>::epsilon());
}

double cdf(const GpdParams& params, std::uint64_t n) {
  CdfWalker walker(params);
  double value = 0.0;
  while (walker.next_index() <= n) {
    value = walker.advance();
    if (walker.frozen()) break;
  }
  return clamp_unit(value);
}

std::uint64_t quantile(const GpdParams& params, double u) {
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("u", "must satisfy 0 <= u < 1");
  CdfWalker walker(params);
  for (;;) {
    const std::uint64_t n = walker.next_index();
    if (clamp_unit(walker.advance()) >= u) return n;
    if (walker.frozen()) {
      throw NonConvergenceError("quantile: u = " + std::to_string(u) + " exceeds the computable cumulative mass");
    }
  }
}

std::vector<std::uint64_t> sample(const GpdParams& params, std::uint64_t seed, std::uint64_t count) {
  if (count < 1) throw DomainError("count", "must be >= 1");
  std::mt19937_64 engine(seed);
  CdfWalker walker(params);
  std::vector<double> table;  // table[n] == cdf(params, n)

  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double u = uniform_from_bits(engine());
    while (table.empty() || table.back() < u) {
      if (walker.frozen() && !table.empty()) {
        throw NonConvergenceError("sample: uniform draw exceeds the computable cumulative mass");
      }
      table.push_back(clamp_unit(walker.advance()));
    }
    const auto it = std::lower_bound(table.begin(), table.end(), u);
    out.push_back(static_cast<std::uint64_t>(it - table.begin()));
  }
  return out;
}

SeriesResult truncated_moment(const GpdParams& params, unsigned order, const TruncationPolicy& policy) {
  if (order > 2) throw DomainError("order", "must be 0, 1 or 2");
  const PmfEvaluator eval(params);
  CompensatedAccumulator acc;
  double tail = std::numeric_limits<double>::infinity();

  for (std::uint64_t n = 0; n < policy.max_terms(); ++n) {
    const auto nd = static_cast<double>(n);
    const double weight = order == 0 ? 1.0 : (order == 1 ? nd : nd * nd);
    const double term = weight * eval.term(n).probability;
    acc.add(term);
    if (n == 0) continue;
    const double r = term_ratio_majorant(params, n, order);
    if (r < 1.0) {
      tail = term * r / (1.0 - r);
      if (tail <= policy.absolute_tolerance()) return {acc.result(), n + 1, tail, true};
    }
  }
  throw TruncationError("truncated_moment: max_terms reached before the tail bound met tolerance",
                        {acc.result(), policy.max_terms(), tail, false});
}

}  // namespace gpd
