#include "gpd/numerics.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "gpd/errors.hpp"

namespace gpd {

namespace {

// Maps doubles onto integers so that adjacent doubles differ by one.
std::int64_t ordered_bits(double x) {
  const auto bits = std::bit_cast<std::int64_t>(x);
  return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
}

}  // namespace

double compensated_sum(std::span<const double> terms) {
  CompensatedAccumulator acc;
  for (double x : terms) acc.add(x);
  return acc.result();
}

std::uint64_t ulp_distance(double a, double b) {
  const std::int64_t ia = ordered_bits(a);
  const std::int64_t ib = ordered_bits(b);
  return ia > ib ? static_cast<std::uint64_t>(ia) - static_cast<std::uint64_t>(ib)
                 : static_cast<std::uint64_t>(ib) - static_cast<std::uint64_t>(ia);
}

namespace {

const std::vector<DoubleDouble>& log_factorial_table() {
  // Magic-static initialisation is race-free and publishes the table once.
  static const std::vector<DoubleDouble> table = [] {
    std::vector<DoubleDouble> t(kLogFactorialTableSize + 1);
    t[0] = DoubleDouble{0.0};
    t[1] = DoubleDouble{0.0};
    for (std::uint64_t k = 2; k <= kLogFactorialTableSize; ++k) {
      t[k] = t[k - 1] + log(DoubleDouble{static_cast<double>(k)});
    }
    return t;
  }();
  return table;
}

DoubleDouble stirling_series(std::uint64_t n) {
  const DoubleDouble x = dd_from_uint64(n);
  const DoubleDouble log_x = log(x);
  const DoubleDouble inv = DoubleDouble{1.0} / x;
  const DoubleDouble inv2 = inv * inv;
  const DoubleDouble one{1.0};

  // 1/(12n) - 1/(360n^3) + 1/(1260n^5) - 1/(1680n^7) + 1/(1188n^9)
  DoubleDouble corr = one / 1188.0;
  corr = one / 1680.0 - inv2 * corr;
  corr = one / 1260.0 - inv2 * corr;
  corr = one / 360.0 - inv2 * corr;
  corr = one / 12.0 - inv2 * corr;
  corr = corr * inv;

  return (x + 0.5) * log_x - x + dd_constants::half_log_two_pi + corr;
}

}  // namespace

DoubleDouble log_factorial_dd(std::uint64_t n) {
  if (n <= kLogFactorialTableSize) return log_factorial_table()[n];
  return stirling_series(n);
}

double log_factorial(std::uint64_t n) {
  if (n <= 1) return 0.0;
  return log_factorial_dd(n).to_double();
}

StirlingApprox stirling_approx(std::uint64_t n) {
  if (n == 0) throw DomainError("n", "Stirling's approximation requires n >= 1");
  const DoubleDouble x = dd_from_uint64(n);
  const DoubleDouble log_value = (x + 0.5) * log(x) - x + dd_constants::half_log_two_pi;
  StirlingApprox out;
  out.log_value = log_value.to_double();
  if (n <= 170) out.value = std::exp(log_value.hi) * (1.0 + log_value.lo);
  return out;
}

RootBracket RootBracket::make(const std::function<double(double)>& f, double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("bracket", "requires finite lo < hi");
  }
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  const bool sign_change = (f_lo < 0.0 && f_hi > 0.0) || (f_lo > 0.0 && f_hi < 0.0);
  if (!sign_change) throw DomainError("bracket", "f(lo) and f(hi) must have strictly opposite signs");
  return {lo, hi, f_lo, f_hi};
}

double find_root(const std::function<double(double)>& f, const RootBracket& bracket, double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("tolerance", "must be > 0");

  double a = bracket.lo();
  double b = bracket.hi();
  double fa = bracket.f_lo();
  double fb = bracket.f_hi();
  // Illinois scaling modifies fa/fb; keep the true values for the final pick.
  double fa_true = fa;
  double fb_true = fb;
  auto best_endpoint = [&] { return std::abs(fa_true) <= std::abs(fb_true) ? a : b; };

  int stale_side = 0;
  bool force_bisection = false;
  for (int iter = 0; iter < kRootIterationCap; ++iter) {
    const double width = b - a;
    double c = a + 0.5 * width;
    if (!force_bisection) {
      const double secant = b - fb * (b - a) / (fb - fa);
      if (secant > a && secant < b) c = secant;
    }
    if (!(c > a && c < b)) return best_endpoint();  // adjacent doubles

    const double fc = f(c);
    if (!std::isfinite(fc)) throw NonConvergenceError("find_root: f is not finite inside the bracket");
    if (std::abs(fc) <= tolerance) return c;

    if ((fc < 0.0) == (fa < 0.0)) {
      a = c;
      fa = fa_true = fc;
      if (stale_side == 1) fb *= 0.5;
      stale_side = 1;
    } else {
      b = c;
      fb = fb_true = fc;
      if (stale_side == -1) fa *= 0.5;
      stale_side = -1;
    }
    force_bisection = (b - a) > 0.5 * width;
  }
  throw NonConvergenceError("find_root: iteration cap reached");
}

}  // namespace gpd
