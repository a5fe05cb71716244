#include "gpd/double_double.hpp"

#include <limits>

namespace gpd {

DoubleDouble exp(const DoubleDouble& a) {
  // Range reduction a = k ln2 + r, then r / 2^9 so the Taylor series for
  // expm1 converges in about ten terms; undo with expm1(2x) = 2 expm1(x) + expm1(x)^2.
  constexpr int kSquarings = 9;
  constexpr double kInvScale = 1.0 / 512.0;

  if (std::isnan(a.hi)) return {a.hi};
  if (a.hi > 709.782712893384) return {std::numeric_limits<double>::infinity()};
  if (a.hi < -745.2) return {0.0};
  if (a.hi == 0.0 && a.lo == 0.0) return {1.0};

  const double k = std::nearbyint(a.hi / dd_constants::ln2.hi);
  DoubleDouble r = a - dd_constants::ln2 * k;
  r = r * kInvScale;

  DoubleDouble s = r;
  DoubleDouble term = r;
  const double threshold = 1e-34 * std::abs(r.hi);
  for (int i = 2; i < 30; ++i) {
    term = term * r / static_cast<double>(i);
    s += term;
    if (std::abs(term.hi) <= threshold) break;
  }
  for (int i = 0; i < kSquarings; ++i) s = s * 2.0 + s * s;
  s = s + 1.0;
  return ldexp(s, static_cast<int>(k));
}

DoubleDouble log(const DoubleDouble& a) {
  if (a.hi == 1.0 && a.lo == 0.0) return {0.0};
  if (!(a.hi > 0.0)) {
    return {a.hi == 0.0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN()};
  }
  if (std::isinf(a.hi)) return {a.hi};
  // One Newton step on exp(x) - a doubles the precision of the libm seed.
  const DoubleDouble x{std::log(a.hi)};
  return x + a * exp(-x) - 1.0;
}

}  // namespace gpd
