#pragma once

// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving roughly 106 bits of significand. Error-free transforms follow
// Dekker/Knuth; products rely on std::fma. Builds must not enable
// -ffast-math or FP contraction, both of which break the transforms.

#include <cmath>
#include <cstdint>

#ifdef __FAST_MATH__
#error "fast math breaks double-double error-free transforms"
#endif

namespace gpd {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  constexpr double to_double() const { return hi + lo; }
};

namespace dd_detail {

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// Requires |a| >= |b| (or a == 0).
inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble s = dd_detail::two_sum(a.hi, b.hi);
  DoubleDouble t = dd_detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = dd_detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator+(const DoubleDouble& a, double b) {
  DoubleDouble s = dd_detail::two_sum(a.hi, b);
  s.lo += a.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }
inline DoubleDouble operator-(const DoubleDouble& a, double b) { return a + (-b); }

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble p = dd_detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(const DoubleDouble& a, double b) {
  DoubleDouble p = dd_detail::two_prod(a.hi, b);
  p.lo += a.lo * b;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
  const double q1 = a.hi / b.hi;
  DoubleDouble r = a - b * q1;
  const double q2 = r.hi / b.hi;
  r = r - b * q2;
  const double q3 = r.hi / b.hi;
  DoubleDouble q = dd_detail::quick_two_sum(q1, q2);
  return q + q3;
}

inline DoubleDouble operator/(const DoubleDouble& a, double b) { return a / DoubleDouble(b); }

inline DoubleDouble& operator+=(DoubleDouble& a, const DoubleDouble& b) { return a = a + b; }
inline DoubleDouble& operator-=(DoubleDouble& a, const DoubleDouble& b) { return a = a - b; }
inline DoubleDouble& operator*=(DoubleDouble& a, const DoubleDouble& b) { return a = a * b; }

inline bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator==(const DoubleDouble& a, const DoubleDouble& b) { return a.hi == b.hi && a.lo == b.lo; }

inline DoubleDouble abs(const DoubleDouble& a) { return a.hi < 0.0 ? -a : a; }

inline DoubleDouble ldexp(const DoubleDouble& a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

/// Exact conversion of a 64-bit unsigned integer.
inline DoubleDouble dd_from_uint64(std::uint64_t n) {
  // Both 32-bit halves are exact doubles and their sum is exact in double-double.
  const auto upper = static_cast<double>(n & 0xFFFFFFFF00000000ULL);
  const auto lower = static_cast<double>(n & 0x00000000FFFFFFFFULL);
  return dd_detail::two_sum(upper, lower);
}

/// a + b*n with the product formed exactly; n must be exactly representable.
inline DoubleDouble affine(double a, double b, double n) { return dd_detail::two_prod(b, n) + a; }

/// Binary powering; relative error grows roughly linearly in log2(p).
inline DoubleDouble pow(DoubleDouble base, unsigned p) {
  DoubleDouble result{1.0};
  while (p != 0) {
    if ((p & 1U) != 0) result *= base;
    p >>= 1U;
    if (p != 0) base *= base;
  }
  return result;
}

DoubleDouble exp(const DoubleDouble& a);
DoubleDouble log(const DoubleDouble& a);

namespace dd_constants {
inline constexpr DoubleDouble ln2{0x1.62e42fefa39efp-1, 0x1.abc9e3b39803fp-56};
// log(2*pi) / 2
inline constexpr DoubleDouble half_log_two_pi{0x1.d67f1c864beb5p-1, -0x1.65b5a1b7ff5dfp-55};
}  // namespace dd_constants

}  // namespace gpd
