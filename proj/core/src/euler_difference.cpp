#include "gpd/euler_difference.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include "gpd/errors.hpp"

namespace gpd {

namespace {

void check_order(const char* name, unsigned value, unsigned cap) {
  if (value > cap) {
    throw CapExceededError(std::string(name) + " = " + std::to_string(value) + " exceeds cap " + std::to_string(cap));
  }
}

// Row k of Pascal's triangle by repeated addition; exact in 64 bits for
// k <= 64 since C(64,32) < 2^61.
std::vector<std::uint64_t> binomial_row_u64(unsigned k) {
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= k; ++i) {
    for (unsigned n = i; n > 0; --n) row[n] += row[n - 1];
  }
  return row;
}

Rational rational_pow(const Rational& base, unsigned p) {
  Rational result{1};
  for (unsigned i = 0; i < p; ++i) result *= base;
  return result;
}

BigInt factorial_exact(unsigned k) {
  BigInt f{1};
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

DifferenceQuery DifferenceQuery::make(Rational a, Rational b, unsigned p, unsigned k) {
  check_order("p", p, kMaxDifferenceOrder);
  check_order("k", k, kMaxDifferenceOrder);
  return {std::move(a), std::move(b), p, k};
}

Rational parse_rational(const std::string& text) {
  try {
    if (text.empty()) throw std::invalid_argument("empty");
    Rational value(text);
    return value;
  } catch (const std::exception&) {
    throw DomainError("rational", "cannot parse '" + text + "' as an integer or p/q fraction");
  }
}

BigInt binomial_exact(unsigned k, unsigned n) {
  if (n > k) return 0;
  BigInt c{1};
  for (unsigned i = 0; i < n; ++i) {
    c *= (k - i);
    c /= (i + 1);
  }
  return c;
}

ExactValue difference_exact(const DifferenceQuery& query) {
  const unsigned k = query.k();
  Rational sum{0};
  BigInt binom{1};
  for (unsigned n = 0; n <= k; ++n) {
    const Rational term = Rational(binom) * rational_pow(query.a() + query.b() * n, query.p());
    if ((k - n) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    binom *= (k - n);
    binom /= (n + 1);
  }
  return ExactValue(std::move(sum));
}

DoubleDouble difference_extended(double a, double b, unsigned p, unsigned k) {
  check_order("p", p, kMaxDifferenceOrder);
  check_order("k", k, kMaxDifferenceOrder);
  const auto row = binomial_row_u64(k);
  DoubleDouble sum;
  for (unsigned n = 0; n <= k; ++n) {
    const DoubleDouble term = dd_from_uint64(row[n]) * pow(affine(a, b, n), p);
    if ((k - n) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

double difference_float(double a, double b, unsigned p, unsigned k) { return difference_extended(a, b, p, k).to_double(); }

double difference_magnitude(double a, double b, unsigned p, unsigned k) {
  check_order("p", p, kMaxDifferenceOrder);
  check_order("k", k, kMaxDifferenceOrder);
  const auto row = binomial_row_u64(k);
  double total = 0.0;
  for (unsigned n = 0; n <= k; ++n) {
    total += static_cast<double>(row[n]) * std::pow(std::abs(a + b * n), static_cast<double>(p));
  }
  return total;
}

VerificationReport verify_gould(std::span<const Rational> a_values, std::span<const Rational> b_values,
                                unsigned max_order) {
  check_order("max_order", max_order, kMaxGouldSweepOrder);
  std::uint64_t cases = 0;
  for (const Rational& a : a_values) {
    for (const Rational& b : b_values) {
      for (unsigned k = 0; k <= max_order; ++k) {
        const Rational leading = rational_pow(b, k) * Rational(factorial_exact(k));
        for (unsigned p = 0; p <= k; ++p) {
          const ExactValue got = difference_exact(DifferenceQuery::make(a, b, p, k));
          const Rational expected = p < k ? Rational{0} : leading;
          ++cases;
          if (!(got == expected)) {
            std::ostringstream detail;
            detail << "A=" << a << " B=" << b << " p=" << p << " k=" << k << ": got " << got.to_string()
                   << ", expected " << expected;
            double residual = std::abs(static_cast<double>(Rational(got.value() - expected)));
            // A mismatch must never round to a passing residual.
            if (!(residual > 0.0)) residual = std::numeric_limits<double>::infinity();
            return make_report("euler-difference", "sweep", residual, 0.0, detail.str());
          }
        }
      }
    }
  }
  return make_report("euler-difference", "sweep", 0.0, 0.0,
                     "exact equality in " + std::to_string(cases) + " cases, max order " + std::to_string(max_order));
}

}  // namespace gpd
