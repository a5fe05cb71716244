#pragma once

#include <string>

namespace gpd {

/// Outcome of checking one identity: `passed` iff residual <= tolerance.
struct VerificationReport {
  std::string identity;
  std::string case_label;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

inline VerificationReport make_report(std::string identity, std::string case_label, double residual,
                                      double tolerance, std::string detail = {}) {
  VerificationReport r;
  r.identity = std::move(identity);
  r.case_label = std::move(case_label);
  r.residual = residual;
  r.tolerance = tolerance;
  // NaN residuals never pass.
  r.passed = residual <= tolerance;
  r.detail = std::move(detail);
  return r;
}

}  // namespace gpd
