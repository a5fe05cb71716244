#pragma once

#include <stdexcept>
#include <string>

namespace gpd {

/// A parameter or argument fell outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  DomainError(std::string parameter, const std::string& message)
      : std::domain_error(parameter + ": " + message), parameter_(std::move(parameter)) {}

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

/// An exact-arithmetic or table size cap was exceeded.
class CapExceededError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Intermediate magnitudes in an alternating sum would swamp the result.
class CancellationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method ran out of iterations.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gpd
