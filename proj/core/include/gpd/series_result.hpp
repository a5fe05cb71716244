#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gpd {

/// A truncated infinite sum. `tail_bound` bounds the magnitude of everything
/// omitted after `terms_used` terms.
struct SeriesResult {
  double value = 0.0;
  std::uint64_t terms_used = 0;
  double tail_bound = 0.0;
  bool converged = false;
};

/// The term cap was hit before the tail bound fell below tolerance.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, SeriesResult partial)
      : std::runtime_error(what), partial_(partial) {}

  const SeriesResult& partial() const noexcept { return partial_; }

 private:
  SeriesResult partial_;
};

}  // namespace gpd
