#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

namespace gpd::cli {

/// One invocation's result. JSON objects keep keys sorted, so dumps are diffable.
struct OutputRecord {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::object();
  std::string status = "ok";
  std::optional<nlohmann::json> residuals;

  nlohmann::json to_json() const;
};

/// `digits` significant digits, shortest form (printf %g style), correctly rounded.
std::string format_number(double x, int digits);

/// x rounded to `digits` significant digits, for JSON output.
nlohmann::json rounded_number(double x, int digits);

/// Exit codes: 0 success, 1 a verification check failed, 2 usage or domain error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gpd::cli
