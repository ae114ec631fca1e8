#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eup/model.hpp"

namespace eup {

/// Configuration problem: bad value, unknown key, missing key. The message
/// names the offending key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericsConfig {
  int cells = 800;
  double k = 0.5;
  bool continuation = false;       // solve with the default geometric schedule
  double k_final = 1.0 - 1e-6;     // last continuation stage
  std::optional<std::vector<double>> k_schedule;  // explicit stages, overrides
  double tolerance = 1e-10;
  int max_iterations = 50;
  std::uint64_t seed = 1;
};

struct OracleConfig {
  int steps = 4000;
  double bracket_lo = -20.0;
  double bracket_hi = 100.0;
};

struct UniquenessConfig {
  int seeds = 10;
};

struct ScanConfig {
  std::vector<double> eta0_values;
  std::vector<double> bump_levels;
  int seeds_per_cell = 3;
};

struct ThresholdsConfig {
  double eta_bar = 2.0;
  std::optional<double> B_upper;  // defaults to the doping profile's sup
  double k = 1.0;
};

struct RunConfig {
  ProblemSpec problem;
  NumericsConfig numerics;
  OracleConfig oracle;
  UniquenessConfig uniqueness;
  ScanConfig scan;
  ThresholdsConfig thresholds;
};

/// Parses and validates a JSON config. Unknown keys are rejected; all
/// ProblemSpec invariants are revalidated. Throws ConfigError.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& json_text);

}  // namespace eup
