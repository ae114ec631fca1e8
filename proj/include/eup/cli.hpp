#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eup/config.hpp"

namespace eup {

/// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kConfigError = 1, kNoConvergence = 2 };

struct CliOptions {
  RunConfig config;
  std::filesystem::path out_dir;
  int threads = 1;
  bool seed_override = false;
  std::uint64_t seed = 0;
};

/// Command entry points; each writes its artifacts under opts.out_dir and
/// returns an exit code. Configuration errors are thrown as ConfigError by
/// the loaders before these run.
int cmd_solve(const CliOptions& opts);
int cmd_thresholds(const CliOptions& opts);
int cmd_oracle(const CliOptions& opts);
int cmd_scan(const CliOptions& opts);
int cmd_uniqueness(const CliOptions& opts);
int cmd_verify(const CliOptions& opts);  // config-free invariant battery

/// Full argv-level driver used by the binary.
int run_cli(const std::vector<std::string>& args);

}  // namespace eup
