#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfcole/config.hpp"

namespace hopfcole {

/// Exit codes shared by the CLI: 0 success, 2 configuration error,
/// 3 numerical failure, 4 I/O failure.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

/// Command-line overrides layered on top of the configuration file. The
/// output directory resolves as CLI flag > HOPFCOLE_OUT env var > config.
struct CliOverrides {
  std::optional<uint64_t> seed;
  std::optional<int> replicates;
  std::optional<std::string> out_dir;
  std::optional<std::vector<double>> snapshot_times;
  std::optional<bool> tau_leap;  // simulate: --exact / --tau-leap
  std::optional<int> hj_n;
  std::optional<double> hj_T;
  std::optional<std::vector<double>> hj_snapshots;
  std::optional<int> jobs;
  std::optional<bool> plots;
};

void apply_overrides(RunConfig& cfg, const CliOverrides& ov);

/// Runs one subcommand (simulate | solve | compare | check) end to end on an
/// already-validated config: executes the pipeline, writes outputs and the
/// run manifest under the output directory, and maps failures to exit codes.
int dispatch(const std::string& subcommand, const RunConfig& cfg);

/// Convenience wrapper: parse, apply overrides, dispatch. Configuration
/// errors surface as exit code 2 rather than exceptions.
int run_cli(const std::string& subcommand, const std::string& config_path,
            const CliOverrides& overrides);

}  // namespace hopfcole
