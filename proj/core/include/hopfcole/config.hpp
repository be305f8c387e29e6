#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hopfcole/experiment.hpp"
#include "hopfcole/tau_leap.hpp"

namespace hopfcole {

struct KernelConfig {
  std::string type = "gaussian";  // gaussian | bump | table
  double sigma = 1.0;
  double halfwidth = 0.25;
  std::string table_path;
  double tail_radius = 0.0;
};

struct RatePresetConfig {
  std::string preset = "constant";  // constant | cosine | table
  double value = 0.0;
  double base = 0.0;
  double amplitude = 0.0;
  std::string table_path;
};

struct ScalingConfig {
  double K = 1000.0;
  int m = 8;  // may be given as delta_K in the file; validated to 1/m integer
  double a = 0.4, a1 = 0.5, a2 = 0.3, L = 20.0;
};

struct Beta0Config {
  std::string preset = "constant";  // constant | cosine | tent | table
  double value = 0.5;
  double base = 0.5, amplitude = 0.2;
  double center = 0.5, halfwidth = 0.25, peak = 0.7;
  std::string table_path;
};

struct ProcessConfig {
  double T = 0.5;
  std::vector<double> snapshot_times = {0.0, 0.25, 0.5};
  int replicates = 2;
  uint64_t event_budget = 5'000'000'000ull;
  bool tau_leap = false;
  double tau_leap_epsilon = 0.05;
  int64_t tau_leap_fallback_threshold = 16;
};

struct HjRunConfig {
  int n = 512;
  double T = 0.5;
  std::vector<double> snapshots = {0.5};
  double cfl = 0.45;
  double l_grad = 2.0;
  double manual_dt = 0.0;
};

struct CompareRunConfig {
  std::vector<LadderEntry> ladder = {{1000.0, 8}};
  int replicates = 4;
  double T = 0.5;
  std::vector<double> times = {0.25, 0.5};
  int hj_n = 256;
  double hj_l_grad = 2.0;
  int jobs = 0;
  double hypothesis_A = 5.0;
  double qv_bound_C = 0.0;  // 0: b_max + d_max + p_max
  double riemann_alpha = 1.0;
};

/// Fully validated run configuration with every default filled in. See
/// docs/config_schema.json for the documented keys.
struct RunConfig {
  KernelConfig kernel;
  RatePresetConfig rate_b{"constant", 2.0};
  RatePresetConfig rate_d{"constant", 1.0};
  RatePresetConfig rate_p{"constant", 1.0};
  ScalingConfig scaling;
  Beta0Config beta0;
  ProcessConfig process;
  HjRunConfig hj;
  CompareRunConfig compare;
  uint64_t seed = 1;
  std::string out_dir = "out";
  bool plots = false;
  bool strict_assumptions = false;
  int verbosity = 1;
};

/// Parses and validates a configuration file, reporting every violation (not
/// just the first) in the ConfigError message, one per line with its key path.
RunConfig parse_and_validate(const std::filesystem::path& path);
RunConfig parse_and_validate_text(const std::string& text);

/// Canonical JSON rendering with all defaults filled; parse(emit(cfg)) is a
/// fixed point and emit(parse(emit(cfg))) is byte-identical.
std::string emit_config(const RunConfig& cfg);

/// FNV-1a hash of the canonical rendering; recorded in run manifests.
uint64_t config_hash(const RunConfig& cfg);

// Factories from validated configuration.
MutationKernel build_kernel(const KernelConfig& cfg);
RateFunctions build_rates(const RatePresetConfig& b, const RatePresetConfig& d,
                          const RatePresetConfig& p);
Beta0Profile build_beta0(const Beta0Config& cfg);
Scenario build_scenario(const RunConfig& cfg);
ModelSpec build_model_spec(const RunConfig& cfg);
ExperimentConfig build_experiment(const RunConfig& cfg);

}  // namespace hopfcole
