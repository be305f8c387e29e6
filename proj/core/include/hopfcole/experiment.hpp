#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "hopfcole/hj.hpp"
#include "hopfcole/ledger.hpp"
#include "hopfcole/model_spec.hpp"

namespace hopfcole {

/// Initial exponent profile beta0 with its declared Lipschitz constant.
struct Beta0Profile {
  std::function<double(double)> fn;
  double lipschitz = 0.0;
  std::string description;

  static Beta0Profile constant(double v);
  static Beta0Profile cosine(double base, double amplitude);
  static Beta0Profile tent(double center, double halfwidth, double peak, double base);
  static Beta0Profile tabulated(std::vector<double> values);
};

/// One scenario shared across a K-ladder: rates, kernel, exponents and the
/// initial profile. The limiting equation does not depend on K, so one HJ
/// reference serves every ladder entry.
struct Scenario {
  RateFunctions rates;
  MutationKernel kernel = MutationKernel::gaussian(1.0);
  double a = 0.4, a1 = 0.5, a2 = 0.3, L = 20.0;
  Beta0Profile beta0;

  ScalingParams scaling_for(double K, int m) const {
    return ScalingParams(K, m, a, a1, a2, L);
  }
  ModelSpec spec_for(double K, int m) const {
    return ModelSpec(rates, kernel, scaling_for(K, m));
  }
};

struct LadderEntry {
  double K = 0.0;
  int m = 0;
};

struct ExperimentConfig {
  Scenario scenario;
  std::vector<LadderEntry> ladder;
  int replicates = 4;
  double T = 0.5;
  std::vector<double> times;  // comparison times, ascending, within [0, T]
  int hj_n = 256;
  double hj_cfl = 0.45;
  double hj_l_grad = 2.0;
  uint64_t seed = 1;
  int jobs = 0;  // 0: hardware concurrency
  uint64_t event_budget = 5'000'000'000ull;
  bool strict = false;
  double qv_bound_C = 0.0;  // 0: b_max + d_max + p_max
};

struct ConvergenceRow {
  double K = 0.0;
  int replicate = 0;
  double t = 0.0;
  double sup_error = 0.0;
  double lipschitz_stat = 0.0;
  bool theta_hit = false;  // theta_K(L) <= t on this replicate
  bool truncated = false;
};

struct SummaryRow {
  double K = 0.0;
  double t = 0.0;
  double median_sup_error = 0.0;
  double p90_sup_error = 0.0;
  double theta_hit_fraction = 0.0;
  int n_valid_replicates = 0;
};

/// Per-replicate diagnostics at the comparison times.
struct ReplicateDiagnostics {
  double K = 0.0;
  int ladder_index = 0;
  int replicate = 0;
  bool truncated = false;
  bool absorbed = false;
  uint64_t n_events = 0;
  double wall_seconds = 0.0;
  StoppingFlags stopping;
  std::vector<double> times;             // comparison times actually observed
  std::vector<double> doob_residual;     // max_i |beta - (A + M)| per time
  std::vector<double> max_qv_over_t;     // per time (0 at t = 0)
  std::vector<double> qv_bound_ratio;    // vs (C gbar_L / (K^a log K)) t, pre-theta
  std::vector<double> ratio_excess;      // pairwise ratio bound, pre-theta
  // Flattened per-time, per-site series for the diagnostics CSV.
  std::vector<double> beta, A, M, QV;    // size times * m
  int m = 0;
};

struct ExperimentResult {
  std::vector<ConvergenceRow> rows;
  std::vector<SummaryRow> summary;
  std::vector<ReplicateDiagnostics> diagnostics;
  HjTrajectory reference;
  double gbar_L = 0.0;  // exponential-moment constant used in the QV bound
  double bound_C = 0.0;
};

/// Runs the ladder: one HJ reference, then replicates fanned out over a
/// thread pool, each on its own (seed, ladder index, replicate) stream.
/// Results are keyed, not ordered, so any schedule yields identical output.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes the CSV tables (and optional SVG plots) under out_dir. Output bytes
/// depend only on (config, seed).
std::vector<std::filesystem::path> emit_outputs(const ExperimentResult& result,
                                                const ExperimentConfig& cfg,
                                                const std::filesystem::path& out_dir,
                                                bool plots);

/// Runs fn(0..n_tasks-1) on `jobs` threads (0: hardware concurrency).
void parallel_for(int n_tasks, int jobs, const std::function<void(int)>& fn);

}  // namespace hopfcole
