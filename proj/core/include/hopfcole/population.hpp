#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hopfcole/fenwick.hpp"
#include "hopfcole/model_spec.hpp"

namespace hopfcole {

enum class EventKind : uint8_t { kClonalBirth, kDeath, kMutantBirth };

struct EventRecord {
  EventKind kind;
  int site = -1;
  int target_site = -1;  // set iff kind == kMutantBirth
  double time = 0.0;     // process time
};

/// Counts per site plus cached rate structure. The cached per-site totals are
/// N_i * (b_i + d_i + p_i s_K); birth/death/mutation splits are recovered
/// exactly from the count, so a zero count forces all three to zero.
struct PopulationState {
  std::vector<int64_t> counts;
  double time = 0.0;  // process time (rescaled time is time / log K)
  int64_t total_count = 0;
  std::vector<double> per_capita;  // lambda_i = b_i + d_i + p_i s_K
  FenwickTree site_rates;          // N_i lambda_i
  double total_rate = 0.0;         // running copy of site_rates.total()

  double birth_rate(const ModelSpec& spec, int i) const {
    return static_cast<double>(counts[i]) * spec.b(i);
  }
  double death_rate(const ModelSpec& spec, int i) const {
    return static_cast<double>(counts[i]) * spec.d(i);
  }
  double mutation_rate(const ModelSpec& spec, int i) const {
    return static_cast<double>(counts[i]) * spec.mutation_rate_total(i);
  }

  /// Applies a count change and maintains the rate caches incrementally.
  void bump(int site, int64_t delta) {
    counts[static_cast<size_t>(site)] += delta;
    total_count += delta;
    double dr = per_capita[static_cast<size_t>(site)] * static_cast<double>(delta);
    site_rates.add(site, dr);
    total_rate += dr;
  }

  /// Exact cache rebuild; removes floating drift accumulated by bump().
  void refresh_rates();

  /// Relative disagreement between the cached total rate and a from-scratch
  /// recomputation (the cache-coherence invariant).
  double rate_coherence_error() const;
};

struct InitRule {
  enum class Kind { kUniform, kProfile };
  Kind kind = Kind::kUniform;
  /// Initial exponent profile beta0; counts are ceil(K^{beta0(x_i)}).
  /// kUniform is the constant profile beta0 = a1.
  std::function<double(double)> beta0;

  static InitRule uniform() { return {Kind::kUniform, {}}; }
  static InitRule profile(std::function<double(double)> beta0_fn) {
    return {Kind::kProfile, std::move(beta0_fn)};
  }
};

/// Builds the initial state with consistent caches. Checks the initial-mass
/// assumption N_i(0) >= K^{a1}; violations are errors under strict mode and
/// warnings otherwise (returned via the optional out-parameter).
PopulationState init_state(const ModelSpec& spec, const InitRule& rule,
                           bool strict = false,
                           std::vector<CheckItem>* warnings = nullptr);

}  // namespace hopfcole
