#pragma once

#include <functional>

#include "hopfcole/engine.hpp"

namespace hopfcole {

struct TauLeapControl {
  /// Bound on the expected relative change of any site's total rate per leap.
  double epsilon = 0.05;
  /// Sites with fewer individuals than this are stepped exactly within each
  /// leap window; when every site is below it, the stepper delegates to the
  /// exact chain (identical law, identical draws).
  int64_t fallback_threshold = 16;
};

using TauLeapObserver =
    std::function<void(int snap_idx, double t_rescaled, const PopulationState&)>;

/// Poisson-increment approximation of the chain. Opt-in accelerator for
/// exploratory large-K runs; the exact engine is the reference and the only
/// path used by the verification suites.
TrajectorySummary simulate_tau_leap(PopulationState& st, const ModelSpec& spec,
                                    const MutationSampler& sampler, RngStream& rng,
                                    const SimulateOptions& opt,
                                    const TauLeapControl& control,
                                    const TauLeapObserver& observer);

}  // namespace hopfcole
