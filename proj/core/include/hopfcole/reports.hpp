#pragma once

#include <span>
#include <vector>

#include "hopfcole/experiment.hpp"

namespace hopfcole {

struct AssumptionReport {
  std::vector<CheckItem> items;
  bool all_passed() const {
    for (const auto& it : items)
      if (!it.passed) return false;
    return true;
  }
};

/// Evaluates every checkable model assumption at each ladder entry:
/// supercriticality and positive mutation rate on the grid, kernel
/// normalization and tail monotonicity, the delta sandwich, the initial-mass
/// floor N_i(0) >= K^{a1}, and the initial Lipschitz quotient against the
/// declared constant hypothesis_A.
AssumptionReport check_assumptions(const Scenario& scenario,
                                   std::span<const LadderEntry> ladder,
                                   double hypothesis_A);

struct RiemannRow {
  double K = 0.0;
  int m = 0;
  double h_K = 0.0;
  double mass_defect = 0.0;   // |sum_l h_K G(h_K l) - 1|
  double gbar_discrete = 0.0; // discrete exponential-moment sum at alpha
  double gbar_continuum = 0.0;
  double gbar_defect = 0.0;   // |discrete - continuum|
};

/// Tabulates the Riemann-sum defects across the ladder; both defects should
/// decrease along increasing K.
std::vector<RiemannRow> riemann_report(const MutationKernel& kernel,
                                       std::span<const ScalingParams> ladder,
                                       double alpha);

}  // namespace hopfcole
