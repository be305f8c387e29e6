#pragma once

#include <cmath>
#include <vector>

#include "hopfcole/common.hpp"

namespace hopfcole {

/// Scaling parameters: carrying-capacity-like K, grid resolution m = 1/delta,
/// exponents a2 < a < a1, and the Lipschitz threshold L. m is specified
/// directly as an integer so that 1/delta is an integer by construction.
struct ScalingParams {
  double K = 0.0;
  int m = 0;
  double a = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double L = 0.0;

  ScalingParams() = default;
  ScalingParams(double K_, int m_, double a_, double a1_, double a2_, double L_);

  double delta() const { return 1.0 / static_cast<double>(m); }
  double log_K() const { return std::log(K); }
  double h_K() const { return delta() * log_K(); }

  /// Regime checks: h_K < 1 and the finite-K reading of the asymptotic
  /// sandwich K^{-a2/4} < delta < 1/log K. Advisory by default; a strict
  /// caller escalates the failures to hard errors via enforce_checks.
  std::vector<CheckItem> check() const;
};

}  // namespace hopfcole
