#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hopfcole/torus.hpp"

namespace hopfcole {

/// Log-rescaled site exponents beta_i = log(N_i) / log(K), with beta_i = 0
/// for empty sites, together with the piecewise-linear torus interpolation.
struct RescaledField {
  std::vector<double> beta;
  double t_rescaled = 0.0;
  double K = 0.0;
};

RescaledField beta_from_counts(std::span<const int64_t> counts, double K,
                               double t_rescaled = 0.0);

/// Piecewise-linear interpolation between grid exponents with periodic wrap:
/// for x in [i delta, (i+1) delta), beta_i (1 - x/delta + i) + beta_{i+1}
/// (x/delta - i).
double interpolate(const RescaledField& field, TorusPoint x);
inline double interpolate(const RescaledField& field, double x) {
  return interpolate(field, torus_point(x));
}

/// Discrete Lipschitz statistic: max over adjacent pairs (with wraparound) of
/// |beta_{i+1} - beta_i| / delta. Equals the all-pairs quotient
/// max |beta_i - beta_j| / rho(x_i, x_j) and the interpolant's Lipschitz
/// constant.
double lipschitz_stat(std::span<const double> beta, double delta);

}  // namespace hopfcole
