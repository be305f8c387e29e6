#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hopfcole/kernel.hpp"
#include "hopfcole/model_spec.hpp"
#include "hopfcole/rates.hpp"
#include "hopfcole/torus.hpp"

namespace hopfcole {

/// Grid function beta(t, x_j) on n equispaced periodic nodes x_j = j/n.
struct HjState {
  std::vector<double> values;
  double t = 0.0;
  int n = 0;
  double dx() const { return 1.0 / static_cast<double>(n); }
};

/// Local Lax-Friedrichs parameters. theta must dominate |dH/dq| over the
/// gradient range the solution visits; it is sized from the a priori bound
/// l_grad as p_max * |mgf'(l_grad)| * 1.1 and validated a posteriori.
struct SchemeParams {
  double theta = 0.0;
  double cfl = 0.45;
  double l_grad = 0.0;

  static SchemeParams size_for(const RateFunctions& rates, const MutationKernel& kernel,
                               double l_grad, double cfl = 0.45);
};

/// H(x, q) = b(x) - d(x) + p(x) * mgf(q).
double hamiltonian(const RateFunctions& rates, const MutationKernel& kernel, double x,
                   double q);
inline double hamiltonian(const ModelSpec& spec, TorusPoint x, double q) {
  return hamiltonian(spec.rates(), spec.kernel(), x.value, q);
}

/// Monotone flux: H(x, (qm + qp)/2) - (theta/2)(qp - qm).
double numerical_hamiltonian(const RateFunctions& rates, const MutationKernel& kernel,
                             double x, double q_minus, double q_plus,
                             const SchemeParams& params);

/// One forward-Euler step of the monotone scheme. dt must satisfy the CFL
/// restriction dt <= cfl * dx / theta (NumericalError otherwise). Returns the
/// maximal |difference quotient| of the input state.
double hj_step(HjState& state, double dt, const SchemeParams& params,
               const RateFunctions& rates, const MutationKernel& kernel);

struct HjSolveOptions {
  int n = 512;
  double T = 0.0;
  std::vector<double> snapshot_times;  // ascending, within [0, T]
  double cfl = 0.45;
  double l_grad = 2.0;
  double manual_dt = 0.0;  // 0: dt = cfl dx / theta per segment
  int max_restarts = 2;
};

struct HjSnapshot {
  double t;
  std::vector<double> values;
};

struct HjTrajectory {
  std::vector<HjSnapshot> snapshots;
  std::vector<double> final_values;
  double final_time = 0.0;
  double max_gradient = 0.0;  // a posteriori check value for l_grad
  double theta_used = 0.0;
  int restarts = 0;
  uint64_t n_steps = 0;
  std::vector<std::string> warnings;
};

/// Marches beta0 to time T on an n-point periodic grid. If the observed
/// gradient exceeds l_grad the run restarts with enlarged dissipation (at
/// most max_restarts times), then fails.
HjTrajectory hj_solve(const RateFunctions& rates, const MutationKernel& kernel,
                      const std::function<double(double)>& beta0,
                      const HjSolveOptions& options);

}  // namespace hopfcole
