#include "hopfcole/hj.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hopfcole {

namespace {

/// mgf(q) evaluator for the inner loop: direct closed form for the Gaussian,
/// a dense linear-interpolation table over the working q-range otherwise
/// (quadrature fallback outside the table).
class MgfEvaluator {
 public:
  MgfEvaluator(const MutationKernel& kernel, double q_span)
      : kernel_(&kernel), analytic_(kernel.has_analytic_mgf()) {
    if (analytic_) {
      return;
    }
    span_ = std::max(q_span, 1.0);
    const int n = 4096;
    table_.resize(n + 1);
    for (int i = 0; i <= n; ++i)
      table_[static_cast<size_t>(i)] =
          kernel.mgf(-span_ + 2.0 * span_ * i / static_cast<double>(n));
    step_ = 2.0 * span_ / n;
  }

  double operator()(double q) const {
    if (analytic_) return kernel_->mgf(q);
    if (q < -span_ || q > span_) return kernel_->mgf(q);  // rare slow path
    double u = (q + span_) / step_;
    size_t i = static_cast<size_t>(u);
    if (i >= table_.size() - 1) i = table_.size() - 2;
    double frac = u - static_cast<double>(i);
    return table_[i] * (1.0 - frac) + table_[i + 1] * frac;
  }

 private:
  const MutationKernel* kernel_;
  bool analytic_;
  double span_ = 0.0, step_ = 1.0;
  std::vector<double> table_;
};

struct GridCoefficients {
  std::vector<double> bd;  // b - d at nodes
  std::vector<double> p;
  explicit GridCoefficients(const RateFunctions& rates, int n) : bd(n), p(n) {
    for (int j = 0; j < n; ++j) {
      double x = static_cast<double>(j) / n;
      bd[static_cast<size_t>(j)] = rates.b(x) - rates.d(x);
      p[static_cast<size_t>(j)] = rates.p(x);
    }
  }
};

double lipschitz_of(const HjState& state) {
  const int n = state.n;
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    double gap = std::fabs(state.values[static_cast<size_t>(j + 1 == n ? 0 : j + 1)] -
                           state.values[static_cast<size_t>(j)]);
    worst = std::max(worst, gap * n);
  }
  return worst;
}

/// One step over precomputed coefficients; returns the max |difference
/// quotient| of the input state.
double step_kernel(HjState& state, double dt, double theta,
                   const GridCoefficients& coeff, const MgfEvaluator& mgf,
                   std::vector<double>& scratch) {
  const int n = state.n;
  const double inv_dx = static_cast<double>(n);
  const double* v = state.values.data();
  double* out = scratch.data();
  double max_grad = 0.0;
  for (int j = 0; j < n; ++j) {
    double vm = v[j == 0 ? n - 1 : j - 1];
    double vp = v[j + 1 == n ? 0 : j + 1];
    double qm = (v[j] - vm) * inv_dx;
    double qp = (vp - v[j]) * inv_dx;
    double h = coeff.bd[static_cast<size_t>(j)] +
               coeff.p[static_cast<size_t>(j)] * mgf(0.5 * (qm + qp));
    out[j] = v[j] + dt * (h - 0.5 * theta * (qp - qm));
    max_grad = std::max(max_grad, std::max(std::fabs(qm), std::fabs(qp)));
  }
  state.values.swap(scratch);
  state.t += dt;
  return max_grad;
}

}  // namespace

SchemeParams SchemeParams::size_for(const RateFunctions& rates,
                                    const MutationKernel& kernel, double l_grad,
                                    double cfl) {
  if (!(l_grad >= 0.0)) throw ConfigError("l_grad must be nonnegative");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  SchemeParams p;
  p.cfl = cfl;
  p.l_grad = l_grad;
  double slope = std::max(std::fabs(kernel.mgf_prime(l_grad)),
                          std::fabs(kernel.mgf_prime(-l_grad)));
  p.theta = rates.p_max * slope * 1.1;
  return p;
}

double hamiltonian(const RateFunctions& rates, const MutationKernel& kernel, double x,
                   double q) {
  return rates.b(x) - rates.d(x) + rates.p(x) * kernel.mgf(q);
}

double numerical_hamiltonian(const RateFunctions& rates, const MutationKernel& kernel,
                             double x, double q_minus, double q_plus,
                             const SchemeParams& params) {
  return hamiltonian(rates, kernel, x, 0.5 * (q_minus + q_plus)) -
         0.5 * params.theta * (q_plus - q_minus);
}

double hj_step(HjState& state, double dt, const SchemeParams& params,
               const RateFunctions& rates, const MutationKernel& kernel) {
  if (params.theta > 0.0 && dt > params.cfl * state.dx() / params.theta * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "CFL violation: dt = " << dt << " exceeds cfl*dx/theta = "
       << params.cfl * state.dx() / params.theta;
    throw NumericalError(os.str());
  }
  GridCoefficients coeff(rates, state.n);
  MgfEvaluator mgf(kernel, params.l_grad + 1.0);
  std::vector<double> scratch(state.values.size());
  return step_kernel(state, dt, params.theta, coeff, mgf, scratch);
}

HjTrajectory hj_solve(const RateFunctions& rates, const MutationKernel& kernel,
                      const std::function<double(double)>& beta0,
                      const HjSolveOptions& options) {
  if (options.n < 2) throw ConfigError("hj grid needs n >= 2");
  if (options.T < 0.0) throw ConfigError("hj horizon T must be nonnegative");
  if (!std::is_sorted(options.snapshot_times.begin(), options.snapshot_times.end()))
    throw ConfigError("hj snapshot times must be ascending");
  for (double t : options.snapshot_times)
    if (t < 0.0 || t > options.T + 1e-12)
      throw ConfigError("hj snapshot times must lie in [0, T]");

  GridCoefficients coeff(rates, options.n);
  double l_grad = options.l_grad;
  HjTrajectory traj;

  for (int attempt = 0;; ++attempt) {
    SchemeParams params = SchemeParams::size_for(rates, kernel, l_grad, options.cfl);
    MgfEvaluator mgf(kernel, l_grad + 1.0);

    HjState state;
    state.n = options.n;
    state.t = 0.0;
    state.values.resize(static_cast<size_t>(options.n));
    for (int j = 0; j < options.n; ++j)
      state.values[static_cast<size_t>(j)] = beta0(static_cast<double>(j) / options.n);

    traj.snapshots.clear();
    traj.n_steps = 0;
    traj.max_gradient = lipschitz_of(state);
    traj.theta_used = params.theta;

    double dt_max;
    if (options.manual_dt > 0.0) {
      dt_max = options.manual_dt;
      if (params.theta > 0.0 && dt_max > params.cfl * state.dx() / params.theta * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "CFL violation: manual dt = " << dt_max << " exceeds cfl*dx/theta = "
           << params.cfl * state.dx() / params.theta;
        throw NumericalError(os.str());
      }
    } else {
      dt_max = params.theta > 0.0 ? params.cfl * state.dx() / params.theta : options.T;
      if (dt_max <= 0.0) dt_max = options.T > 0.0 ? options.T : 1.0;
    }

    std::vector<double> scratch(state.values.size());
    bool exceeded = false;

    size_t next_snap = 0;
    auto take_due_snapshots = [&](double now) {
      while (next_snap < options.snapshot_times.size() &&
             options.snapshot_times[next_snap] <= now + 1e-12) {
        traj.snapshots.push_back({options.snapshot_times[next_snap], state.values});
        ++next_snap;
      }
    };
    take_due_snapshots(0.0);

    double t = 0.0;
    while (t < options.T && !exceeded) {
      double seg_end = next_snap < options.snapshot_times.size()
                           ? options.snapshot_times[next_snap]
                           : options.T;
      double seg = seg_end - t;
      if (seg <= 0.0) {
        take_due_snapshots(t);
        continue;
      }
      uint64_t nsteps = static_cast<uint64_t>(std::ceil(seg / dt_max - 1e-12));
      if (nsteps == 0) nsteps = 1;
      double dt = seg / static_cast<double>(nsteps);
      for (uint64_t k = 0; k < nsteps; ++k) {
        double g = step_kernel(state, dt, params.theta, coeff, mgf, scratch);
        traj.max_gradient = std::max(traj.max_gradient, g);
        ++traj.n_steps;
        if (g > l_grad) {
          exceeded = true;
          break;
        }
      }
      t = exceeded ? state.t : seg_end;
      state.t = t;  // pin segment boundaries against accumulated rounding
      if (!exceeded) take_due_snapshots(t);
    }

    if (!exceeded) {
      traj.final_values = state.values;
      traj.final_time = options.T;
      traj.restarts = attempt;
      return traj;
    }
    std::ostringstream os;
    os << "gradient " << traj.max_gradient << " exceeded l_grad = " << l_grad
       << " at t = " << state.t << "; enlarging dissipation and restarting";
    traj.warnings.push_back(os.str());
    if (attempt >= options.max_restarts)
      throw NumericalError("hj_solve: gradient bound still exceeded after " +
                           std::to_string(options.max_restarts) + " restarts (" +
                           os.str() + ")");
    l_grad = std::max(1.5 * l_grad, traj.max_gradient * 1.2);
  }
}

}  // namespace hopfcole
