#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hopfcole/model_spec.hpp"
#include "hopfcole/population.hpp"
#include "hopfcole/stopping.hpp"

namespace hopfcole {

/// No-op ledger; lets the event loop compile down to the bare simulation.
struct NullLedger {
  static constexpr bool enabled = false;
  void advance(const PopulationState&, double) {}
  void on_count_changed(const PopulationState&, const ModelSpec&, int, int64_t, int64_t) {}
};

/// Stopping-time flags only, without the Doob-Meyer accumulators; used where
/// the extra per-event cost of the full ledger is not wanted.
class StoppingLedger {
 public:
  static constexpr bool enabled = true;
  StoppingLedger(const ModelSpec& spec, const PopulationState& init) : monitor_(spec) {
    monitor_.check_full(init, spec);
  }
  void advance(const PopulationState&, double) {}
  void on_count_changed(const PopulationState& st, const ModelSpec& spec, int site,
                        int64_t, int64_t) {
    monitor_.check_site(st, spec, site);
  }
  void refresh_incoming(const PopulationState&) {}
  const StoppingFlags& stopping() const { return monitor_.flags(); }

 private:
  StoppingMonitor monitor_;
};

namespace detail {
/// log1p(+-1/n) lookup shared by every ledger: table below the cut, series
/// above it (the x^5/5 truncation error at x <= 1/16384 is below double
/// rounding).
inline constexpr int64_t kBetaJumpCut = 16384;
const double* beta_jump_plus_table();
const double* beta_jump_minus_table();
}  // namespace detail

/// Doob-Meyer diagnostics accumulated alongside the chain.
///
/// beta_i(t) = A_i(t) + M_i(t), where A is the finite-variation part and
/// <M_i> its predictable quadratic variation. Both are integrals of
/// piecewise-constant functions of the state, so they are accumulated
/// exactly over inter-event intervals: the integrands change only at events.
///
/// Per process-time unit, with V+(N) = log(1 + 1/N), V-(N) = log(1 - 1/N)
/// (zero-count convention: jumps touching N = 0 move beta by 0):
///   dA_i   = [ b_i N_i V+(N_i) + d_i N_i V-(N_i) + In_i V+(N_i) ] / log K
///   d<M>_i = [ b_i N_i V+^2    + d_i N_i V-^2    + In_i V+^2    ] / log^2 K
/// where In_i is the total mutant-arrival rate at site i, maintained
/// incrementally from the same per-pair rates the sampler uses, so A is the
/// exact compensator of the simulated chain.
class DiagnosticsLedger {
 public:
  static constexpr bool enabled = true;

  DiagnosticsLedger(const ModelSpec& spec, const PopulationState& init);

  /// Accumulates the integrals over an inter-event interval of length dt
  /// during which the state is constant. Hot path.
  void advance(const PopulationState&, double dt) {
    const int m = m_;
    const double* __restrict in = in_.data();
    const double* __restrict v1 = v1_.data();
    const double* __restrict v2 = v2_.data();
    const double* __restrict d1 = dbd1_.data();
    const double* __restrict d2 = dbd2_.data();
    double* __restrict a = a_raw_.data();
    double* __restrict q = qv_raw_.data();
    for (int i = 0; i < m; ++i) {
      a[i] += (d1[i] + in[i] * v1[i]) * dt;
      q[i] += (d2[i] + in[i] * v2[i]) * dt;
    }
  }

  /// Refreshes the integrand caches after the count at `site` changed. Hot path.
  void on_count_changed(const PopulationState& st, const ModelSpec& spec, int site,
                        int64_t /*old_n*/, int64_t new_n) {
    const int m = m_;
    const size_t s = static_cast<size_t>(site);
    const double* __restrict row = row_.data() + s * static_cast<size_t>(m);
    double* __restrict in = in_.data();
    double dc = static_cast<double>(new_n - last_count_[s]);
    for (int i = 0; i < m; ++i) in[i] += dc * row[i];
    last_count_[s] = new_n;

    double vp = jump_plus(new_n);
    double vm = jump_minus(new_n);
    double dn = static_cast<double>(new_n);
    double bn = b_grid_[s] * dn, dnn = d_grid_[s] * dn;
    v1_[s] = vp;
    v2_[s] = vp * vp;
    dbd1_[s] = bn * vp + dnn * vm;
    dbd2_[s] = bn * vp * vp + dnn * vm * vm;
    stopping_.check_site(st, spec, site);
  }

  /// Exact O(m^2) recomputation of the incoming-rate cache (used at
  /// observation times to bound floating drift).
  void refresh_incoming(const PopulationState& st);
  double incoming_coherence_error(const PopulationState& st) const;

  // Finalized views (t is implicit in the accumulation).
  std::vector<double> finite_variation() const;           // A_i
  std::vector<double> quadratic_variation() const;        // <M_i>
  std::vector<double> martingale(std::span<const double> beta) const;  // beta - A

  const StoppingFlags& stopping() const { return stopping_.flags(); }

 private:
  static double jump_series(double x) {
    double x2 = x * x;
    return x - 0.5 * x2 + x2 * x * (1.0 / 3.0) - 0.25 * x2 * x2;
  }
  double jump_plus(int64_t n) const {
    if (n < detail::kBetaJumpCut) return n >= 1 ? jump_p_[n] : 0.0;
    return jump_series(1.0 / static_cast<double>(n));
  }
  double jump_minus(int64_t n) const {
    if (n < detail::kBetaJumpCut) return jump_m_[n];
    return jump_series(-1.0 / static_cast<double>(n));
  }

  int m_;
  double log_k_;
  const double* jump_p_;
  const double* jump_m_;
  const double* b_grid_;  // borrowed from the ModelSpec, which outlives the ledger
  const double* d_grid_;
  std::vector<double> row_;   // row_[parent * m + target]: per-capita pair rates
  std::vector<double> in_;    // mutant-arrival rate per site
  std::vector<int64_t> last_count_;
  std::vector<double> v1_, v2_, dbd1_, dbd2_;
  std::vector<double> a_raw_, qv_raw_;  // accumulated without the 1/log K factors
  std::vector<double> beta0_;
  StoppingMonitor stopping_;
};

struct MartingaleBoundCheck {
  bool pass = true;
  double max_ratio_vs_bound = 0.0;  // max_i QV_i / bound(t)
  double max_qv_over_t = 0.0;       // max_i QV_i / t
  int argmax_site = -1;
};

/// Pathwise quadratic-variation bound: QV_i(t) <= (C gbar_L / (K^a log K)) t,
/// claimed for t <= theta. C defaults to b_max + d_max + p_max upstream.
MartingaleBoundCheck check_martingale_bound(std::span<const double> qv,
                                            const ModelSpec& spec, double t,
                                            double C, double gbar_L);

/// Largest violation of the pre-stopping pairwise ratio bound
/// N_j / N_i <= exp(L rho(x_j, x_i) log K); <= 1 means the bound holds.
double ratio_bound_excess(std::span<const int64_t> counts, const ModelSpec& spec);

}  // namespace hopfcole
