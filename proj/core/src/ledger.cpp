#include "hopfcole/ledger.hpp"

#include <cmath>

namespace hopfcole {

namespace detail {
namespace {
struct JumpTables {
  std::vector<double> plus, minus;
  JumpTables() : plus(kBetaJumpCut, 0.0), minus(kBetaJumpCut, 0.0) {
    for (int64_t n = 1; n < kBetaJumpCut; ++n) {
      plus[static_cast<size_t>(n)] = std::log1p(1.0 / static_cast<double>(n));
      // Death at n = 1 moves beta from 0 to 0 under the zero-count convention.
      if (n >= 2) minus[static_cast<size_t>(n)] = std::log1p(-1.0 / static_cast<double>(n));
    }
  }
};
const JumpTables& tables() {
  static const JumpTables t;
  return t;
}
}  // namespace

const double* beta_jump_plus_table() { return tables().plus.data(); }
const double* beta_jump_minus_table() { return tables().minus.data(); }
}  // namespace detail

DiagnosticsLedger::DiagnosticsLedger(const ModelSpec& spec, const PopulationState& init)
    : m_(spec.m()),
      log_k_(spec.log_K()),
      jump_p_(detail::beta_jump_plus_table()),
      jump_m_(detail::beta_jump_minus_table()),
      b_grid_(spec.b_grid().data()),
      d_grid_(spec.d_grid().data()),
      stopping_(spec) {
  size_t m = static_cast<size_t>(m_);
  row_.resize(m * m);
  for (int parent = 0; parent < m_; ++parent) {
    double pp = spec.p(parent);
    double* row = row_.data() + static_cast<size_t>(parent) * m;
    for (int target = 0; target < m_; ++target)
      row[target] = pp * spec.offset_weight(spec.wrap_offset(target - parent));
  }
  in_.assign(m, 0.0);
  last_count_.assign(m, 0);
  v1_.assign(m, 0.0);
  v2_.assign(m, 0.0);
  dbd1_.assign(m, 0.0);
  dbd2_.assign(m, 0.0);
  a_raw_.assign(m, 0.0);
  qv_raw_.assign(m, 0.0);
  beta0_.assign(m, 0.0);
  for (int i = 0; i < m_; ++i) {
    size_t s = static_cast<size_t>(i);
    int64_t n = init.counts[s];
    last_count_[s] = n;
    beta0_[s] = n >= 1 ? std::log(static_cast<double>(n)) / log_k_ : 0.0;
    double vp = jump_plus(n), vm = jump_minus(n);
    double dn = static_cast<double>(n);
    v1_[s] = vp;
    v2_[s] = vp * vp;
    dbd1_[s] = spec.b(i) * dn * vp + spec.d(i) * dn * vm;
    dbd2_[s] = spec.b(i) * dn * vp * vp + spec.d(i) * dn * vm * vm;
  }
  refresh_incoming(init);
  stopping_.check_full(init, spec);
}

void DiagnosticsLedger::refresh_incoming(const PopulationState& st) {
  for (int i = 0; i < m_; ++i) in_[static_cast<size_t>(i)] = 0.0;
  for (int parent = 0; parent < m_; ++parent) {
    double n = static_cast<double>(st.counts[static_cast<size_t>(parent)]);
    if (n == 0.0) continue;
    const double* row = row_.data() + static_cast<size_t>(parent) * m_;
    for (int i = 0; i < m_; ++i) in_[static_cast<size_t>(i)] += n * row[i];
  }
}

double DiagnosticsLedger::incoming_coherence_error(const PopulationState& st) const {
  double worst = 0.0;
  for (int i = 0; i < m_; ++i) {
    double exact = 0.0;
    for (int parent = 0; parent < m_; ++parent)
      exact += static_cast<double>(st.counts[static_cast<size_t>(parent)]) *
               row_[static_cast<size_t>(parent) * m_ + i];
    double scale = std::max(std::fabs(exact), 1e-300);
    worst = std::max(worst, std::fabs(in_[static_cast<size_t>(i)] - exact) / scale);
  }
  return worst;
}

std::vector<double> DiagnosticsLedger::finite_variation() const {
  std::vector<double> a(static_cast<size_t>(m_));
  for (int i = 0; i < m_; ++i)
    a[static_cast<size_t>(i)] = beta0_[static_cast<size_t>(i)] +
                                a_raw_[static_cast<size_t>(i)] / log_k_;
  return a;
}

std::vector<double> DiagnosticsLedger::quadratic_variation() const {
  std::vector<double> q(static_cast<size_t>(m_));
  for (int i = 0; i < m_; ++i)
    q[static_cast<size_t>(i)] = qv_raw_[static_cast<size_t>(i)] / (log_k_ * log_k_);
  return q;
}

std::vector<double> DiagnosticsLedger::martingale(std::span<const double> beta) const {
  std::vector<double> m(static_cast<size_t>(m_));
  auto a = finite_variation();
  for (int i = 0; i < m_; ++i)
    m[static_cast<size_t>(i)] = beta[static_cast<size_t>(i)] - a[static_cast<size_t>(i)];
  return m;
}

MartingaleBoundCheck check_martingale_bound(std::span<const double> qv,
                                            const ModelSpec& spec, double t,
                                            double C, double gbar_L) {
  MartingaleBoundCheck out;
  if (t <= 0.0) return out;  // QV(0) = 0: trivially inside the bound
  double bound = C * gbar_L / (std::pow(spec.K(), spec.scaling().a) * spec.log_K()) * t;
  for (size_t i = 0; i < qv.size(); ++i) {
    double r = qv[i] / bound;
    if (r > out.max_ratio_vs_bound) {
      out.max_ratio_vs_bound = r;
      out.argmax_site = static_cast<int>(i);
    }
    out.max_qv_over_t = std::max(out.max_qv_over_t, qv[i] / t);
  }
  out.pass = out.max_ratio_vs_bound <= 1.0;
  return out;
}

double ratio_bound_excess(std::span<const int64_t> counts, const ModelSpec& spec) {
  double worst = 0.0;
  double L = spec.scaling().L;
  int m = spec.m();
  for (int i = 0; i < m; ++i) {
    if (counts[static_cast<size_t>(i)] < 1) continue;
    for (int j = 0; j < m; ++j) {
      if (counts[static_cast<size_t>(j)] < 1) continue;
      double rho = torus_distance(spec.site_x(i), spec.site_x(j));
      double allowed = std::exp(L * rho * spec.log_K());
      double ratio = static_cast<double>(counts[static_cast<size_t>(j)]) /
                     static_cast<double>(counts[static_cast<size_t>(i)]);
      worst = std::max(worst, ratio / allowed);
    }
  }
  return worst;
}

}  // namespace hopfcole
