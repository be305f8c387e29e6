#pragma once

#include <cmath>
#include <limits>

#include "hopfcole/model_spec.hpp"
#include "hopfcole/population.hpp"

namespace hopfcole {

constexpr double kNever = std::numeric_limits<double>::infinity();

struct StoppingFlags {
  bool tau_prime_hit = false;
  bool tau_L_hit = false;
  double tau_prime = kNever;  // rescaled times of first hits
  double tau_L = kNever;
  double theta() const { return std::min(tau_prime, tau_L); }
  bool theta_hit() const { return tau_prime_hit || tau_L_hit; }
};

/// Watches the two stopping rules while the chain runs: tau' fires when some
/// count drops below K^a, tau_L when an adjacent log-size gap exceeds
/// L * delta. Both are recorded once; the simulation keeps going.
///
/// The Lipschitz rule is checked without logarithms: |beta_{i+1} - beta_i| >
/// L delta is equivalent to one count exceeding exp(L h_K) times the other
/// (with the count-zero convention folding into the same threshold).
class StoppingMonitor {
 public:
  StoppingMonitor() = default;
  explicit StoppingMonitor(const ModelSpec& spec)
      : ka_(std::pow(spec.K(), spec.scaling().a)),
        ratio_(std::exp(spec.scaling().L * spec.scaling().h_K())),
        inv_log_k_(1.0 / spec.log_K()) {}

  const StoppingFlags& flags() const { return flags_; }

  /// Full scan; used at initialization and by the standalone monitor op.
  void check_full(const PopulationState& st, const ModelSpec& spec) {
    for (int i = 0; i < spec.m(); ++i) check_site(st, spec, i);
  }

  /// Incremental scan after a count change at `site`.
  void check_site(const PopulationState& st, const ModelSpec& spec, int site) {
    double t = st.time * inv_log_k_;
    if (!flags_.tau_prime_hit &&
        static_cast<double>(st.counts[static_cast<size_t>(site)]) < ka_) {
      flags_.tau_prime_hit = true;
      flags_.tau_prime = t;
    }
    if (!flags_.tau_L_hit) {
      int m = spec.m();
      int prev = site == 0 ? m - 1 : site - 1;
      int next = site + 1 == m ? 0 : site + 1;
      if (pair_exceeds(st.counts[static_cast<size_t>(prev)],
                       st.counts[static_cast<size_t>(site)]) ||
          pair_exceeds(st.counts[static_cast<size_t>(site)],
                       st.counts[static_cast<size_t>(next)])) {
        flags_.tau_L_hit = true;
        flags_.tau_L = t;
      }
    }
  }

 private:
  bool pair_exceeds(int64_t u, int64_t v) const {
    double du = static_cast<double>(u), dv = static_cast<double>(v);
    if (u >= 1 && v >= 1) return du > ratio_ * dv || dv > ratio_ * du;
    if (u == 0 && v == 0) return false;
    return (u == 0 ? dv : du) > ratio_;
  }

  double ka_ = 0.0;
  double ratio_ = 0.0;
  double inv_log_k_ = 0.0;
  StoppingFlags flags_;
};

/// Standalone monitor op: evaluates both rules on a snapshot.
inline StoppingFlags stopping_monitor(const PopulationState& st, const ModelSpec& spec) {
  StoppingMonitor mon(spec);
  mon.check_full(st, spec);
  return mon.flags();
}

}  // namespace hopfcole
