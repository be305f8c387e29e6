#pragma once

#include <span>
#include <vector>

#include "hopfcole/kernel.hpp"
#include "hopfcole/rates.hpp"
#include "hopfcole/scaling.hpp"
#include "hopfcole/torus.hpp"

namespace hopfcole {

/// Immutable bundle of rates, mutation kernel and scaling parameters, with
/// the per-site rate grids and the discrete mutation-offset table
/// precomputed. Safe to share across threads once constructed.
class ModelSpec {
 public:
  ModelSpec(RateFunctions rates, MutationKernel kernel, ScalingParams scaling);

  const RateFunctions& rates() const { return rates_; }
  const MutationKernel& kernel() const { return kernel_; }
  const ScalingParams& scaling() const { return scaling_; }

  int m() const { return scaling_.m; }
  double delta() const { return scaling_.delta(); }
  double log_K() const { return log_K_; }
  double K() const { return scaling_.K; }

  double site_x(int i) const { return static_cast<double>(i) * scaling_.delta(); }
  double b(int i) const { return b_[i]; }
  double d(int i) const { return d_[i]; }
  double p(int i) const { return p_[i]; }
  std::span<const double> b_grid() const { return b_; }
  std::span<const double> d_grid() const { return d_; }
  std::span<const double> p_grid() const { return p_; }

  /// Mutation-offset window of the discretized displacement distribution:
  /// l in {-floor(m/2), ..., m - 1 - floor(m/2)}.
  int l_min() const { return l_min_; }
  int l_max() const { return l_max_; }
  /// Offset weight h_K G(h_K l).
  double offset_weight(int l) const { return weights_[static_cast<size_t>(l - l_min_)]; }
  std::span<const double> offset_weights() const { return weights_; }
  /// Sum of the offset weights (the Riemann approximation of the unit kernel
  /// mass; per-capita total mutation rate is p(x) times this).
  double weight_sum() const { return weight_sum_; }

  /// Rate at which one individual at site i produces a mutant at site j:
  /// p(i delta) * delta * log K * G(wrap(j delta - i delta) * log K).
  double mutation_rate(int i, int j) const;

  /// Per-capita total mutation rate at site i: p_i * weight_sum().
  double mutation_rate_total(int i) const { return p_[i] * weight_sum_; }

  /// Representative of an integer site difference inside the offset window.
  int wrap_offset(int diff) const;

  /// Wraps a site index into {0, ..., m-1}.
  int wrap_site(int j) const {
    int mm = scaling_.m;
    j %= mm;
    return j < 0 ? j + mm : j;
  }

  /// All assumption checks (rates, kernel, scaling) at this resolution.
  std::vector<CheckItem> check() const;

 private:
  RateFunctions rates_;
  MutationKernel kernel_;
  ScalingParams scaling_;
  double log_K_;
  std::vector<double> b_, d_, p_;
  std::vector<double> weights_;
  double weight_sum_;
  int l_min_, l_max_;
};

struct GbarResult {
  double discrete_sup = 0.0;  // sup over the provided (K, m) ladder
  double continuum = 0.0;     // integral of e^{alpha |y|} G(y) dy
};

/// The uniform exponential-moment constant of the discrete offset sums:
/// sup over the ladder of sum_l h_K G(h_K l) e^{alpha h_K |l|}, reported next
/// to its continuum limit. Throws NumericalError if a term trips the
/// overflow guard (divergent configuration).
GbarResult gbar(const MutationKernel& kernel, double alpha,
                std::span<const ScalingParams> ladder);

/// One discrete exponential-moment sum at a single scaling.
double gbar_discrete(const MutationKernel& kernel, double alpha,
                     const ScalingParams& scaling);

}  // namespace hopfcole
