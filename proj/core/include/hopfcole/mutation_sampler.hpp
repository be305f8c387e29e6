#pragma once

#include "hopfcole/alias_table.hpp"
#include "hopfcole/model_spec.hpp"

namespace hopfcole {

/// Samples mutation displacements from the discretized kernel: offsets l in
/// the window [l_min, l_max] with weights h_K G(h_K l). The distribution is
/// site-independent (only the p(x) prefactor varies), so one alias table per
/// ModelSpec suffices.
class MutationSampler {
 public:
  explicit MutationSampler(const ModelSpec& spec)
      : table_(spec.offset_weights()), l_min_(spec.l_min()) {}

  int sample_offset(RngStream& rng) const { return l_min_ + table_.sample(rng); }

  int sample_target(const ModelSpec& spec, int parent, RngStream& rng) const {
    return spec.wrap_site(parent + sample_offset(rng));
  }

  /// Normalized probability of offset l.
  double offset_probability(int l) const { return table_.probability(l - l_min_); }

 private:
  AliasTable table_;
  int l_min_;
};

}  // namespace hopfcole
