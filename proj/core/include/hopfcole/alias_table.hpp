#pragma once

#include <span>
#include <vector>

#include "hopfcole/rng.hpp"

namespace hopfcole {

/// Walker/Vose alias table for O(1) sampling from a fixed discrete
/// distribution with a single uniform draw.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const double> weights) { build(weights); }

  void build(std::span<const double> weights);

  int size() const { return static_cast<int>(prob_.size()); }

  int sample(RngStream& rng) const {
    double u = rng.uniform01() * static_cast<double>(prob_.size());
    int idx = static_cast<int>(u);
    if (idx >= size()) idx = size() - 1;
    double frac = u - static_cast<double>(idx);
    return frac < prob_[static_cast<size_t>(idx)] ? idx : alias_[static_cast<size_t>(idx)];
  }

  double probability(int i) const { return weight_[static_cast<size_t>(i)]; }

 private:
  std::vector<double> prob_;
  std::vector<int> alias_;
  std::vector<double> weight_;  // normalized input weights, kept for checks
};

}  // namespace hopfcole
