#include "hopfcole/alias_table.hpp"

#include <cmath>

#include "hopfcole/common.hpp"

namespace hopfcole {

void AliasTable::build(std::span<const double> weights) {
  size_t n = weights.size();
  if (n == 0) throw ConfigError("alias table needs at least one weight");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) throw ConfigError("alias weights must be finite and nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw ConfigError("alias weights must not all vanish");

  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  weight_.assign(n, 0.0);
  std::vector<double> scaled(n);
  for (size_t i = 0; i < n; ++i) {
    weight_[i] = weights[i] / total;
    scaled[i] = weight_[i] * static_cast<double>(n);
  }

  std::vector<int> small, large;
  small.reserve(n);
  large.reserve(n);
  for (size_t i = 0; i < n; ++i)
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<int>(i));

  while (!small.empty() && !large.empty()) {
    int s = small.back();
    small.pop_back();
    int l = large.back();
    large.pop_back();
    prob_[static_cast<size_t>(s)] = scaled[static_cast<size_t>(s)];
    alias_[static_cast<size_t>(s)] = l;
    scaled[static_cast<size_t>(l)] -= 1.0 - scaled[static_cast<size_t>(s)];
    (scaled[static_cast<size_t>(l)] < 1.0 ? small : large).push_back(l);
  }
  for (int i : large) prob_[static_cast<size_t>(i)] = 1.0;
  for (int i : small) prob_[static_cast<size_t>(i)] = 1.0;
}

}  // namespace hopfcole
