#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hopfcole {

/// Binary-indexed cumulative tree over per-site rates: O(log m) point update
/// and O(log m) sampling of the site containing a cumulative target.
class FenwickTree {
 public:
  FenwickTree() = default;
  explicit FenwickTree(int n) { assign(n); }

  void assign(int n) {
    n_ = n;
    tree_.assign(static_cast<size_t>(n) + 1, 0.0);
    top_ = 1;
    while (top_ * 2 <= n_) top_ *= 2;
  }

  int size() const { return n_; }

  void add(int i, double delta) {
    for (int j = i + 1; j <= n_; j += j & (-j)) tree_[static_cast<size_t>(j)] += delta;
  }

  /// Exact rebuild from raw values; removes accumulated floating drift.
  void rebuild(std::span<const double> values) {
    assign(static_cast<int>(values.size()));
    for (int i = 0; i < n_; ++i) add(i, values[i]);
  }

  double total() const {
    double s = 0.0;
    for (int j = n_; j > 0; j -= j & (-j)) s += tree_[static_cast<size_t>(j)];
    return s;
  }

  double prefix(int count) const {
    double s = 0.0;
    for (int j = count; j > 0; j -= j & (-j)) s += tree_[static_cast<size_t>(j)];
    return s;
  }

  double value(int i) const { return prefix(i + 1) - prefix(i); }

  /// Finds the first site whose cumulative rate exceeds target, returning the
  /// site and the residual within it. target must lie in [0, total()).
  struct SampleResult {
    int site;
    double residual;
  };
  SampleResult sample(double target) const {
    int idx = 0;
    for (int bit = top_; bit != 0; bit >>= 1) {
      int next = idx + bit;
      if (next <= n_ && tree_[static_cast<size_t>(next)] <= target) {
        target -= tree_[static_cast<size_t>(next)];
        idx = next;
      }
    }
    if (idx >= n_) idx = n_ - 1;  // guards the target == total() rounding edge
    return {idx, target};
  }

 private:
  int n_ = 0;
  int top_ = 1;
  std::vector<double> tree_;
};

}  // namespace hopfcole
