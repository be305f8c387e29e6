#include "hopfcole/model_spec.hpp"

#include <cmath>
#include <string>

namespace hopfcole {

ModelSpec::ModelSpec(RateFunctions rates, MutationKernel kernel, ScalingParams scaling)
    : rates_(std::move(rates)), kernel_(std::move(kernel)), scaling_(scaling) {
  log_K_ = scaling_.log_K();
  int mm = scaling_.m;
  b_.resize(mm);
  d_.resize(mm);
  p_.resize(mm);
  for (int i = 0; i < mm; ++i) {
    double x = site_x(i);
    b_[i] = rates_.b(x);
    d_[i] = rates_.d(x);
    p_[i] = rates_.p(x);
  }
  l_min_ = -(mm / 2);
  l_max_ = mm - 1 - (mm / 2);
  weights_.resize(mm);
  double hk = scaling_.h_K();
  double sum = 0.0;
  for (int l = l_min_; l <= l_max_; ++l) {
    double w = hk * kernel_.density(hk * static_cast<double>(l));
    weights_[static_cast<size_t>(l - l_min_)] = w;
    sum += w;
  }
  weight_sum_ = sum;
}

double ModelSpec::mutation_rate(int i, int j) const {
  if (i < 0 || i >= scaling_.m || j < 0 || j >= scaling_.m)
    throw ConfigError("mutation_rate: site index out of range (" +
                      std::to_string(i) + ", " + std::to_string(j) + ")");
  double disp = wrap_half((static_cast<double>(j) - static_cast<double>(i)) * delta());
  return p_[i] * delta() * log_K_ * kernel_.density(disp * log_K_);
}

int ModelSpec::wrap_offset(int diff) const {
  int mm = scaling_.m;
  diff %= mm;
  if (diff < l_min_) diff += mm;
  if (diff > l_max_) diff -= mm;
  return diff;
}

std::vector<CheckItem> ModelSpec::check() const {
  std::vector<CheckItem> items = rates_.check_on_grid(scaling_.m);
  auto k = kernel_.check();
  items.insert(items.end(), k.begin(), k.end());
  auto s = scaling_.check();
  items.insert(items.end(), s.begin(), s.end());
  return items;
}

double gbar_discrete(const MutationKernel& kernel, double alpha,
                     const ScalingParams& scaling) {
  double hk = scaling.h_K();
  int l_min = -(scaling.m / 2);
  int l_max = scaling.m - 1 - (scaling.m / 2);
  double sum = 0.0;
  for (int l = l_min; l <= l_max; ++l) {
    double y = hk * static_cast<double>(l);
    double term = hk * kernel.density(y) * std::exp(alpha * std::fabs(y));
    if (!std::isfinite(term) || term > 1e280)
      throw NumericalError("gbar discrete sum tripped the overflow guard at l=" +
                           std::to_string(l));
    sum += term;
  }
  if (!std::isfinite(sum) || sum > 1e280)
    throw NumericalError("gbar discrete sum diverged");
  return sum;
}

GbarResult gbar(const MutationKernel& kernel, double alpha,
                std::span<const ScalingParams> ladder) {
  GbarResult r;
  r.continuum = kernel.exp_moment(alpha);
  for (const auto& s : ladder)
    r.discrete_sup = std::max(r.discrete_sup, gbar_discrete(kernel, alpha, s));
  return r;
}

}  // namespace hopfcole
