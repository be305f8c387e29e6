#include "hopfcole/rescaled_field.hpp"

#include <cmath>

#include "hopfcole/common.hpp"

namespace hopfcole {

RescaledField beta_from_counts(std::span<const int64_t> counts, double K,
                               double t_rescaled) {
  if (!(K > 1.0)) throw ConfigError("beta_from_counts requires K > 1");
  RescaledField f;
  f.K = K;
  f.t_rescaled = t_rescaled;
  f.beta.resize(counts.size());
  double log_k = std::log(K);
  for (size_t i = 0; i < counts.size(); ++i)
    f.beta[i] = counts[i] >= 1 ? std::log(static_cast<double>(counts[i])) / log_k : 0.0;
  return f;
}

double interpolate(const RescaledField& field, TorusPoint x) {
  size_t m = field.beta.size();
  double u = x.value * static_cast<double>(m);
  size_t i = static_cast<size_t>(u);
  if (i >= m) i = m - 1;
  double frac = u - static_cast<double>(i);
  return field.beta[i] * (1.0 - frac) + field.beta[(i + 1) % m] * frac;
}

double lipschitz_stat(std::span<const double> beta, double delta) {
  size_t m = beta.size();
  if (m < 2) throw ConfigError("lipschitz_stat needs at least two sites");
  double worst = 0.0;
  for (size_t i = 0; i < m; ++i) {
    double gap = std::fabs(beta[(i + 1) % m] - beta[i]);
    if (gap > worst) worst = gap;
  }
  return worst / delta;
}

}  // namespace hopfcole
