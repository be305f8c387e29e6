#include "hopfcole/rng.hpp"

#include <cmath>

namespace hopfcole {

namespace {

int64_t poisson_inversion(RngStream& rng, double lambda) {
  double l = std::exp(-lambda);
  int64_t k = 0;
  double prod = rng.uniform01();
  while (prod > l) {
    ++k;
    prod *= rng.uniform01();
  }
  return k;
}

// PTRS (Hormann 1993), valid for lambda >= 10.
int64_t poisson_ptrs(RngStream& rng, double lambda) {
  double slam = std::sqrt(lambda);
  double loglam = std::log(lambda);
  double b = 0.931 + 2.53 * slam;
  double a = -0.059 + 0.02483 * b;
  double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    double u = rng.uniform01() - 0.5;
    double v = rng.uniform01();
    double us = 0.5 - std::fabs(u);
    double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        k * loglam - lambda - std::lgamma(k + 1.0))
      return static_cast<int64_t>(k);
  }
}

}  // namespace

int64_t poisson(RngStream& rng, double lambda) {
  if (lambda <= 0.0) return 0;
  if (lambda < 10.0) return poisson_inversion(rng, lambda);
  return poisson_ptrs(rng, lambda);
}

}  // namespace hopfcole
