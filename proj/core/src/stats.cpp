#include "hopfcole/stats.hpp"

#include <algorithm>
#include <cmath>

#include "hopfcole/common.hpp"

namespace hopfcole {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double median(std::vector<double> v) {
  if (v.empty()) throw NumericalError("median of empty sample");
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double percentile(std::vector<double> v, double pct) {
  if (v.empty()) throw NumericalError("percentile of empty sample");
  std::sort(v.begin(), v.end());
  if (v.size() == 1) return v[0];
  double rank = pct / 100.0 * static_cast<double>(v.size() - 1);
  size_t lo = static_cast<size_t>(rank);
  if (lo >= v.size() - 1) return v.back();
  double frac = rank - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

double ls_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw NumericalError("ls_slope needs two same-length samples");
  double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

double chi2_quantile(double prob, double dof) {
  // Wilson-Hilferty: X ~ chi2(k)  =>  (X/k)^(1/3) approx N(1-2/(9k), 2/(9k)).
  // Invert the standard normal by bisection on normal_cdf (few iterations,
  // only used at test setup).
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < prob ? lo : hi) = mid;
  }
  double z = 0.5 * (lo + hi);
  double c = 2.0 / (9.0 * dof);
  double t = 1.0 - c + z * std::sqrt(c);
  return dof * t * t * t;
}

}  // namespace hopfcole
