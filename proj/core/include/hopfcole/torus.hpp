#pragma once

#include <cmath>

namespace hopfcole {

/// A trait coordinate on the unit torus, kept in [0, 1).
struct TorusPoint {
  double value = 0.0;
};

/// Reduces an arbitrary real coordinate into [0, 1).
inline TorusPoint torus_point(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;  // x just below an integer can round up
  return TorusPoint{r};
}

/// The representative of z modulo 1 lying in [-1/2, 1/2).
inline double wrap_half(double z) { return z - std::floor(z + 0.5); }

/// Torus metric: min(|x-y|, 1-|x-y|), in [0, 1/2].
inline double torus_distance(TorusPoint x, TorusPoint y) {
  double d = std::fabs(x.value - y.value);
  return std::min(d, 1.0 - d);
}

inline double torus_distance(double x, double y) {
  return torus_distance(torus_point(x), torus_point(y));
}

}  // namespace hopfcole
