#pragma once

#include <functional>

namespace hopfcole {

struct QuadratureOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_depth = 48;
};

/// Adaptive Simpson integration of f over [a, b]. Throws NumericalError with
/// diagnostics if the subdivision depth is exhausted before the tolerance is
/// met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

}  // namespace hopfcole
