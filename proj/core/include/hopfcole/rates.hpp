#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hopfcole/common.hpp"

namespace hopfcole {

/// Per-capita rate functions b (clonal birth), d (death), p (mutant birth) on
/// the torus, together with declared bounds and Lipschitz constants. The
/// declared constants are validated against sampled values at grid
/// resolution; they are taken at face value everywhere else.
struct RateFunctions {
  std::function<double(double)> b, d, p;
  double lip_b = 0.0, lip_d = 0.0, lip_p = 0.0;
  double b_max = 0.0, d_max = 0.0, p_max = 0.0;
  double p_min = 0.0;
  std::string description;

  static RateFunctions constants(double b, double d, double p);
  /// r(x) = base + amplitude * cos(2 pi x) for each rate.
  static RateFunctions cosine(double b_base, double b_amp, double d_base,
                              double d_amp, double p_base, double p_amp);
  /// Periodic piecewise-linear rates through per-site tables (values at j/n).
  static RateFunctions tabulated(std::vector<double> b_table,
                                 std::vector<double> d_table,
                                 std::vector<double> p_table);

  /// Assumption checks at grid resolution m: supercriticality b > d >= 0 and
  /// p >= p_min > 0, declared bounds dominating sampled values, and declared
  /// Lipschitz constants dominating sampled difference quotients.
  std::vector<CheckItem> check_on_grid(int m) const;
};

/// Periodic piecewise-linear interpolation of n values at nodes j/n.
double periodic_table_eval(const std::vector<double>& table, double x);

}  // namespace hopfcole
