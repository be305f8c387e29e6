#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hopfcole {

double normal_cdf(double x);

/// Upper tail P(Z > x) of the standard normal, accurate far in the tail.
double normal_sf(double x);

double mean(std::span<const double> v);
double sample_sd(std::span<const double> v);

/// Median with the usual even-size average of the two middle order statistics.
double median(std::vector<double> v);

/// Percentile in [0,100] by linear interpolation between order statistics
/// (the "exclusive" plotting-position variant used throughout the outputs).
double percentile(std::vector<double> v, double pct);

/// Ordinary least squares slope of y against x.
double ls_slope(std::span<const double> x, std::span<const double> y);

/// Chi-square quantile via the Wilson-Hilferty transform; adequate for the
/// goodness-of-fit gates used in the tests.
double chi2_quantile(double prob, double dof);

}  // namespace hopfcole
