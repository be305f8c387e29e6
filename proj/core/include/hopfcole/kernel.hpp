#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hopfcole/common.hpp"

namespace hopfcole {

/// Mutation-displacement kernel G: a probability density on the real line
/// with finite exponential moments and monotone tails beyond tail_radius().
///
/// mgf(q)        = integral of G(h) e^{q h} dh   (the Hamiltonian's nonlocal part)
/// exp_moment(a) = integral of G(y) e^{a |y|} dy
///
/// The Gaussian kernel carries closed forms for all three; everything else is
/// evaluated by adaptive quadrature with the tail-truncation rule: the window
/// [-H, H] is grown until G(H) e^{|q| H} drops below 1e-14 of the running
/// integral estimate (compactly supported kernels use their support exactly).
class MutationKernel {
 public:
  enum class Type { kGaussian, kBump, kTabulated };

  static MutationKernel gaussian(double sigma);
  /// Smooth bump supported on [-halfwidth, halfwidth], normalized at build time.
  static MutationKernel bump(double halfwidth);
  /// Piecewise-linear density through (nodes, values), zero outside the node
  /// range; tail_radius is declared by the caller.
  static MutationKernel tabulated(std::vector<double> nodes,
                                  std::vector<double> values,
                                  double tail_radius);

  Type type() const { return type_; }
  double density(double h) const;
  double tail_radius() const { return tail_radius_; }

  bool has_analytic_mgf() const { return type_ == Type::kGaussian; }
  double mgf(double q) const;
  double mgf_prime(double q) const;
  double exp_moment(double alpha) const;

  /// Always takes the quadrature route, also for the Gaussian; used by the
  /// dual-route consistency checks.
  double mgf_by_quadrature(double q) const;
  double mgf_prime_by_quadrature(double q) const;
  double exp_moment_by_quadrature(double alpha) const;

  /// sigma for Gaussian, halfwidth for bump, node span for tabulated.
  double scale() const;

  /// Normalization, nonnegativity and monotone-tail checks (sampled).
  std::vector<CheckItem> check() const;

  std::string describe() const;

 private:
  MutationKernel() = default;

  /// Integrates density(h) * w(h) over the truncated window for |weight
  /// exponent| <= q_abs.
  double weighted_integral(double q_abs,
                           const std::function<double(double)>& w) const;

  Type type_ = Type::kGaussian;
  double sigma_ = 1.0;       // Gaussian
  double halfwidth_ = 0.0;   // bump
  double bump_norm_ = 0.0;   // bump normalization constant
  std::vector<double> nodes_, values_;
  double tail_radius_ = 0.0;
};

}  // namespace hopfcole
