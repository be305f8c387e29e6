#include "hopfcole/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hopfcole/quadrature.hpp"
#include "hopfcole/stats.hpp"

namespace hopfcole {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kExpOverflowArg = 690.0;  // exp() argument guard
}  // namespace

MutationKernel MutationKernel::gaussian(double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("gaussian kernel requires sigma > 0");
  MutationKernel k;
  k.type_ = Type::kGaussian;
  k.sigma_ = sigma;
  k.tail_radius_ = 0.0;  // monotone on both half-lines
  return k;
}

MutationKernel MutationKernel::bump(double halfwidth) {
  if (!(halfwidth > 0.0)) throw ConfigError("bump kernel requires halfwidth > 0");
  MutationKernel k;
  k.type_ = Type::kBump;
  k.halfwidth_ = halfwidth;
  k.tail_radius_ = halfwidth;
  // Normalize with the same quadrature used for every later integral so that
  // mgf(0) returns 1 to quadrature precision.
  double raw = integrate(
      [](double u) { return std::fabs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; },
      -1.0, 1.0);
  k.bump_norm_ = 1.0 / (raw * halfwidth);
  return k;
}

MutationKernel MutationKernel::tabulated(std::vector<double> nodes,
                                         std::vector<double> values,
                                         double tail_radius) {
  if (nodes.size() != values.size() || nodes.size() < 2)
    throw ConfigError("tabulated kernel needs >= 2 matching nodes/values");
  if (!std::is_sorted(nodes.begin(), nodes.end()))
    throw ConfigError("tabulated kernel nodes must be ascending");
  for (double v : values)
    if (v < 0.0) throw ConfigError("tabulated kernel values must be nonnegative");
  if (tail_radius < 0.0) throw ConfigError("tail_radius must be nonnegative");
  MutationKernel k;
  k.type_ = Type::kTabulated;
  k.nodes_ = std::move(nodes);
  k.values_ = std::move(values);
  k.tail_radius_ = tail_radius;
  return k;
}

double MutationKernel::density(double h) const {
  switch (type_) {
    case Type::kGaussian: {
      double z = h / sigma_;
      return std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(kTwoPi));
    }
    case Type::kBump: {
      double u = h / halfwidth_;
      if (std::fabs(u) >= 1.0) return 0.0;
      return bump_norm_ * std::exp(-1.0 / (1.0 - u * u));
    }
    case Type::kTabulated: {
      if (h <= nodes_.front() || h >= nodes_.back()) {
        if (h == nodes_.front()) return values_.front();
        if (h == nodes_.back()) return values_.back();
        return 0.0;
      }
      auto it = std::upper_bound(nodes_.begin(), nodes_.end(), h);
      size_t j = static_cast<size_t>(it - nodes_.begin());
      double x0 = nodes_[j - 1], x1 = nodes_[j];
      double t = (h - x0) / (x1 - x0);
      return values_[j - 1] * (1.0 - t) + values_[j] * t;
    }
  }
  return 0.0;
}

double MutationKernel::scale() const {
  switch (type_) {
    case Type::kGaussian: return sigma_;
    case Type::kBump: return halfwidth_;
    case Type::kTabulated: return std::max(std::fabs(nodes_.front()), std::fabs(nodes_.back()));
  }
  return 1.0;
}

double MutationKernel::weighted_integral(double q_abs,
                                         const std::function<double(double)>& w) const {
  double lo, hi;
  if (type_ == Type::kBump) {
    lo = -halfwidth_;
    hi = halfwidth_;
  } else if (type_ == Type::kTabulated) {
    lo = nodes_.front();
    hi = nodes_.back();
  } else {
    // Unbounded support: grow the window until the edge integrand is
    // negligible against the running estimate (monotone tails guarantee the
    // remainder is then controlled).
    double h = std::max(tail_radius_, scale()) + q_abs * sigma_ * sigma_ + 6.0 * scale();
    double est = 0.0;
    for (int iter = 0;; ++iter) {
      if (q_abs * h > kExpOverflowArg)
        throw NumericalError("kernel integral overflow guard tripped at q=" +
                             std::to_string(q_abs));
      est = integrate([&](double x) { return density(x) * w(x); }, -h, h);
      double edge = std::max(density(h), density(-h)) * std::exp(q_abs * h);
      if (edge < 1e-14 * std::fabs(est) || iter >= 12) {
        if (iter >= 12)
          throw NumericalError("kernel tail truncation failed to converge");
        return est;
      }
      h *= 1.5;
    }
  }
  if (q_abs * std::max(std::fabs(lo), std::fabs(hi)) > kExpOverflowArg)
    throw NumericalError("kernel integral overflow guard tripped");
  return integrate([&](double x) { return density(x) * w(x); }, lo, hi);
}

double MutationKernel::mgf_by_quadrature(double q) const {
  return weighted_integral(std::fabs(q), [q](double h) { return std::exp(q * h); });
}

double MutationKernel::mgf_prime_by_quadrature(double q) const {
  return weighted_integral(std::fabs(q), [q](double h) { return h * std::exp(q * h); });
}

double MutationKernel::exp_moment_by_quadrature(double alpha) const {
  return weighted_integral(std::fabs(alpha),
                           [alpha](double h) { return std::exp(alpha * std::fabs(h)); });
}

double MutationKernel::mgf(double q) const {
  if (type_ == Type::kGaussian) {
    double arg = 0.5 * sigma_ * sigma_ * q * q;
    if (arg > kExpOverflowArg)
      throw NumericalError("gaussian mgf overflow at q=" + std::to_string(q));
    return std::exp(arg);
  }
  return mgf_by_quadrature(q);
}

double MutationKernel::mgf_prime(double q) const {
  if (type_ == Type::kGaussian) {
    double s2 = sigma_ * sigma_;
    double arg = 0.5 * s2 * q * q;
    if (arg > kExpOverflowArg)
      throw NumericalError("gaussian mgf_prime overflow at q=" + std::to_string(q));
    return s2 * q * std::exp(arg);
  }
  return mgf_prime_by_quadrature(q);
}

double MutationKernel::exp_moment(double alpha) const {
  if (type_ == Type::kGaussian) {
    double arg = 0.5 * sigma_ * sigma_ * alpha * alpha;
    if (arg > kExpOverflowArg)
      throw NumericalError("gaussian exp_moment overflow at alpha=" +
                           std::to_string(alpha));
    return 2.0 * std::exp(arg) * normal_cdf(alpha * sigma_);
  }
  return exp_moment_by_quadrature(alpha);
}

std::vector<CheckItem> MutationKernel::check() const {
  std::vector<CheckItem> items;
  double span = (type_ == Type::kGaussian) ? 10.0 * sigma_ : scale();
  const int n = 4001;
  bool nonneg = true;
  for (int i = 0; i < n; ++i) {
    double h = -span + 2.0 * span * i / (n - 1);
    if (density(h) < 0.0) nonneg = false;
  }
  items.push_back({"kernel.nonnegative", nonneg, CheckSeverity::kError,
                   nonneg ? "density >= 0 on sampled grid"
                          : "negative density value sampled"});

  double mass = mgf_by_quadrature(0.0);
  bool normed = std::fabs(mass - 1.0) < 1e-8;
  {
    std::ostringstream os;
    os << "integral of G = " << mass;
    items.push_back({"kernel.normalized", normed, CheckSeverity::kError, os.str()});
  }

  bool monotone = true;
  double r = tail_radius_;
  double step = span > r ? (span - r) / 256.0 : 0.0;
  if (step > 0.0) {
    double prev_p = density(r), prev_m = density(-r);
    for (int i = 1; i <= 256; ++i) {
      double p = density(r + i * step), mneg = density(-(r + i * step));
      if (p > prev_p + 1e-12 || mneg > prev_m + 1e-12) monotone = false;
      prev_p = p;
      prev_m = mneg;
    }
  }
  items.push_back({"kernel.monotone_tails", monotone, CheckSeverity::kError,
                   monotone ? "tails monotone beyond tail radius"
                            : "tail monotonicity violated on sampled grid"});
  return items;
}

std::string MutationKernel::describe() const {
  std::ostringstream os;
  switch (type_) {
    case Type::kGaussian: os << "gaussian(sigma=" << sigma_ << ")"; break;
    case Type::kBump: os << "bump(halfwidth=" << halfwidth_ << ")"; break;
    case Type::kTabulated:
      os << "tabulated(" << nodes_.size() << " nodes, tail_radius=" << tail_radius_ << ")";
      break;
  }
  return os.str();
}

}  // namespace hopfcole
