#include "hopfcole/scaling.hpp"

#include <sstream>

namespace hopfcole {

ScalingParams::ScalingParams(double K_, int m_, double a_, double a1_, double a2_,
                             double L_)
    : K(K_), m(m_), a(a_), a1(a1_), a2(a2_), L(L_) {
  std::vector<std::string> errs;
  if (!(K > 1.0)) errs.push_back("scaling.K must exceed 1");
  if (m < 1) errs.push_back("scaling.m must be a positive integer");
  if (!(a1 > 0.0)) errs.push_back("scaling.a1 must be positive");
  if (!(a2 < a1)) errs.push_back("scaling.a2 must be below a1");
  if (!(a2 < a && a < a1)) errs.push_back("scaling.a must lie in (a2, a1)");
  if (!(L > 0.0)) errs.push_back("scaling.L must be positive");
  if (!errs.empty()) {
    std::ostringstream os;
    for (size_t i = 0; i < errs.size(); ++i) os << (i ? "; " : "") << errs[i];
    throw ConfigError(os.str());
  }
}

std::vector<CheckItem> ScalingParams::check() const {
  std::vector<CheckItem> items;
  double hk = h_K();
  {
    std::ostringstream os;
    os << "h_K = delta * log K = " << hk;
    items.push_back({"scaling.h_K_small", hk < 1.0, CheckSeverity::kWarning, os.str()});
  }
  double upper = 1.0 / log_K();
  double lower = std::pow(K, -a2 / 4.0);
  {
    std::ostringstream os;
    os << "delta = " << delta() << " vs 1/log K = " << upper;
    items.push_back({"scaling.delta_upper", delta() < upper, CheckSeverity::kWarning,
                     os.str()});
  }
  {
    std::ostringstream os;
    os << "delta = " << delta() << " vs K^{-a2/4} = " << lower
       << " (asymptotic condition, rarely satisfiable at desk-scale K)";
    items.push_back({"scaling.delta_lower", delta() > lower, CheckSeverity::kWarning,
                     os.str()});
  }
  return items;
}

std::vector<CheckItem> enforce_checks(const std::vector<CheckItem>& items, bool strict) {
  std::vector<CheckItem> warnings;
  std::ostringstream failed;
  bool any_error = false;
  for (const auto& it : items) {
    if (it.passed) continue;
    if (it.severity == CheckSeverity::kError ||
        (strict && it.severity == CheckSeverity::kWarning)) {
      any_error = true;
      failed << (failed.tellp() > 0 ? "; " : "") << it.name << ": " << it.message;
    } else {
      warnings.push_back(it);
    }
  }
  if (any_error) throw ConfigError(failed.str());
  return warnings;
}

std::string render_checks(const std::vector<CheckItem>& items) {
  std::ostringstream os;
  for (const auto& it : items) {
    os << (it.passed ? "[pass] " : (it.severity == CheckSeverity::kError ? "[FAIL] " : "[warn] "))
       << it.name << ": " << it.message << "\n";
  }
  return os.str();
}

}  // namespace hopfcole
