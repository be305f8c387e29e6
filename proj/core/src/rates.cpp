#include "hopfcole/rates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hopfcole/torus.hpp"

namespace hopfcole {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double table_max(const std::vector<double>& t) {
  return *std::max_element(t.begin(), t.end());
}
double table_min(const std::vector<double>& t) {
  return *std::min_element(t.begin(), t.end());
}
double table_lip(const std::vector<double>& t) {
  size_t n = t.size();
  double lip = 0.0;
  for (size_t j = 0; j < n; ++j)
    lip = std::max(lip, std::fabs(t[(j + 1) % n] - t[j]) * static_cast<double>(n));
  return lip;
}
}  // namespace

double periodic_table_eval(const std::vector<double>& table, double x) {
  size_t n = table.size();
  double u = (x - std::floor(x)) * static_cast<double>(n);
  size_t j = static_cast<size_t>(u);
  if (j >= n) j = n - 1;
  double t = u - static_cast<double>(j);
  return table[j] * (1.0 - t) + table[(j + 1) % n] * t;
}

RateFunctions RateFunctions::constants(double b, double d, double p) {
  RateFunctions r;
  r.b = [b](double) { return b; };
  r.d = [d](double) { return d; };
  r.p = [p](double) { return p; };
  r.b_max = b;
  r.d_max = d;
  r.p_max = p;
  r.p_min = p;
  std::ostringstream os;
  os << "constant(b=" << b << ", d=" << d << ", p=" << p << ")";
  r.description = os.str();
  return r;
}

RateFunctions RateFunctions::cosine(double b_base, double b_amp, double d_base,
                                    double d_amp, double p_base, double p_amp) {
  RateFunctions r;
  r.b = [=](double x) { return b_base + b_amp * std::cos(kTwoPi * x); };
  r.d = [=](double x) { return d_base + d_amp * std::cos(kTwoPi * x); };
  r.p = [=](double x) { return p_base + p_amp * std::cos(kTwoPi * x); };
  r.lip_b = kTwoPi * std::fabs(b_amp);
  r.lip_d = kTwoPi * std::fabs(d_amp);
  r.lip_p = kTwoPi * std::fabs(p_amp);
  r.b_max = b_base + std::fabs(b_amp);
  r.d_max = d_base + std::fabs(d_amp);
  r.p_max = p_base + std::fabs(p_amp);
  r.p_min = p_base - std::fabs(p_amp);
  std::ostringstream os;
  os << "cosine(b=" << b_base << "+" << b_amp << "cos, d=" << d_base << "+"
     << d_amp << "cos, p=" << p_base << "+" << p_amp << "cos)";
  r.description = os.str();
  return r;
}

RateFunctions RateFunctions::tabulated(std::vector<double> b_table,
                                       std::vector<double> d_table,
                                       std::vector<double> p_table) {
  if (b_table.size() < 2 || d_table.size() < 2 || p_table.size() < 2)
    throw ConfigError("tabulated rates need at least 2 values per rate");
  RateFunctions r;
  r.b_max = table_max(b_table);
  r.d_max = table_max(d_table);
  r.p_max = table_max(p_table);
  r.p_min = table_min(p_table);
  r.lip_b = table_lip(b_table);
  r.lip_d = table_lip(d_table);
  r.lip_p = table_lip(p_table);
  r.b = [t = std::move(b_table)](double x) { return periodic_table_eval(t, x); };
  r.d = [t = std::move(d_table)](double x) { return periodic_table_eval(t, x); };
  r.p = [t = std::move(p_table)](double x) { return periodic_table_eval(t, x); };
  r.description = "tabulated";
  return r;
}

std::vector<CheckItem> RateFunctions::check_on_grid(int m) const {
  std::vector<CheckItem> items;
  bool supercritical = true, positive_p = true, bounds_ok = true;
  double worst_gap = 1e300;
  for (int i = 0; i < m; ++i) {
    double x = static_cast<double>(i) / m;
    double bi = b(x), di = d(x), pi = p(x);
    worst_gap = std::min(worst_gap, bi - di);
    if (!(bi > di) || di < 0.0) supercritical = false;
    if (!(pi >= p_min) || !(p_min > 0.0)) positive_p = false;
    if (bi > b_max + 1e-12 || di > d_max + 1e-12 || pi > p_max + 1e-12)
      bounds_ok = false;
  }
  {
    std::ostringstream os;
    os << "min over grid of b - d = " << worst_gap;
    items.push_back({"rates.supercritical", supercritical, CheckSeverity::kError, os.str()});
  }
  items.push_back({"rates.mutation_positive", positive_p, CheckSeverity::kError,
                   positive_p ? "p >= p_min > 0 on grid"
                              : "p below declared p_min (or p_min <= 0) on grid"});
  items.push_back({"rates.bounds_dominate", bounds_ok, CheckSeverity::kError,
                   bounds_ok ? "declared bounds dominate sampled values"
                             : "a sampled rate exceeds its declared bound"});

  bool lip_ok = true;
  double md = static_cast<double>(m);
  for (int i = 0; i < m; ++i) {
    double x0 = i / md, x1 = ((i + 1) % m) / md;
    double q_b = std::fabs(b(x1) - b(x0)) * md;
    double q_d = std::fabs(d(x1) - d(x0)) * md;
    double q_p = std::fabs(p(x1) - p(x0)) * md;
    if (q_b > lip_b + 1e-9 || q_d > lip_d + 1e-9 || q_p > lip_p + 1e-9)
      lip_ok = false;
  }
  items.push_back({"rates.lipschitz_declared", lip_ok, CheckSeverity::kError,
                   lip_ok ? "difference quotients within declared Lipschitz constants"
                          : "sampled difference quotient exceeds declared Lipschitz constant"});
  return items;
}

}  // namespace hopfcole
