#include "hopfcole/population.hpp"

#include <cmath>
#include <sstream>

namespace hopfcole {

void PopulationState::refresh_rates() {
  std::vector<double> values(counts.size());
  total_count = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    values[i] = static_cast<double>(counts[i]) * per_capita[i];
    total_count += counts[i];
  }
  site_rates.rebuild(values);
  total_rate = site_rates.total();
}

double PopulationState::rate_coherence_error() const {
  double exact = 0.0;
  for (size_t i = 0; i < counts.size(); ++i)
    exact += static_cast<double>(counts[i]) * per_capita[i];
  double scale = std::max(std::fabs(exact), 1e-300);
  double cached_err = std::fabs(total_rate - exact);
  double tree_err = std::fabs(site_rates.total() - exact);
  return std::max(cached_err, tree_err) / scale;
}

PopulationState init_state(const ModelSpec& spec, const InitRule& rule, bool strict,
                           std::vector<CheckItem>* warnings) {
  PopulationState st;
  int m = spec.m();
  st.counts.resize(static_cast<size_t>(m));
  st.per_capita.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i)
    st.per_capita[static_cast<size_t>(i)] =
        spec.b(i) + spec.d(i) + spec.mutation_rate_total(i);

  const double K = spec.K();
  const double a1 = spec.scaling().a1;
  for (int i = 0; i < m; ++i) {
    double expo = rule.kind == InitRule::Kind::kUniform ? a1 : rule.beta0(spec.site_x(i));
    double raw = std::pow(K, expo);
    if (raw > 9e15) throw ConfigError("initial count overflows the integer range");
    st.counts[static_cast<size_t>(i)] = static_cast<int64_t>(std::ceil(raw));
  }

  double floor_mass = std::pow(K, a1);
  bool mass_ok = true;
  for (int i = 0; i < m; ++i)
    if (static_cast<double>(st.counts[static_cast<size_t>(i)]) < floor_mass) mass_ok = false;
  std::ostringstream os;
  os << "initial counts vs K^{a1} = " << floor_mass;
  CheckItem item{"init.initial_mass", mass_ok, CheckSeverity::kWarning, os.str()};
  auto warn = enforce_checks({item}, strict);
  if (warnings) warnings->insert(warnings->end(), warn.begin(), warn.end());

  st.refresh_rates();
  st.time = 0.0;
  return st;
}

}  // namespace hopfcole
