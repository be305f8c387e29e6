#include "hopfcole/reports.hpp"

#include <cmath>
#include <sstream>

#include "hopfcole/population.hpp"
#include "hopfcole/rescaled_field.hpp"

namespace hopfcole {

AssumptionReport check_assumptions(const Scenario& scenario,
                                   std::span<const LadderEntry> ladder,
                                   double hypothesis_A) {
  AssumptionReport report;
  auto kernel_items = scenario.kernel.check();
  report.items.insert(report.items.end(), kernel_items.begin(), kernel_items.end());

  for (const auto& entry : ladder) {
    ModelSpec spec = scenario.spec_for(entry.K, entry.m);
    std::ostringstream tag;
    tag << "K=" << entry.K << ".";

    for (auto item : spec.rates().check_on_grid(entry.m)) {
      item.name = tag.str() + item.name;
      report.items.push_back(item);
    }
    for (auto item : spec.scaling().check()) {
      item.name = tag.str() + item.name;
      report.items.push_back(item);
    }

    // Initial mass floor and initial Lipschitz quotient from the profile rule.
    PopulationState st = init_state(spec, InitRule::profile(scenario.beta0.fn), false);
    double floor_mass = std::pow(entry.K, scenario.a1);
    bool mass_ok = true;
    for (int64_t c : st.counts)
      if (static_cast<double>(c) < floor_mass) mass_ok = false;
    {
      std::ostringstream os;
      os << "min initial count vs K^{a1} = " << floor_mass;
      report.items.push_back(
          {tag.str() + "init.initial_mass", mass_ok, CheckSeverity::kWarning, os.str()});
    }
    if (entry.m >= 2) {
      RescaledField f0 = beta_from_counts(st.counts, entry.K, 0.0);
      double lip0 = lipschitz_stat(f0.beta, spec.delta());
      std::ostringstream os;
      os << "initial Lipschitz quotient " << lip0 << " vs A = " << hypothesis_A;
      report.items.push_back({tag.str() + "init.lipschitz_quotient",
                              lip0 <= hypothesis_A, CheckSeverity::kWarning, os.str()});
    }
  }
  return report;
}

std::vector<RiemannRow> riemann_report(const MutationKernel& kernel,
                                       std::span<const ScalingParams> ladder,
                                       double alpha) {
  std::vector<RiemannRow> rows;
  for (const auto& s : ladder) {
    RiemannRow row;
    row.K = s.K;
    row.m = s.m;
    row.h_K = s.h_K();
    double hk = s.h_K();
    int l_min = -(s.m / 2);
    int l_max = s.m - 1 - (s.m / 2);
    double mass = 0.0;
    for (int l = l_min; l <= l_max; ++l)
      mass += hk * kernel.density(hk * static_cast<double>(l));
    row.mass_defect = std::fabs(mass - 1.0);
    row.gbar_discrete = gbar_discrete(kernel, alpha, s);
    row.gbar_continuum = kernel.exp_moment(alpha);
    row.gbar_defect = std::fabs(row.gbar_discrete - row.gbar_continuum);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hopfcole
