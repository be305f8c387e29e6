#include <doctest.h>

#include <cmath>
#include <map>

#include "hopfcole/engine.hpp"
#include "hopfcole/stats.hpp"
#include "test_support.hpp"

using namespace hopfcole;

namespace {

ModelSpec constant_spec(double K, int m, double b, double d, double p) {
  return ModelSpec(RateFunctions::constants(b, d, p), MutationKernel::gaussian(1.0),
                   ScalingParams(K, m, 0.4, 0.5, 0.3, 20.0));
}

PopulationState state_with_counts(const ModelSpec& spec, std::vector<int64_t> counts) {
  PopulationState st = init_state(spec, InitRule::uniform());
  st.counts = std::move(counts);
  st.refresh_rates();
  st.time = 0.0;
  return st;
}

}  // namespace

TEST_CASE("init_state count rules") {
  SUBCASE("uniform rule: ceil(K^{a1})") {
    ModelSpec spec = constant_spec(1e4, 8, 2.0, 1.0, 1.0);
    PopulationState st = init_state(spec, InitRule::uniform());
    for (int64_t c : st.counts) CHECK(c == 100);
    CHECK(st.time == 0.0);
    CHECK(st.rate_coherence_error() < 1e-12);
  }
  SUBCASE("constant profile matches the uniform rule") {
    ModelSpec spec = constant_spec(1e4, 8, 2.0, 1.0, 1.0);
    PopulationState st =
        init_state(spec, InitRule::profile([](double) { return 0.5; }));
    for (int64_t c : st.counts) CHECK(c == 100);
  }
  SUBCASE("cosine profile at site 0: ceil(10^{2.8}) = 631") {
    ModelSpec spec = constant_spec(1e4, 8, 2.0, 1.0, 1.0);
    PopulationState st = init_state(spec, InitRule::profile([](double x) {
      return 0.5 + 0.2 * std::cos(2.0 * 3.14159265358979323846 * x);
    }));
    CHECK(st.counts[0] == 631);
  }
  SUBCASE("strict mode rejects a profile below the initial-mass floor") {
    ModelSpec spec = constant_spec(1e4, 8, 2.0, 1.0, 1.0);
    CHECK_THROWS_AS(
        init_state(spec, InitRule::profile([](double) { return 0.25; }), true),
        ConfigError);
    // Advisory mode only warns.
    std::vector<CheckItem> warnings;
    init_state(spec, InitRule::profile([](double) { return 0.25; }), false, &warnings);
    CHECK(warnings.size() == 1);
  }
}

TEST_CASE("single-individual race: birth 2/3, death 1/3") {
  ModelSpec spec = constant_spec(100.0, 8, 2.0, 1.0, 0.0);
  PopulationState st = state_with_counts(spec, {0, 0, 0, 1, 0, 0, 0, 0});
  MutationSampler sampler(spec);
  RngStream rng(99);
  int births = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    auto ev = next_event(st, spec, sampler, rng);
    REQUIRE(ev.has_value());
    CHECK(ev->site == 3);
    CHECK(ev->kind != EventKind::kMutantBirth);
    if (ev->kind == EventKind::kClonalBirth) ++births;
  }
  double frac = static_cast<double>(births) / n;
  double sd = std::sqrt(2.0 / 9.0 / n);
  CHECK(std::fabs(frac - 2.0 / 3.0) < 4.0 * sd);
}

TEST_CASE("empty sites are never selected") {
  ModelSpec spec = constant_spec(100.0, 4, 2.0, 1.0, 0.5);
  PopulationState st = state_with_counts(spec, {3, 0, 5, 0});
  MutationSampler sampler(spec);
  RngStream rng(7);
  for (int i = 0; i < 20000; ++i) {
    auto ev = next_event(st, spec, sampler, rng);
    REQUIRE(ev.has_value());
    CHECK(ev->site != 1);
    CHECK(ev->site != 3);
  }
}

TEST_CASE("two-site event split 5/8") {
  ModelSpec spec = constant_spec(100.0, 2, 2.0, 1.0, 0.0);
  PopulationState st = state_with_counts(spec, {3, 5});
  MutationSampler sampler(spec);
  RngStream rng(21);
  int site1 = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    auto ev = next_event(st, spec, sampler, rng);
    if (ev->site == 1) ++site1;
  }
  double frac = static_cast<double>(site1) / n;
  double sd = std::sqrt(0.625 * 0.375 / n);
  CHECK(std::fabs(frac - 0.625) < 4.0 * sd);
}

TEST_CASE("apply_event maintains caches incrementally") {
  ModelSpec spec = constant_spec(100.0, 4, 2.0, 1.0, 0.5);
  double s_k = spec.weight_sum();

  SUBCASE("death at a singleton zeroes the site rates") {
    PopulationState st = state_with_counts(spec, {1, 4, 4, 4});
    apply_event(st, spec, {EventKind::kDeath, 0, -1, 0.5});
    CHECK(st.counts[0] == 0);
    CHECK(st.birth_rate(spec, 0) == 0.0);
    CHECK(st.death_rate(spec, 0) == 0.0);
    CHECK(st.mutation_rate(spec, 0) == 0.0);
    CHECK(st.site_rates.value(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(st.time == 0.5);
  }
  SUBCASE("mutant birth adds to the target only") {
    PopulationState st = state_with_counts(spec, {4, 4, 4, 4});
    apply_event(st, spec, {EventKind::kMutantBirth, 1, 3, 0.25});
    CHECK(st.counts[1] == 4);
    CHECK(st.counts[3] == 5);
  }
  SUBCASE("clonal birth raises the total rate by b + d + p s_K") {
    PopulationState st = state_with_counts(spec, {4, 4, 4, 4});
    double before = st.total_rate;
    apply_event(st, spec, {EventKind::kClonalBirth, 2, -1, 0.1});
    CHECK(st.total_rate - before ==
          doctest::Approx(2.0 + 1.0 + 0.5 * s_k).epsilon(1e-12));
  }
  SUBCASE("death at an empty site is an internal invariant violation") {
    PopulationState st = state_with_counts(spec, {0, 4, 4, 4});
    CHECK_THROWS_AS(apply_event(st, spec, {EventKind::kDeath, 0, -1, 0.1}),
                    std::logic_error);
  }
}

TEST_CASE("simulate_until basics") {
  ModelSpec spec = constant_spec(100.0, 4, 2.0, 1.0, 0.5);
  MutationSampler sampler(spec);

  SUBCASE("T = 0 returns immediately with the initial snapshot") {
    PopulationState st = init_state(spec, InitRule::uniform());
    RngStream rng(1);
    SimulateOptions opt;
    opt.T_rescaled = 0.0;
    opt.snapshot_times = {0.0};
    int fired = 0;
    auto sum = simulate_until(st, spec, sampler, rng, opt,
                              [&](int, double t, const PopulationState& s) {
                                ++fired;
                                CHECK(t == 0.0);
                                CHECK(s.counts[0] == 10);
                              });
    CHECK(fired == 1);
    CHECK(sum.n_events == 0);
  }
  SUBCASE("pure birth is nondecreasing along the path") {
    ModelSpec pure = constant_spec(100.0, 4, 1.5, 0.0, 0.0);
    PopulationState st = init_state(pure, InitRule::uniform());
    MutationSampler ps(pure);
    RngStream rng(3);
    SimulateOptions opt;
    opt.T_rescaled = 0.6;
    NullLedger ledger;
    int64_t prev_total = st.total_count;
    auto sum = simulate_until(st, pure, ps, rng, opt, ledger,
                              [](int, double, const PopulationState&, NullLedger&) {},
                              [&](const EventRecord& ev) {
                                CHECK(ev.kind == EventKind::kClonalBirth);
                              });
    CHECK(st.total_count >= prev_total);
    CHECK(sum.n_deaths == 0);
    CHECK(sum.n_mutations == 0);
  }
  SUBCASE("event budget truncates with the flag set") {
    PopulationState st = init_state(spec, InitRule::uniform());
    RngStream rng(4);
    SimulateOptions opt;
    opt.T_rescaled = 50.0;
    opt.event_budget = 1000;
    auto sum = simulate_until(st, spec, sampler, rng, opt,
                              [](int, double, const PopulationState&) {});
    CHECK(sum.truncated);
    CHECK(sum.n_events == 1000);
    CHECK(sum.final_time_rescaled < 50.0);
  }
  SUBCASE("global extinction absorbs and later snapshots still fire") {
    ModelSpec dying = constant_spec(100.0, 2, 0.0, 1.0, 0.0);
    PopulationState st = state_with_counts(dying, {2, 1});
    MutationSampler ds(dying);
    RngStream rng(5);
    SimulateOptions opt;
    opt.T_rescaled = 40.0;
    opt.snapshot_times = {20.0, 40.0};
    int fired = 0;
    auto sum = simulate_until(st, dying, ds, rng, opt,
                              [&](int, double, const PopulationState& s) {
                                ++fired;
                                CHECK(s.total_count == 0);
                              });
    CHECK(sum.absorbed);
    CHECK(fired == 2);
    CHECK(sum.n_events == 3);
  }
}

TEST_CASE("supercritical mean growth matches K^t" * doctest::timeout(120)) {
  // Single-type branching: E N(t log K) = N(0) e^{(b-d) t log K} = N(0) K^t.
  const double K = 100.0;
  ModelSpec spec = constant_spec(K, 2, 2.0, 1.0, 0.0);
  MutationSampler sampler(spec);
  const double T = 0.4;
  const int reps = 200;
  std::vector<double> ratios;
  for (int rep = 0; rep < reps; ++rep) {
    PopulationState st = init_state(spec, InitRule::uniform());
    int64_t n0 = st.total_count;
    RngStream rng = derive_stream(2024, StreamPurpose::kTest, 0, rep);
    SimulateOptions opt;
    opt.T_rescaled = T;
    simulate_until(st, spec, sampler, rng, opt,
                   [](int, double, const PopulationState&) {});
    ratios.push_back(static_cast<double>(st.total_count) / n0);
  }
  double target = std::pow(K, T);
  double se = oracle::sd_of(ratios) / std::sqrt(static_cast<double>(reps));
  CHECK(std::fabs(oracle::mean_of(ratios) - target) < 3.0 * se);
}

TEST_CASE("mutant offsets: wraparound landing and kernel marginal" *
          doctest::timeout(120)) {
  // Only site m-1 emits mutants (p vanishes elsewhere, b = d = 0), so every
  // event is a mutation from that site and offsets are iid kernel draws.
  const int m = 8;
  std::vector<double> p_table(m, 0.0);
  p_table[m - 1] = 1.0;
  RateFunctions rates = RateFunctions::tabulated(std::vector<double>(m, 0.0),
                                                 std::vector<double>(m, 0.0), p_table);
  ModelSpec spec(rates, MutationKernel::gaussian(1.0),
                 ScalingParams(1000.0, m, 0.4, 0.5, 0.3, 20.0));
  MutationSampler sampler(spec);
  PopulationState st = init_state(spec, InitRule::uniform());
  RngStream rng(31337);
  SimulateOptions opt;
  opt.T_rescaled = 1e9;  // run to the event budget
  opt.event_budget = 1'000'000;
  std::map<int, int64_t> offset_counts;
  NullLedger ledger;
  auto sum = simulate_until(
      st, spec, sampler, rng, opt, ledger,
      [](int, double, const PopulationState&, NullLedger&) {},
      [&](const EventRecord& ev) {
        REQUIRE(ev.kind == EventKind::kMutantBirth);
        REQUIRE(ev.site == m - 1);
        ++offset_counts[spec.wrap_offset(ev.target_site - ev.site)];
      });
  CHECK(sum.n_events == 1'000'000);

  // chi-square against the offset weights at level 1e-3.
  double total_w = spec.weight_sum();
  double chi2 = 0.0;
  int dof = 0;
  for (int l = spec.l_min(); l <= spec.l_max(); ++l) {
    double expected = 1e6 * spec.offset_weight(l) / total_w;
    REQUIRE(expected > 10.0);  // all m = 8 bins are well populated here
    double observed = static_cast<double>(offset_counts[l]);
    chi2 += (observed - expected) * (observed - expected) / expected;
    ++dof;
  }
  CHECK(chi2 < chi2_quantile(0.999, dof - 1));
}

TEST_CASE("alias table sampling frequencies match weights") {
  ModelSpec spec = constant_spec(2000.0, 32, 2.0, 1.0, 1.0);
  MutationSampler sampler(spec);
  RngStream rng(555);
  std::vector<int64_t> counts(static_cast<size_t>(spec.m()), 0);
  const int64_t draws = 1'000'000;
  for (int64_t i = 0; i < draws; ++i)
    ++counts[static_cast<size_t>(sampler.sample_offset(rng) - spec.l_min())];

  // Merge low-expectation tail bins so the chi-square statistic is valid.
  double chi2 = 0.0;
  int bins = 0;
  double merged_obs = 0.0, merged_exp = 0.0;
  for (int l = spec.l_min(); l <= spec.l_max(); ++l) {
    double expected = draws * sampler.offset_probability(l);
    double observed = static_cast<double>(counts[static_cast<size_t>(l - spec.l_min())]);
    if (expected < 10.0) {
      merged_obs += observed;
      merged_exp += expected;
      continue;
    }
    chi2 += (observed - expected) * (observed - expected) / expected;
    ++bins;
  }
  if (merged_exp > 10.0) {
    chi2 += (merged_obs - merged_exp) * (merged_obs - merged_exp) / merged_exp;
    ++bins;
  }
  CHECK(chi2 < chi2_quantile(0.999, bins - 1));
}

TEST_CASE("rate-cache coherence after a million events" * doctest::timeout(300)) {
  ModelSpec spec = constant_spec(50.0, 8, 2.0, 1.0, 1.0);
  MutationSampler sampler(spec);
  PopulationState st = init_state(spec, InitRule::uniform());
  RngStream rng(77);
  SimulateOptions opt;
  opt.T_rescaled = 1e9;
  opt.event_budget = 1'000'000;
  auto sum =
      simulate_until(st, spec, sampler, rng, opt, [](int, double, const PopulationState&) {});
  CHECK(sum.n_events == 1'000'000);
  CHECK(st.rate_coherence_error() < 1e-9);
}

TEST_CASE("identical seed reproduces the event sequence bit-for-bit") {
  ModelSpec spec = constant_spec(200.0, 8, 2.0, 1.0, 1.0);
  MutationSampler sampler(spec);
  auto run = [&](uint64_t seed) {
    PopulationState st = init_state(spec, InitRule::uniform());
    RngStream rng = derive_stream(seed, StreamPurpose::kReplicate, 0, 0);
    SimulateOptions opt;
    opt.T_rescaled = 1e9;
    opt.event_budget = 50'000;
    std::vector<EventRecord> log;
    NullLedger ledger;
    simulate_until(st, spec, sampler, rng, opt, ledger,
                   [](int, double, const PopulationState&, NullLedger&) {},
                   [&](const EventRecord& ev) { log.push_back(ev); });
    return log;
  };
  auto a = run(42), b = run(42), c = run(43);
  REQUIRE(a.size() == b.size());
  bool identical = true;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].kind != b[i].kind || a[i].site != b[i].site ||
        a[i].target_site != b[i].target_site || a[i].time != b[i].time)
      identical = false;
  }
  CHECK(identical);
  bool differs = c.size() != a.size();
  for (size_t i = 0; !differs && i < a.size(); ++i)
    if (a[i].time != c[i].time) differs = true;
  CHECK(differs);
}

TEST_CASE("branching survival matches the extinction probability" *
          doctest::timeout(300)) {
  // p = 0: each site is an independent linear birth-death chain. From
  // N(0) = ceil(K^{a1}) = 4 with b = 2, d = 1, the extinction probability is
  // (d/b)^4 = 1/16.
  ModelSpec spec = constant_spec(16.0, 2, 2.0, 1.0, 0.0);
  MutationSampler sampler(spec);
  REQUIRE(init_state(spec, InitRule::uniform()).counts[0] == 4);
  const int reps = 3000;
  int extinct = 0;
  for (int rep = 0; rep < reps; ++rep) {
    ModelSpec single = constant_spec(16.0, 2, 2.0, 1.0, 0.0);
    PopulationState st = state_with_counts(single, {4, 0});
    RngStream rng = derive_stream(99, StreamPurpose::kTest, 1, rep);
    SimulateOptions opt;
    opt.T_rescaled = 2.0;
    simulate_until(st, single, sampler, rng, opt,
                   [](int, double, const PopulationState&) {});
    if (st.counts[0] == 0) ++extinct;
  }
  double p_ext = 1.0 / 16.0;
  double sd = std::sqrt(p_ext * (1.0 - p_ext) / reps);
  CHECK(std::fabs(static_cast<double>(extinct) / reps - p_ext) < 4.0 * sd + 1e-3);
}
