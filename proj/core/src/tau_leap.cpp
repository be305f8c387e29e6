#include "hopfcole/tau_leap.hpp"

#include <algorithm>
#include <cmath>

namespace hopfcole {

namespace {

/// Incoming mutant rate per site, recomputed per leap (O(m^2), leaps are few).
void incoming_rates(const PopulationState& st, const ModelSpec& spec,
                    std::vector<double>& in) {
  int m = spec.m();
  in.assign(static_cast<size_t>(m), 0.0);
  for (int parent = 0; parent < m; ++parent) {
    double n = static_cast<double>(st.counts[static_cast<size_t>(parent)]);
    if (n == 0.0) continue;
    double pp = spec.p(parent);
    for (int l = spec.l_min(); l <= spec.l_max(); ++l) {
      int target = spec.wrap_site(parent + l);
      in[static_cast<size_t>(target)] += n * pp * spec.offset_weight(l);
    }
  }
}

}  // namespace

TrajectorySummary simulate_tau_leap(PopulationState& st, const ModelSpec& spec,
                                    const MutationSampler& sampler, RngStream& rng,
                                    const SimulateOptions& opt,
                                    const TauLeapControl& control,
                                    const TauLeapObserver& observer) {
  if (!(control.epsilon > 0.0)) throw ConfigError("tau-leap epsilon must be positive");
  TrajectorySummary sum;
  const int m = spec.m();
  const double log_k = spec.log_K();
  const double t_end = opt.T_rescaled * log_k;
  if (!std::is_sorted(opt.snapshot_times.begin(), opt.snapshot_times.end()))
    throw ConfigError("simulate: snapshot times must be ascending");

  struct Stop {
    double t_process;
    int snap_idx;
  };
  std::vector<Stop> stops;
  for (size_t i = 0; i < opt.snapshot_times.size(); ++i)
    stops.push_back({opt.snapshot_times[i] * log_k, static_cast<int>(i)});
  if (stops.empty() || stops.back().t_process < t_end) stops.push_back({t_end, -1});

  std::vector<double> in(static_cast<size_t>(m));
  std::vector<int64_t> delta(static_cast<size_t>(m));
  NullLedger null_ledger;

  // Exact stepping within [st.time, tstop) using the same draw sequence as
  // the reference engine, so the all-sites-small fallback reproduces it
  // bit-for-bit.
  auto exact_to = [&](double tstop) -> bool {
    for (;;) {
      if (st.total_count == 0) {
        st.time = tstop;
        sum.absorbed = true;
        return true;
      }
      double dt = rng.exponential() / st.total_rate;
      if (st.time + dt >= tstop) {
        st.time = tstop;
        return true;
      }
      auto sr = detail::sample_site(st, rng);
      EventRecord ev =
          detail::draw_kind(st, spec, sampler, rng, sr.site, sr.residual, st.time + dt);
      apply_event(st, spec, ev, null_ledger);
      if (++sum.n_events >= opt.event_budget) {
        sum.truncated = true;
        return false;
      }
    }
  };

  auto max_count = [&]() {
    int64_t mx = 0;
    for (int64_t c : st.counts) mx = std::max(mx, c);
    return mx;
  };

  auto leap_to = [&](double tstop) -> bool {
    while (st.time < tstop) {
      if (st.total_count == 0) {
        st.time = tstop;
        sum.absorbed = true;
        return true;
      }
      if (max_count() < control.fallback_threshold) return exact_to(tstop);

      incoming_rates(st, spec, in);
      double dt = tstop - st.time;
      for (int i = 0; i < m; ++i) {
        int64_t n = st.counts[static_cast<size_t>(i)];
        if (n < control.fallback_threshold) continue;
        double site_rate = static_cast<double>(n) * st.per_capita[static_cast<size_t>(i)] +
                           in[static_cast<size_t>(i)];
        if (site_rate > 0.0)
          dt = std::min(dt, control.epsilon * static_cast<double>(n) / site_rate);
      }

      for (int halving = 0;; ++halving) {
        if (halving > 60)
          throw NumericalError("tau-leap step rejected repeatedly; dt underflow");
        std::fill(delta.begin(), delta.end(), 0);
        uint64_t draws = 0;
        bool ok = true;

        for (int i = 0; i < m && ok; ++i) {
          int64_t n = st.counts[static_cast<size_t>(i)];
          if (n == 0) continue;
          double dn = static_cast<double>(n);
          if (n >= control.fallback_threshold) {
            int64_t births = poisson(rng, dn * spec.b(i) * dt);
            int64_t deaths = poisson(rng, dn * spec.d(i) * dt);
            delta[static_cast<size_t>(i)] += births - deaths;
            draws += static_cast<uint64_t>(births + deaths);
            // Mutant offspring by Poisson thinning: independent Poisson
            // counts per displacement, summing to Poisson(n p s_K dt).
            double base = dn * spec.p(i) * dt;
            for (int l = spec.l_min(); l <= spec.l_max(); ++l) {
              int64_t k = poisson(rng, base * spec.offset_weight(l));
              if (k > 0) {
                delta[static_cast<size_t>(spec.wrap_site(i + l))] += k;
                draws += static_cast<uint64_t>(k);
              }
            }
          } else {
            // Small site: exact thinned chain over the window with frozen
            // per-capita rates; immigration lands via the delta array.
            double tau = 0.0;
            int64_t local = n;
            while (local > 0) {
              double rate = static_cast<double>(local) * st.per_capita[static_cast<size_t>(i)];
              tau += rng.exponential() / rate;
              if (tau >= dt) break;
              double u = rng.uniform01() * st.per_capita[static_cast<size_t>(i)];
              if (u < spec.b(i)) {
                ++local;
              } else if (u < spec.b(i) + spec.d(i)) {
                --local;
              } else {
                delta[static_cast<size_t>(sampler.sample_target(spec, i, rng))] += 1;
              }
              ++draws;
            }
            delta[static_cast<size_t>(i)] += local - n;
          }
        }

        for (int i = 0; i < m; ++i)
          if (st.counts[static_cast<size_t>(i)] + delta[static_cast<size_t>(i)] < 0)
            ok = false;

        if (ok) {
          for (int i = 0; i < m; ++i)
            if (delta[static_cast<size_t>(i)] != 0) st.bump(i, delta[static_cast<size_t>(i)]);
          st.time += dt;
          sum.n_events += draws;
          if (sum.n_events >= opt.event_budget) {
            sum.truncated = true;
            return false;
          }
          break;
        }
        dt *= 0.5;  // negative-count proposal: reject and halve
      }
    }
    return true;
  };

  for (const Stop& stop : stops) {
    if (stop.t_process > st.time) {
      if (!leap_to(stop.t_process)) break;
    }
    if (stop.snap_idx >= 0) {
      st.refresh_rates();
      if (observer) observer(stop.snap_idx, stop.t_process / log_k, st);
    }
  }
  st.refresh_rates();
  sum.final_time_rescaled = st.time / log_k;
  return sum;
}

}  // namespace hopfcole
