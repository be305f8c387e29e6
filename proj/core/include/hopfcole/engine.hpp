#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hopfcole/ledger.hpp"
#include "hopfcole/mutation_sampler.hpp"
#include "hopfcole/population.hpp"
#include "hopfcole/rng.hpp"

namespace hopfcole {

struct SimulateOptions {
  /// Rescaled horizon; the chain runs to process time T * log K.
  double T_rescaled = 0.0;
  /// Rescaled observer times, ascending, within [0, T].
  std::vector<double> snapshot_times;
  uint64_t event_budget = 5'000'000'000ull;
};

struct TrajectorySummary {
  uint64_t n_events = 0;
  uint64_t n_births = 0, n_deaths = 0, n_mutations = 0;
  bool truncated = false;  // event budget exhausted before the horizon
  bool absorbed = false;   // global extinction reached
  double final_time_rescaled = 0.0;
};

namespace detail {

template <class Sampler>
inline EventRecord draw_kind(const PopulationState& st, const ModelSpec& spec,
                             const Sampler& sampler, RngStream& rng, int site,
                             double residual, double at_time) {
  EventRecord ev;
  ev.site = site;
  ev.time = at_time;
  double n = static_cast<double>(st.counts[static_cast<size_t>(site)]);
  double nb = n * spec.b(site);
  if (residual < nb) {
    ev.kind = EventKind::kClonalBirth;
    return ev;
  }
  double nbd = nb + n * spec.d(site);
  if (residual < nbd) {
    ev.kind = EventKind::kDeath;
    return ev;
  }
  ev.kind = EventKind::kMutantBirth;
  ev.target_site = sampler.sample_target(spec, site, rng);
  return ev;
}

/// Samples the event site, refreshing the rate caches in the (floating-drift)
/// corner case where the cumulative search lands on an empty site.
inline FenwickTree::SampleResult sample_site(PopulationState& st, RngStream& rng) {
  double u = rng.uniform01() * st.total_rate;
  for (;;) {
    auto sr = st.site_rates.sample(u);
    if (st.counts[static_cast<size_t>(sr.site)] > 0) return sr;
    st.refresh_rates();
    u = rng.uniform01() * st.total_rate;
  }
}

}  // namespace detail

/// Waiting time to the next event; requires total_rate > 0.
inline double draw_waiting_time(const PopulationState& st, RngStream& rng) {
  return rng.exponential() / st.total_rate;
}

/// Draws (but does not apply) the next event. Returns nullopt on global
/// extinction (the absorbed signal).
inline std::optional<EventRecord> next_event(PopulationState& st, const ModelSpec& spec,
                                             const MutationSampler& sampler,
                                             RngStream& rng) {
  if (st.total_count == 0) return std::nullopt;
  double dt = draw_waiting_time(st, rng);
  auto sr = detail::sample_site(st, rng);
  return detail::draw_kind(st, spec, sampler, rng, sr.site, sr.residual,
                           st.time + dt);
}

/// Applies an event drawn from this state: count and caches update
/// incrementally, time advances to the event time.
template <class Ledger>
inline void apply_event(PopulationState& st, const ModelSpec& spec,
                        const EventRecord& ev, Ledger& ledger) {
  int affected;
  int64_t delta;
  switch (ev.kind) {
    case EventKind::kClonalBirth:
      affected = ev.site;
      delta = 1;
      break;
    case EventKind::kDeath:
      if (st.counts[static_cast<size_t>(ev.site)] <= 0)
        throw std::logic_error("death event at an empty site");
      affected = ev.site;
      delta = -1;
      break;
    case EventKind::kMutantBirth:
    default:
      affected = ev.target_site;
      delta = 1;
      break;
  }
  st.time = ev.time;
  int64_t old_n = st.counts[static_cast<size_t>(affected)];
  st.bump(affected, delta);
  ledger.on_count_changed(st, spec, affected, old_n, old_n + delta);
}

inline void apply_event(PopulationState& st, const ModelSpec& spec,
                        const EventRecord& ev) {
  NullLedger nl;
  apply_event(st, spec, ev, nl);
}

/// Runs the exact chain to rescaled time T, firing `observer(snapshot_index,
/// t_rescaled, state, ledger)` at the requested times (observers receive the
/// state read-only and must not mutate it) and `sink(event)` after every
/// applied event. The ledger is advanced exactly over each inter-event
/// interval. Rate caches are refreshed at every observation time.
template <class Ledger, class Observer, class Sink>
TrajectorySummary simulate_until(PopulationState& st, const ModelSpec& spec,
                                 const MutationSampler& sampler, RngStream& rng,
                                 const SimulateOptions& opt, Ledger& ledger,
                                 Observer&& observer, Sink&& sink) {
  TrajectorySummary sum;
  const double log_k = spec.log_K();
  const double t_end = opt.T_rescaled * log_k;
  if (opt.T_rescaled < 0.0) throw ConfigError("simulate: T must be nonnegative");
  if (!std::is_sorted(opt.snapshot_times.begin(), opt.snapshot_times.end()))
    throw ConfigError("simulate: snapshot times must be ascending");
  for (double t : opt.snapshot_times)
    if (t < 0.0 || t > opt.T_rescaled)
      throw ConfigError("simulate: snapshot times must lie in [0, T]");

  struct Stop {
    double t_process;
    int snap_idx;  // -1: terminal barrier only
  };
  std::vector<Stop> stops;
  stops.reserve(opt.snapshot_times.size() + 1);
  for (size_t i = 0; i < opt.snapshot_times.size(); ++i)
    stops.push_back({opt.snapshot_times[i] * log_k, static_cast<int>(i)});
  if (stops.empty() || stops.back().t_process < t_end) stops.push_back({t_end, -1});

  // Advances the chain to tstop; returns false if the event budget ran out.
  auto run_to = [&](double tstop) -> bool {
    for (;;) {
      if (st.total_count == 0) {
        // Extinct: rates are zero, integrands are zero; jump to the barrier.
        ledger.advance(st, tstop - st.time);
        st.time = tstop;
        sum.absorbed = true;
        return true;
      }
      double dt = rng.exponential() / st.total_rate;
      if (st.time + dt >= tstop) {
        ledger.advance(st, tstop - st.time);
        st.time = tstop;
        return true;
      }
      ledger.advance(st, dt);
      auto sr = detail::sample_site(st, rng);
      EventRecord ev = detail::draw_kind(st, spec, sampler, rng, sr.site,
                                         sr.residual, st.time + dt);
      switch (ev.kind) {
        case EventKind::kClonalBirth: ++sum.n_births; break;
        case EventKind::kDeath: ++sum.n_deaths; break;
        case EventKind::kMutantBirth: ++sum.n_mutations; break;
      }
      apply_event(st, spec, ev, ledger);
      sink(ev);
      if (++sum.n_events >= opt.event_budget) {
        sum.truncated = true;
        return false;
      }
    }
  };

  for (const Stop& stop : stops) {
    if (stop.t_process > st.time) {
      if (!run_to(stop.t_process)) break;  // truncated: partial trajectory
    }
    if (stop.snap_idx >= 0) {
      st.refresh_rates();
      if constexpr (std::remove_reference_t<Ledger>::enabled)
        ledger.refresh_incoming(st);
      observer(stop.snap_idx, stop.t_process / log_k,
               const_cast<const PopulationState&>(st), ledger);
    }
  }
  sum.final_time_rescaled = st.time / log_k;
  return sum;
}

/// Ledger-free convenience wrapper.
template <class Observer>
TrajectorySummary simulate_until(PopulationState& st, const ModelSpec& spec,
                                 const MutationSampler& sampler, RngStream& rng,
                                 const SimulateOptions& opt, Observer&& observer) {
  NullLedger ledger;
  return simulate_until(st, spec, sampler, rng, opt, ledger,
                        std::forward<Observer>(observer),
                        [](const EventRecord&) {});
}

}  // namespace hopfcole
