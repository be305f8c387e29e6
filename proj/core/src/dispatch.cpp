#include "hopfcole/dispatch.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "hopfcole/csv.hpp"
#include "hopfcole/engine.hpp"
#include "hopfcole/reports.hpp"
#include "hopfcole/rescaled_field.hpp"
#include "hopfcole/version.hpp"

namespace hopfcole {

namespace {

namespace fs = std::filesystem;

std::string hex64(uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const RunConfig& cfg, double wall_seconds,
                    const std::vector<std::string>& outputs) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["seed"] = cfg.seed;
  j["config_hash"] = hex64(config_hash(cfg));
  j["wall_time_s"] = wall_seconds;
  j["outputs"] = outputs;
  std::ofstream out(out_dir / "manifest.json");
  if (!out) throw IoError("cannot write manifest under " + out_dir.string());
  out << j.dump(2) << "\n";
}

fs::path ensure_out_dir(const RunConfig& cfg) {
  fs::path dir = cfg.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::exists(dir)) throw IoError("cannot create output directory: " + dir.string());
  return dir;
}

int run_check(const RunConfig& cfg) {
  Scenario scenario = build_scenario(cfg);
  AssumptionReport report =
      check_assumptions(scenario, cfg.compare.ladder, cfg.compare.hypothesis_A);
  std::cout << render_checks(report.items);

  std::vector<ScalingParams> ladder;
  for (const auto& e : cfg.compare.ladder)
    ladder.push_back(scenario.scaling_for(e.K, e.m));
  auto rows = riemann_report(scenario.kernel, ladder, cfg.compare.riemann_alpha);
  std::cout << "riemann defects (alpha = " << cfg.compare.riemann_alpha << "):\n";
  for (const auto& r : rows)
    std::cout << "  K=" << r.K << " m=" << r.m << " h_K=" << r.h_K
              << " |mass-1|=" << r.mass_defect << " |gbar defect|=" << r.gbar_defect
              << "\n";
  if (cfg.strict_assumptions && !report.all_passed())
    throw ConfigError("assumption check failed under strict mode");

  fs::path out_dir = ensure_out_dir(cfg);
  {
    std::ofstream txt(out_dir / "assumptions.txt");
    txt << render_checks(report.items);
  }
  CsvWriter w(out_dir / "riemann.csv",
              {"K", "m", "h_K", "mass_defect", "gbar_discrete", "gbar_continuum",
               "gbar_defect"});
  for (const auto& r : rows) {
    w.field(r.K).field(r.m).field(r.h_K).field(r.mass_defect).field(r.gbar_discrete)
        .field(r.gbar_continuum).field(r.gbar_defect);
    w.end_row();
  }
  return kExitOk;
}

int run_solve(const RunConfig& cfg) {
  Scenario scenario = build_scenario(cfg);
  HjSolveOptions opt;
  opt.n = cfg.hj.n;
  opt.T = cfg.hj.T;
  opt.snapshot_times = cfg.hj.snapshots;
  opt.cfl = cfg.hj.cfl;
  opt.l_grad = cfg.hj.l_grad;
  opt.manual_dt = cfg.hj.manual_dt;
  HjTrajectory traj = hj_solve(scenario.rates, scenario.kernel, scenario.beta0.fn, opt);

  for (const auto& wmsg : traj.warnings) std::cerr << "warning: " << wmsg << "\n";
  if (cfg.verbosity > 0)
    std::cout << "hj solve: n=" << opt.n << " steps=" << traj.n_steps
              << " theta=" << traj.theta_used << " max_gradient=" << traj.max_gradient
              << " restarts=" << traj.restarts << "\n";

  fs::path out_dir = ensure_out_dir(cfg);
  CsvWriter w(out_dir / "solution.csv", {"t", "x", "beta"});
  auto write_state = [&](double t, const std::vector<double>& values) {
    int n = static_cast<int>(values.size());
    for (int j = 0; j < n; ++j) {
      w.field(t).field(static_cast<double>(j) / n).field(values[static_cast<size_t>(j)]);
      w.end_row();
    }
  };
  for (const auto& snap : traj.snapshots) write_state(snap.t, snap.values);
  if (traj.snapshots.empty() || traj.snapshots.back().t < traj.final_time)
    write_state(traj.final_time, traj.final_values);
  return kExitOk;
}

int run_simulate(const RunConfig& cfg) {
  Scenario scenario = build_scenario(cfg);
  ModelSpec spec = scenario.spec_for(cfg.scaling.K, cfg.scaling.m);
  auto warnings = enforce_checks(spec.check(), cfg.strict_assumptions);
  if (cfg.verbosity > 0)
    for (const auto& wmsg : warnings)
      std::cerr << "warning: " << wmsg.name << ": " << wmsg.message << "\n";

  fs::path out_dir = ensure_out_dir(cfg);
  MutationSampler sampler(spec);

  struct RepResult {
    TrajectorySummary summary;
    double wall_seconds;
    StoppingFlags stopping;
    bool has_stopping;
  };
  std::vector<RepResult> results(static_cast<size_t>(cfg.process.replicates));

  for (int rep = 0; rep < cfg.process.replicates; ++rep) {
    auto t0 = std::chrono::steady_clock::now();
    PopulationState st = init_state(spec, InitRule::profile(scenario.beta0.fn),
                                    cfg.strict_assumptions, nullptr);
    RngStream rng = derive_stream(cfg.seed, StreamPurpose::kReplicate, 0,
                                  static_cast<uint64_t>(rep));
    SimulateOptions opt;
    opt.T_rescaled = cfg.process.T;
    opt.snapshot_times = cfg.process.snapshot_times;
    opt.event_budget = cfg.process.event_budget;

    std::ostringstream counts_name;
    counts_name << "counts_r" << rep << ".csv";
    CsvWriter counts_csv(out_dir / counts_name.str(), {"t_rescaled", "site", "count"});
    auto write_counts = [&](double t, const PopulationState& state) {
      for (int i = 0; i < spec.m(); ++i) {
        counts_csv.field(t).field(i).field(state.counts[static_cast<size_t>(i)]);
        counts_csv.end_row();
      }
    };

    RepResult& out = results[static_cast<size_t>(rep)];
    if (cfg.process.tau_leap) {
      TauLeapControl control{cfg.process.tau_leap_epsilon,
                             cfg.process.tau_leap_fallback_threshold};
      out.summary = simulate_tau_leap(
          st, spec, sampler, rng, opt, control,
          [&](int, double t, const PopulationState& state) { write_counts(t, state); });
      out.has_stopping = false;
    } else {
      DiagnosticsLedger ledger(spec, st);
      std::ostringstream diag_name;
      diag_name << "diagnostics_r" << rep << ".csv";
      CsvWriter diag_csv(out_dir / diag_name.str(),
                         {"t_rescaled", "site", "beta", "A", "M", "QV"});
      auto observer = [&](int, double t, const PopulationState& state,
                          DiagnosticsLedger& led) {
        write_counts(t, state);
        RescaledField field = beta_from_counts(state.counts, spec.K(), t);
        auto A = led.finite_variation();
        auto M = led.martingale(field.beta);
        auto QV = led.quadratic_variation();
        for (int i = 0; i < spec.m(); ++i) {
          size_t si = static_cast<size_t>(i);
          diag_csv.field(t).field(i).field(field.beta[si]).field(A[si]).field(M[si])
              .field(QV[si]);
          diag_csv.end_row();
        }
      };
      out.summary = simulate_until(st, spec, sampler, rng, opt, ledger, observer,
                                   [](const EventRecord&) {});
      out.stopping = ledger.stopping();
      out.has_stopping = true;
    }
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cfg.verbosity > 0)
      std::cout << "replicate " << rep << ": events=" << out.summary.n_events
                << (out.summary.truncated ? " (truncated)" : "")
                << " wall=" << out.wall_seconds << "s\n";
  }

  {
    CsvWriter w(out_dir / "events_summary.csv",
                {"replicate", "n_events", "wall_time_s", "truncated"});
    for (int rep = 0; rep < cfg.process.replicates; ++rep) {
      const auto& r = results[static_cast<size_t>(rep)];
      w.field(rep).field(r.summary.n_events).field(r.wall_seconds)
          .field(static_cast<int64_t>(r.summary.truncated));
      w.end_row();
    }
  }
  if (!cfg.process.tau_leap) {
    CsvWriter w(out_dir / "stopping.csv", {"replicate", "tau_prime", "tau_L", "theta"});
    for (int rep = 0; rep < cfg.process.replicates; ++rep) {
      const auto& r = results[static_cast<size_t>(rep)];
      w.field(rep).field(r.stopping.tau_prime).field(r.stopping.tau_L)
          .field(r.stopping.theta());
      w.end_row();
    }
  }
  return kExitOk;
}

int run_compare(const RunConfig& cfg) {
  ExperimentConfig ecfg = build_experiment(cfg);
  Scenario& scenario = ecfg.scenario;

  AssumptionReport report =
      check_assumptions(scenario, cfg.compare.ladder, cfg.compare.hypothesis_A);
  if (cfg.verbosity > 0) std::cout << render_checks(report.items);
  if (cfg.strict_assumptions && !report.all_passed())
    throw ConfigError("assumption check failed under strict mode");

  ExperimentResult result = run_experiment(ecfg);
  fs::path out_dir = ensure_out_dir(cfg);
  emit_outputs(result, ecfg, out_dir, cfg.plots);
  {
    std::ofstream txt(out_dir / "assumptions.txt");
    txt << render_checks(report.items);
  }
  {
    std::vector<ScalingParams> ladder;
    for (const auto& e : cfg.compare.ladder)
      ladder.push_back(scenario.scaling_for(e.K, e.m));
    auto rows = riemann_report(scenario.kernel, ladder, cfg.compare.riemann_alpha);
    CsvWriter w(out_dir / "riemann.csv",
                {"K", "m", "h_K", "mass_defect", "gbar_discrete", "gbar_continuum",
                 "gbar_defect"});
    for (const auto& r : rows) {
      w.field(r.K).field(r.m).field(r.h_K).field(r.mass_defect).field(r.gbar_discrete)
          .field(r.gbar_continuum).field(r.gbar_defect);
      w.end_row();
    }
  }
  if (cfg.verbosity > 0) {
    for (const auto& s : result.summary)
      std::cout << "K=" << s.K << " t=" << s.t << " median=" << s.median_sup_error
                << " p90=" << s.p90_sup_error << " valid=" << s.n_valid_replicates
                << "\n";
  }
  return kExitOk;
}

}  // namespace

void apply_overrides(RunConfig& cfg, const CliOverrides& ov) {
  if (const char* env = std::getenv("HOPFCOLE_OUT")) cfg.out_dir = env;
  if (ov.out_dir) cfg.out_dir = *ov.out_dir;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.replicates) {
    cfg.process.replicates = *ov.replicates;
    cfg.compare.replicates = *ov.replicates;
  }
  if (ov.snapshot_times) cfg.process.snapshot_times = *ov.snapshot_times;
  if (ov.tau_leap) cfg.process.tau_leap = *ov.tau_leap;
  if (ov.hj_n) cfg.hj.n = *ov.hj_n;
  if (ov.hj_T) cfg.hj.T = *ov.hj_T;
  if (ov.hj_snapshots) cfg.hj.snapshots = *ov.hj_snapshots;
  if (ov.jobs) cfg.compare.jobs = *ov.jobs;
  if (ov.plots) cfg.plots = *ov.plots;
}

int dispatch(const std::string& subcommand, const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  try {
    int code;
    if (subcommand == "check")
      code = run_check(cfg);
    else if (subcommand == "solve")
      code = run_solve(cfg);
    else if (subcommand == "simulate")
      code = run_simulate(cfg);
    else if (subcommand == "compare")
      code = run_compare(cfg);
    else
      throw ConfigError("unknown subcommand: " + subcommand);

    double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(ensure_out_dir(cfg), subcommand, cfg, wall, {});
    return code;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const IoError& e) {
    std::cerr << "i/o failure: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int run_cli(const std::string& subcommand, const std::string& config_path,
            const CliOverrides& overrides) {
  RunConfig cfg;
  try {
    cfg = config_path.empty() ? parse_and_validate_text("{}")
                              : parse_and_validate(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
  apply_overrides(cfg, overrides);
  return dispatch(subcommand, cfg);
}

}  // namespace hopfcole
