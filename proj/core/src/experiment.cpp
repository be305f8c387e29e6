#include "hopfcole/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "hopfcole/csv.hpp"
#include "hopfcole/engine.hpp"
#include "hopfcole/rescaled_field.hpp"
#include "hopfcole/stats.hpp"
#include "hopfcole/svg.hpp"

namespace hopfcole {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Beta0Profile Beta0Profile::constant(double v) {
  std::ostringstream os;
  os << "constant(" << v << ")";
  return {[v](double) { return v; }, 0.0, os.str()};
}

Beta0Profile Beta0Profile::cosine(double base, double amplitude) {
  std::ostringstream os;
  os << "cosine(" << base << ", " << amplitude << ")";
  return {[base, amplitude](double x) { return base + amplitude * std::cos(kTwoPi * x); },
          kTwoPi * std::fabs(amplitude), os.str()};
}

Beta0Profile Beta0Profile::tent(double center, double halfwidth, double peak,
                                double base) {
  if (!(halfwidth > 0.0) || halfwidth > 0.5)
    throw ConfigError("tent profile needs halfwidth in (0, 1/2]");
  double slope = (peak - base) / halfwidth;
  std::ostringstream os;
  os << "tent(center=" << center << ", halfwidth=" << halfwidth << ", peak=" << peak
     << ", base=" << base << ")";
  return {[=](double x) {
            double d = torus_distance(x, center);
            return d < halfwidth ? peak - slope * d : base;
          },
          std::fabs(slope), os.str()};
}

Beta0Profile Beta0Profile::tabulated(std::vector<double> values) {
  if (values.size() < 2) throw ConfigError("tabulated beta0 needs >= 2 values");
  double lip = 0.0;
  size_t n = values.size();
  for (size_t j = 0; j < n; ++j)
    lip = std::max(lip, std::fabs(values[(j + 1) % n] - values[j]) * static_cast<double>(n));
  return {[t = std::move(values)](double x) { return periodic_table_eval(t, x); }, lip,
          "tabulated"};
}

void parallel_for(int n_tasks, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  jobs = std::min(jobs, n_tasks);
  if (jobs <= 1) {
    for (int i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  pool.reserve(static_cast<size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n_tasks) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

struct ReplicateTask {
  int ladder_index;
  int replicate;
};

ReplicateDiagnostics run_replicate(const ExperimentConfig& cfg, const ModelSpec& spec,
                                   const HjTrajectory& reference, int ladder_index,
                                   int replicate, double gbar_L, double bound_C,
                                   std::vector<ConvergenceRow>& rows_out) {
  auto t0 = std::chrono::steady_clock::now();
  const double K = spec.K();
  const int m = spec.m();

  ReplicateDiagnostics diag;
  diag.K = K;
  diag.ladder_index = ladder_index;
  diag.replicate = replicate;
  diag.m = m;

  PopulationState st = init_state(spec, InitRule::profile(cfg.scenario.beta0.fn),
                                  cfg.strict, nullptr);
  DiagnosticsLedger ledger(spec, st);
  MutationSampler sampler(spec);
  RngStream rng = derive_stream(cfg.seed, StreamPurpose::kReplicate,
                                static_cast<uint64_t>(ladder_index),
                                static_cast<uint64_t>(replicate));

  SimulateOptions opt;
  opt.T_rescaled = cfg.T;
  opt.snapshot_times = cfg.times;
  opt.event_budget = cfg.event_budget;

  const int hj_n = reference.snapshots.empty()
                       ? 0
                       : static_cast<int>(reference.snapshots.front().values.size());

  auto observer = [&](int snap_idx, double t, const PopulationState& state,
                      DiagnosticsLedger& led) {
    RescaledField field = beta_from_counts(state.counts, K, t);
    auto A = led.finite_variation();
    auto M = led.martingale(field.beta);
    auto QV = led.quadratic_variation();

    double sup_err = 0.0;
    const auto& ref = reference.snapshots[static_cast<size_t>(snap_idx)].values;
    for (int j = 0; j < hj_n; ++j) {
      double x = static_cast<double>(j) / hj_n;
      sup_err = std::max(sup_err,
                         std::fabs(interpolate(field, x) - ref[static_cast<size_t>(j)]));
    }

    double lip = lipschitz_stat(field.beta, spec.delta());
    bool theta_hit = led.stopping().theta() <= t;

    double doob = 0.0;
    for (int i = 0; i < m; ++i)
      doob = std::max(doob, std::fabs(field.beta[static_cast<size_t>(i)] -
                                      (A[static_cast<size_t>(i)] + M[static_cast<size_t>(i)])));

    auto bound = check_martingale_bound(QV, spec, t, bound_C, gbar_L);

    diag.times.push_back(t);
    diag.doob_residual.push_back(doob);
    diag.max_qv_over_t.push_back(bound.max_qv_over_t);
    // The QV bound and the pairwise ratio bound are only claimed pre-theta.
    bool pre_theta = t <= led.stopping().theta();
    diag.qv_bound_ratio.push_back(pre_theta ? bound.max_ratio_vs_bound : 0.0);
    diag.ratio_excess.push_back(pre_theta ? ratio_bound_excess(state.counts, spec) : 0.0);
    diag.beta.insert(diag.beta.end(), field.beta.begin(), field.beta.end());
    diag.A.insert(diag.A.end(), A.begin(), A.end());
    diag.M.insert(diag.M.end(), M.begin(), M.end());
    diag.QV.insert(diag.QV.end(), QV.begin(), QV.end());

    ConvergenceRow row;
    row.K = K;
    row.replicate = replicate;
    row.t = t;
    row.sup_error = sup_err;
    row.lipschitz_stat = lip;
    row.theta_hit = theta_hit;
    row.truncated = false;
    rows_out.push_back(row);
  };

  TrajectorySummary sum = simulate_until(st, spec, sampler, rng, opt, ledger, observer,
                                         [](const EventRecord&) {});
  diag.truncated = sum.truncated;
  diag.absorbed = sum.absorbed;
  diag.n_events = sum.n_events;
  diag.stopping = ledger.stopping();
  for (auto& row : rows_out) row.truncated = sum.truncated;
  diag.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return diag;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.ladder.empty()) throw ConfigError("compare.ladder must not be empty");
  if (cfg.replicates < 1) throw ConfigError("compare.replicates must be positive");
  if (!std::is_sorted(cfg.times.begin(), cfg.times.end()))
    throw ConfigError("compare.times must be ascending");
  for (double t : cfg.times)
    if (t < 0.0 || t > cfg.T) throw ConfigError("compare.times must lie in [0, T]");

  ExperimentResult result;

  // Shared HJ reference: the limit does not depend on K.
  HjSolveOptions hopt;
  hopt.n = cfg.hj_n;
  hopt.T = cfg.T;
  hopt.snapshot_times = cfg.times;
  hopt.cfl = cfg.hj_cfl;
  hopt.l_grad = cfg.hj_l_grad;
  result.reference =
      hj_solve(cfg.scenario.rates, cfg.scenario.kernel, cfg.scenario.beta0.fn, hopt);

  result.bound_C = cfg.qv_bound_C > 0.0
                       ? cfg.qv_bound_C
                       : cfg.scenario.rates.b_max + cfg.scenario.rates.d_max +
                             cfg.scenario.rates.p_max;
  {
    std::vector<ScalingParams> ladder;
    for (const auto& e : cfg.ladder) ladder.push_back(cfg.scenario.scaling_for(e.K, e.m));
    auto g = gbar(cfg.scenario.kernel, cfg.scenario.L, ladder);
    result.gbar_L = std::max(g.discrete_sup, g.continuum);
  }

  // Specs are immutable and shared across the pool.
  std::vector<ModelSpec> specs;
  specs.reserve(cfg.ladder.size());
  for (const auto& e : cfg.ladder) specs.push_back(cfg.scenario.spec_for(e.K, e.m));

  int n_tasks = static_cast<int>(cfg.ladder.size()) * cfg.replicates;
  std::vector<std::vector<ConvergenceRow>> row_slots(static_cast<size_t>(n_tasks));
  std::vector<ReplicateDiagnostics> diag_slots(static_cast<size_t>(n_tasks));

  parallel_for(n_tasks, cfg.jobs, [&](int task) {
    int ladder_index = task / cfg.replicates;
    int replicate = task % cfg.replicates;
    diag_slots[static_cast<size_t>(task)] = run_replicate(
        cfg, specs[static_cast<size_t>(ladder_index)], result.reference, ladder_index,
        replicate, result.gbar_L, result.bound_C, row_slots[static_cast<size_t>(task)]);
  });

  for (int task = 0; task < n_tasks; ++task) {
    auto& rows = row_slots[static_cast<size_t>(task)];
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    result.diagnostics.push_back(std::move(diag_slots[static_cast<size_t>(task)]));
  }

  // Per (K, t) summaries over non-truncated replicates; theta hits stay in
  // (medians are robust to the outliers they produce).
  for (size_t li = 0; li < cfg.ladder.size(); ++li) {
    double K = cfg.ladder[li].K;
    for (double t : cfg.times) {
      std::vector<double> errs;
      int hits = 0, valid = 0;
      for (const auto& row : result.rows) {
        if (row.K != K || row.t != t || row.truncated) continue;
        ++valid;
        errs.push_back(row.sup_error);
        if (row.theta_hit) ++hits;
      }
      SummaryRow s;
      s.K = K;
      s.t = t;
      s.n_valid_replicates = valid;
      if (valid > 0) {
        s.median_sup_error = median(errs);
        s.p90_sup_error = percentile(errs, 90.0);
        s.theta_hit_fraction = static_cast<double>(hits) / valid;
      }
      result.summary.push_back(s);
    }
  }
  return result;
}

std::vector<std::filesystem::path> emit_outputs(const ExperimentResult& result,
                                                const ExperimentConfig& cfg,
                                                const std::filesystem::path& out_dir,
                                                bool plots) {
  if (result.rows.empty()) throw ConfigError("emit_outputs: empty result set");
  std::vector<std::filesystem::path> written;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (!std::filesystem::exists(out_dir))
    throw IoError("cannot create output directory: " + out_dir.string());

  {
    CsvWriter w(out_dir / "convergence.csv",
                {"K", "replicate", "t", "sup_error", "lipschitz_stat", "theta_hit",
                 "truncated"});
    for (const auto& r : result.rows) {
      w.field(r.K).field(r.replicate).field(r.t).field(r.sup_error)
          .field(r.lipschitz_stat).field(static_cast<int64_t>(r.theta_hit))
          .field(static_cast<int64_t>(r.truncated));
      w.end_row();
    }
    written.push_back(out_dir / "convergence.csv");
  }
  {
    CsvWriter w(out_dir / "summary.csv",
                {"K", "t", "median_sup_error", "p90_sup_error", "theta_hit_fraction",
                 "n_valid_replicates"});
    for (const auto& s : result.summary) {
      w.field(s.K).field(s.t).field(s.median_sup_error).field(s.p90_sup_error)
          .field(s.theta_hit_fraction).field(static_cast<int64_t>(s.n_valid_replicates));
      w.end_row();
    }
    written.push_back(out_dir / "summary.csv");
  }
  {
    CsvWriter w(out_dir / "stopping.csv", {"K", "replicate", "tau_prime", "tau_L", "theta"});
    for (const auto& d : result.diagnostics) {
      w.field(d.K).field(d.replicate).field(d.stopping.tau_prime)
          .field(d.stopping.tau_L).field(d.stopping.theta());
      w.end_row();
    }
    written.push_back(out_dir / "stopping.csv");
  }
  {
    CsvWriter w(out_dir / "qv.csv",
                {"K", "replicate", "t", "max_qv_over_t", "qv_bound_ratio",
                 "doob_residual", "ratio_bound_excess"});
    for (const auto& d : result.diagnostics)
      for (size_t k = 0; k < d.times.size(); ++k) {
        w.field(d.K).field(d.replicate).field(d.times[k]).field(d.max_qv_over_t[k])
            .field(d.qv_bound_ratio[k]).field(d.doob_residual[k])
            .field(d.ratio_excess[k]);
        w.end_row();
      }
    written.push_back(out_dir / "qv.csv");
  }
  {
    auto dir = out_dir / "diagnostics";
    for (const auto& d : result.diagnostics) {
      std::ostringstream name;
      name << "K" << format_double(d.K) << "_r" << d.replicate << ".csv";
      CsvWriter w(dir / name.str(), {"t_rescaled", "site", "beta", "A", "M", "QV"});
      for (size_t k = 0; k < d.times.size(); ++k)
        for (int i = 0; i < d.m; ++i) {
          size_t idx = k * static_cast<size_t>(d.m) + static_cast<size_t>(i);
          w.field(d.times[k]).field(i).field(d.beta[idx]).field(d.A[idx])
              .field(d.M[idx]).field(d.QV[idx]);
          w.end_row();
        }
      written.push_back(dir / name.str());
    }
  }
  {
    // Least-squares slope of log median error against log K, per time.
    CsvWriter w(out_dir / "fit.csv", {"t", "loglog_slope", "n_points"});
    for (double t : cfg.times) {
      std::vector<double> lk, le;
      for (const auto& s : result.summary)
        if (s.t == t && s.median_sup_error > 0.0 && s.n_valid_replicates > 0) {
          lk.push_back(std::log10(s.K));
          le.push_back(std::log10(s.median_sup_error));
        }
      if (lk.size() >= 2) {
        w.field(t).field(ls_slope(lk, le)).field(static_cast<int64_t>(lk.size()));
        w.end_row();
      }
    }
    written.push_back(out_dir / "fit.csv");
  }

  if (plots) {
    {
      SvgPlotSpec spec;
      spec.title = "sup error vs K";
      spec.x_label = "K";
      spec.y_label = "median sup error";
      spec.log_x = true;
      spec.log_y = true;
      std::vector<SvgSeries> series;
      for (double t : cfg.times) {
        if (t == 0.0) continue;
        SvgSeries s;
        std::ostringstream lbl;
        lbl << "t=" << t;
        s.label = lbl.str();
        s.markers = true;
        for (const auto& row : result.summary)
          if (row.t == t && row.median_sup_error > 0.0) {
            s.x.push_back(row.K);
            s.y.push_back(row.median_sup_error);
          }
        if (!s.x.empty()) series.push_back(std::move(s));
      }
      static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
      for (size_t i = 0; i < series.size(); ++i) series[i].color = palette[i % 4];
      if (!series.empty()) {
        write_svg_plot(out_dir / "error_vs_K.svg", spec, series);
        written.push_back(out_dir / "error_vs_K.svg");
      }
    }
    if (!cfg.times.empty() && !result.reference.snapshots.empty()) {
      // Final-time overlay: rescaled field of replicate 0 at the largest K
      // against the HJ solution.
      SvgPlotSpec spec;
      spec.title = "rescaled field vs HJ solution (final time)";
      spec.x_label = "x";
      spec.y_label = "beta";
      std::vector<SvgSeries> series;
      const auto& ref = result.reference.snapshots.back();
      SvgSeries hj;
      hj.label = "HJ";
      hj.color = "#d62728";
      int n = static_cast<int>(ref.values.size());
      for (int j = 0; j < n; ++j) {
        hj.x.push_back(static_cast<double>(j) / n);
        hj.y.push_back(ref.values[static_cast<size_t>(j)]);
      }
      series.push_back(std::move(hj));
      int last_ladder = static_cast<int>(cfg.ladder.size()) - 1;
      for (const auto& d : result.diagnostics) {
        if (d.ladder_index != last_ladder || d.replicate != 0) continue;
        SvgSeries s;
        s.label = "simulated";
        s.color = "#1f77b4";
        size_t k = d.times.size() - 1;
        for (int i = 0; i < d.m; ++i) {
          s.x.push_back(static_cast<double>(i) / d.m);
          s.y.push_back(d.beta[k * static_cast<size_t>(d.m) + static_cast<size_t>(i)]);
        }
        series.push_back(std::move(s));
        break;
      }
      write_svg_plot(out_dir / "final_overlay.svg", spec, series);
      written.push_back(out_dir / "final_overlay.svg");
    }
  }
  return written;
}

}  // namespace hopfcole
