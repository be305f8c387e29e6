#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hopfcole/dispatch.hpp"
#include "hopfcole/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"trait-structured birth-death-mutation simulator and Hamilton-Jacobi toolkit"};
  app.set_version_flag("--version", hopfcole::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  hopfcole::CliOverrides ov;
  std::string out_dir;
  uint64_t seed = 0;
  int replicates = 0;
  int jobs = 0;
  int hj_n = 0;
  double hj_T = -1.0;
  std::vector<double> snapshot_times, hj_snapshots;
  bool tau_leap = false, exact = false, plots = false;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run-configuration file (JSON)")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides HOPFCOLE_OUT and config)");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "run stochastic replicates");
  add_config(simulate);
  simulate->add_option("--seed", seed, "master seed");
  simulate->add_option("--replicates", replicates, "number of replicates");
  simulate->add_option("--snapshot-times", snapshot_times,
                       "comma list of rescaled snapshot times")
      ->delimiter(',');
  simulate->add_flag("--tau-leap", tau_leap, "use the approximate tau-leap stepper");
  simulate->add_flag("--exact", exact, "use the exact event-driven chain (default)");

  CLI::App* solve = app.add_subcommand("solve", "solve the limiting Hamilton-Jacobi equation");
  add_config(solve);
  solve->add_option("--n", hj_n, "grid resolution");
  solve->add_option("--T", hj_T, "time horizon");
  solve->add_option("--snapshots", hj_snapshots, "comma list of snapshot times")
      ->delimiter(',');

  CLI::App* compare = app.add_subcommand(
      "compare", "simulate a K-ladder and compare against the HJ solution");
  add_config(compare);
  compare->add_option("--seed", seed, "master seed");
  compare->add_option("--jobs", jobs, "worker threads (0: hardware concurrency)");
  compare->add_flag("--plots", plots, "also write SVG plots");

  CLI::App* check = app.add_subcommand("check", "evaluate model assumptions");
  add_config(check);

  CLI11_PARSE(app, argc, argv);

  if (!out_dir.empty()) ov.out_dir = out_dir;
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (sub->get_option_no_throw("--seed") && sub->count("--seed")) ov.seed = seed;
  if (name == "simulate") {
    if (simulate->count("--replicates")) ov.replicates = replicates;
    if (simulate->count("--snapshot-times")) ov.snapshot_times = snapshot_times;
    if (tau_leap && exact) {
      std::fprintf(stderr, "configuration error: --tau-leap and --exact conflict\n");
      return hopfcole::kExitConfig;
    }
    if (tau_leap) ov.tau_leap = true;
    if (exact) ov.tau_leap = false;
  } else if (name == "solve") {
    if (solve->count("--n")) ov.hj_n = hj_n;
    if (solve->count("--T")) ov.hj_T = hj_T;
    if (solve->count("--snapshots")) ov.hj_snapshots = hj_snapshots;
  } else if (name == "compare") {
    if (compare->count("--jobs")) ov.jobs = jobs;
    if (plots) ov.plots = true;
  }

  return hopfcole::run_cli(name, config_path, ov);
}
