#include "hopfcole/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hopfcole/csv.hpp"

namespace hopfcole {

namespace {

using json = nlohmann::ordered_json;

/// Tracks one object node during validation: typed reads with defaults, a
/// running error list with dotted key paths, and unknown-key detection.
class Node {
 public:
  Node(const json* j, std::string path, std::vector<std::string>* errors)
      : j_(j), path_(std::move(path)), errors_(errors) {}

  bool present() const { return j_ != nullptr; }
  bool has(const std::string& k) const { return j_ && j_->contains(k); }

  Node child(const std::string& k) {
    known_.insert(k);
    std::string sub = path_.empty() ? k : path_ + "." + k;
    if (!has(k)) return Node(nullptr, sub, errors_);
    const json& c = (*j_)[k];
    if (!c.is_object()) {
      err(sub + ": expected an object");
      return Node(nullptr, sub, errors_);
    }
    return Node(&c, sub, errors_);
  }

  double number(const std::string& k, double def) {
    known_.insert(k);
    if (!has(k)) return def;
    const json& v = (*j_)[k];
    if (!v.is_number()) {
      err(key_path(k) + ": expected a number");
      return def;
    }
    return v.get<double>();
  }

  int integer(const std::string& k, int def) {
    known_.insert(k);
    if (!has(k)) return def;
    const json& v = (*j_)[k];
    if (!v.is_number_integer()) {
      err(key_path(k) + ": expected an integer");
      return def;
    }
    return v.get<int>();
  }

  uint64_t unsigned64(const std::string& k, uint64_t def) {
    known_.insert(k);
    if (!has(k)) return def;
    const json& v = (*j_)[k];
    if (!v.is_number_unsigned() && !v.is_number_integer()) {
      err(key_path(k) + ": expected a nonnegative integer");
      return def;
    }
    if (v.is_number_integer() && v.get<int64_t>() < 0) {
      err(key_path(k) + ": expected a nonnegative integer");
      return def;
    }
    return v.get<uint64_t>();
  }

  bool boolean(const std::string& k, bool def) {
    known_.insert(k);
    if (!has(k)) return def;
    const json& v = (*j_)[k];
    if (!v.is_boolean()) {
      err(key_path(k) + ": expected a boolean");
      return def;
    }
    return v.get<bool>();
  }

  std::string string(const std::string& k, const std::string& def) {
    known_.insert(k);
    if (!has(k)) return def;
    const json& v = (*j_)[k];
    if (!v.is_string()) {
      err(key_path(k) + ": expected a string");
      return def;
    }
    return v.get<std::string>();
  }

  std::vector<double> number_array(const std::string& k, std::vector<double> def) {
    known_.insert(k);
    if (!has(k)) return def;
    const json& v = (*j_)[k];
    if (!v.is_array()) {
      err(key_path(k) + ": expected an array of numbers");
      return def;
    }
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) {
        err(key_path(k) + ": expected an array of numbers");
        return def;
      }
      out.push_back(e.get<double>());
    }
    return out;
  }

  const json* raw(const std::string& k) {
    known_.insert(k);
    return has(k) ? &(*j_)[k] : nullptr;
  }

  void err(const std::string& msg) { errors_->push_back(msg); }
  std::string key_path(const std::string& k) const {
    return path_.empty() ? k : path_ + "." + k;
  }

  /// Flags keys that are not part of the schema.
  void finish() {
    if (!j_) return;
    for (const auto& item : j_->items())
      if (!known_.count(item.key()))
        errors_->push_back(key_path(item.key()) + ": unknown key");
  }

 private:
  const json* j_;
  std::string path_;
  std::vector<std::string>* errors_;
  std::set<std::string> known_;
};

void require(std::vector<std::string>& errors, bool ok, const std::string& msg) {
  if (!ok) errors.push_back(msg);
}

void check_times(std::vector<std::string>& errors, const std::vector<double>& times,
                 double T, const std::string& key) {
  for (size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1]) {
      errors.push_back(key + ": times must be ascending");
      return;
    }
  for (double t : times)
    if (t < 0.0 || t > T) {
      errors.push_back(key + ": times must lie in [0, T]");
      return;
    }
}

RatePresetConfig read_rate(Node& rates, const std::string& name,
                           const RatePresetConfig& def,
                           std::vector<std::string>& errors) {
  RatePresetConfig out = def;
  Node n = rates.child(name);
  if (!n.present()) return out;
  out.preset = n.string("preset", def.preset);
  out.value = n.number("value", def.value);
  out.base = n.number("base", def.base);
  out.amplitude = n.number("amplitude", def.amplitude);
  out.table_path = n.string("table", def.table_path);
  if (out.preset != "constant" && out.preset != "cosine" && out.preset != "table")
    errors.push_back("model.rates." + name + ".preset: must be constant, cosine or table");
  if (out.preset == "table" && out.table_path.empty())
    errors.push_back("model.rates." + name + ".table: path required for table preset");
  n.finish();
  return out;
}

json rate_to_json(const RatePresetConfig& r) {
  json j;
  j["preset"] = r.preset;
  if (r.preset == "constant") j["value"] = r.value;
  if (r.preset == "cosine") {
    j["base"] = r.base;
    j["amplitude"] = r.amplitude;
  }
  if (r.preset == "table") j["table"] = r.table_path;
  return j;
}

}  // namespace

RunConfig parse_and_validate_text(const std::string& text) {
  json root_json;
  try {
    root_json = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("configuration is not well-formed JSON: ") + e.what());
  }
  if (!root_json.is_object()) throw ConfigError("configuration root must be a JSON object");

  std::vector<std::string> errors;
  RunConfig cfg;
  Node root(&root_json, "", &errors);

  {
    Node model = root.child("model");
    {
      Node kn = model.child("kernel");
      cfg.kernel.type = kn.string("type", cfg.kernel.type);
      cfg.kernel.sigma = kn.number("sigma", cfg.kernel.sigma);
      cfg.kernel.halfwidth = kn.number("halfwidth", cfg.kernel.halfwidth);
      cfg.kernel.table_path = kn.string("table", cfg.kernel.table_path);
      cfg.kernel.tail_radius = kn.number("tail_radius", cfg.kernel.tail_radius);
      if (cfg.kernel.type != "gaussian" && cfg.kernel.type != "bump" &&
          cfg.kernel.type != "table")
        errors.push_back("model.kernel.type: must be gaussian, bump or table");
      if (cfg.kernel.type == "gaussian")
        require(errors, cfg.kernel.sigma > 0.0, "model.kernel.sigma: must be positive");
      if (cfg.kernel.type == "bump")
        require(errors, cfg.kernel.halfwidth > 0.0,
                "model.kernel.halfwidth: must be positive");
      if (cfg.kernel.type == "table") {
        require(errors, !cfg.kernel.table_path.empty(),
                "model.kernel.table: path required for table kernel");
        require(errors, cfg.kernel.tail_radius >= 0.0,
                "model.kernel.tail_radius: must be nonnegative");
      }
      kn.finish();
    }
    {
      Node rates = model.child("rates");
      cfg.rate_b = read_rate(rates, "b", cfg.rate_b, errors);
      cfg.rate_d = read_rate(rates, "d", cfg.rate_d, errors);
      cfg.rate_p = read_rate(rates, "p", cfg.rate_p, errors);
      rates.finish();
    }
    {
      Node sc = model.child("scaling");
      cfg.scaling.K = sc.number("K", cfg.scaling.K);
      bool has_m = sc.has("m"), has_delta = sc.has("delta_K");
      int m = sc.integer("m", cfg.scaling.m);
      double delta = sc.number("delta_K", 0.0);
      if (has_m && has_delta)
        errors.push_back("model.scaling.m: give either m or delta_K, not both");
      if (has_delta && !has_m) {
        double inv = 1.0 / delta;
        double rounded = std::round(inv);
        if (!(delta > 0.0) || std::fabs(inv - rounded) > 1e-9 * std::max(1.0, inv))
          errors.push_back("model.scaling.m: 1/delta_K must be a positive integer (got delta_K = " +
                           format_double(delta) + ")");
        else
          m = static_cast<int>(rounded);
      }
      cfg.scaling.m = m;
      cfg.scaling.a = sc.number("a", cfg.scaling.a);
      cfg.scaling.a1 = sc.number("a1", cfg.scaling.a1);
      cfg.scaling.a2 = sc.number("a2", cfg.scaling.a2);
      cfg.scaling.L = sc.number("L", cfg.scaling.L);
      require(errors, cfg.scaling.K > 1.0, "model.scaling.K: must exceed 1");
      require(errors, cfg.scaling.m >= 1, "model.scaling.m: must be a positive integer");
      require(errors, cfg.scaling.a1 > 0.0, "model.scaling.a1: must be positive");
      require(errors, cfg.scaling.a2 < cfg.scaling.a1,
              "model.scaling.a2: must be below a1");
      require(errors, cfg.scaling.a2 < cfg.scaling.a && cfg.scaling.a < cfg.scaling.a1,
              "model.scaling.a: must lie in (a2, a1)");
      require(errors, cfg.scaling.L > 0.0, "model.scaling.L: must be positive");
      sc.finish();
    }
    model.finish();
  }
  {
    Node b0 = root.child("beta0");
    cfg.beta0.preset = b0.string("preset", cfg.beta0.preset);
    cfg.beta0.value = b0.number("value", cfg.beta0.value);
    cfg.beta0.base = b0.number("base", cfg.beta0.base);
    cfg.beta0.amplitude = b0.number("amplitude", cfg.beta0.amplitude);
    cfg.beta0.center = b0.number("center", cfg.beta0.center);
    cfg.beta0.halfwidth = b0.number("halfwidth", cfg.beta0.halfwidth);
    cfg.beta0.peak = b0.number("peak", cfg.beta0.peak);
    cfg.beta0.table_path = b0.string("table", cfg.beta0.table_path);
    if (cfg.beta0.preset != "constant" && cfg.beta0.preset != "cosine" &&
        cfg.beta0.preset != "tent" && cfg.beta0.preset != "table")
      errors.push_back("beta0.preset: must be constant, cosine, tent or table");
    if (cfg.beta0.preset == "table")
      require(errors, !cfg.beta0.table_path.empty(),
              "beta0.table: path required for table preset");
    b0.finish();
  }
  {
    Node pr = root.child("process");
    cfg.process.T = pr.number("T", cfg.process.T);
    cfg.process.snapshot_times =
        pr.number_array("snapshot_times", cfg.process.snapshot_times);
    cfg.process.replicates = pr.integer("replicates", cfg.process.replicates);
    cfg.process.event_budget = pr.unsigned64("event_budget", cfg.process.event_budget);
    {
      Node tl = pr.child("tau_leap");
      cfg.process.tau_leap = tl.boolean("enabled", cfg.process.tau_leap);
      cfg.process.tau_leap_epsilon = tl.number("epsilon", cfg.process.tau_leap_epsilon);
      cfg.process.tau_leap_fallback_threshold = tl.integer(
          "fallback_threshold", static_cast<int>(cfg.process.tau_leap_fallback_threshold));
      require(errors, cfg.process.tau_leap_epsilon > 0.0,
              "process.tau_leap.epsilon: must be positive");
      require(errors, cfg.process.tau_leap_fallback_threshold >= 0,
              "process.tau_leap.fallback_threshold: must be nonnegative");
      tl.finish();
    }
    require(errors, cfg.process.T >= 0.0, "process.T: must be nonnegative");
    require(errors, cfg.process.replicates >= 1,
            "process.replicates: must be a positive integer");
    require(errors, cfg.process.event_budget > 0, "process.event_budget: must be positive");
    check_times(errors, cfg.process.snapshot_times, cfg.process.T,
                "process.snapshot_times");
    pr.finish();
  }
  {
    Node hj = root.child("hj");
    cfg.hj.n = hj.integer("n", cfg.hj.n);
    cfg.hj.T = hj.number("T", cfg.hj.T);
    cfg.hj.snapshots = hj.number_array("snapshots", cfg.hj.snapshots);
    cfg.hj.cfl = hj.number("cfl", cfg.hj.cfl);
    cfg.hj.l_grad = hj.number("l_grad", cfg.hj.l_grad);
    cfg.hj.manual_dt = hj.number("manual_dt", cfg.hj.manual_dt);
    require(errors, cfg.hj.n >= 2, "hj.n: must be at least 2");
    require(errors, cfg.hj.T >= 0.0, "hj.T: must be nonnegative");
    require(errors, cfg.hj.cfl > 0.0 && cfg.hj.cfl <= 1.0, "hj.cfl: must lie in (0, 1]");
    require(errors, cfg.hj.l_grad >= 0.0, "hj.l_grad: must be nonnegative");
    require(errors, cfg.hj.manual_dt >= 0.0, "hj.manual_dt: must be nonnegative");
    check_times(errors, cfg.hj.snapshots, cfg.hj.T, "hj.snapshots");
    hj.finish();
  }
  {
    Node cp = root.child("compare");
    if (const json* lad = cp.raw("ladder")) {
      cfg.compare.ladder.clear();
      if (!lad->is_array() || lad->empty()) {
        errors.push_back("compare.ladder: expected a nonempty array");
      } else {
        int idx = 0;
        for (const auto& e : *lad) {
          std::string p = "compare.ladder[" + std::to_string(idx++) + "]";
          if (!e.is_object()) {
            errors.push_back(p + ": expected an object {K, m}");
            continue;
          }
          Node en(&e, p, &errors);
          LadderEntry le;
          le.K = en.number("K", 0.0);
          le.m = en.integer("m", 0);
          require(errors, le.K > 1.0, p + ".K: must exceed 1");
          require(errors, le.m >= 1, p + ".m: must be a positive integer");
          en.finish();
          cfg.compare.ladder.push_back(le);
        }
      }
    }
    cfg.compare.replicates = cp.integer("replicates", cfg.compare.replicates);
    cfg.compare.T = cp.number("T", cfg.compare.T);
    cfg.compare.times = cp.number_array("times", cfg.compare.times);
    cfg.compare.hj_n = cp.integer("hj_n", cfg.compare.hj_n);
    cfg.compare.hj_l_grad = cp.number("hj_l_grad", cfg.compare.hj_l_grad);
    cfg.compare.jobs = cp.integer("jobs", cfg.compare.jobs);
    cfg.compare.hypothesis_A = cp.number("hypothesis_A", cfg.compare.hypothesis_A);
    cfg.compare.qv_bound_C = cp.number("qv_bound_C", cfg.compare.qv_bound_C);
    cfg.compare.riemann_alpha = cp.number("riemann_alpha", cfg.compare.riemann_alpha);
    require(errors, cfg.compare.replicates >= 1,
            "compare.replicates: must be a positive integer");
    require(errors, cfg.compare.T >= 0.0, "compare.T: must be nonnegative");
    require(errors, cfg.compare.hj_n >= 2, "compare.hj_n: must be at least 2");
    require(errors, cfg.compare.jobs >= 0, "compare.jobs: must be nonnegative");
    require(errors, cfg.compare.hypothesis_A > 0.0,
            "compare.hypothesis_A: must be positive");
    require(errors, cfg.compare.qv_bound_C >= 0.0,
            "compare.qv_bound_C: must be nonnegative");
    check_times(errors, cfg.compare.times, cfg.compare.T, "compare.times");
    cp.finish();
  }
  cfg.seed = root.unsigned64("seed", cfg.seed);
  {
    Node out = root.child("output");
    cfg.out_dir = out.string("dir", cfg.out_dir);
    cfg.plots = out.boolean("plots", cfg.plots);
    out.finish();
  }
  cfg.strict_assumptions = root.boolean("strict_assumptions", cfg.strict_assumptions);
  cfg.verbosity = root.integer("verbosity", cfg.verbosity);
  require(errors, cfg.verbosity >= 0 && cfg.verbosity <= 3,
          "verbosity: must lie in 0..3");
  root.finish();

  if (!errors.empty()) {
    std::ostringstream os;
    os << "configuration invalid (" << errors.size() << " issue"
       << (errors.size() > 1 ? "s" : "") << "):";
    for (const auto& e : errors) os << "\n  - " << e;
    throw ConfigError(os.str());
  }
  return cfg;
}

RunConfig parse_and_validate(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_and_validate_text(buf.str());
}

std::string emit_config(const RunConfig& cfg) {
  json j;
  json kernel;
  kernel["type"] = cfg.kernel.type;
  if (cfg.kernel.type == "gaussian") kernel["sigma"] = cfg.kernel.sigma;
  if (cfg.kernel.type == "bump") kernel["halfwidth"] = cfg.kernel.halfwidth;
  if (cfg.kernel.type == "table") {
    kernel["table"] = cfg.kernel.table_path;
    kernel["tail_radius"] = cfg.kernel.tail_radius;
  }
  json rates;
  rates["b"] = rate_to_json(cfg.rate_b);
  rates["d"] = rate_to_json(cfg.rate_d);
  rates["p"] = rate_to_json(cfg.rate_p);
  json scaling;
  scaling["K"] = cfg.scaling.K;
  scaling["m"] = cfg.scaling.m;
  scaling["a"] = cfg.scaling.a;
  scaling["a1"] = cfg.scaling.a1;
  scaling["a2"] = cfg.scaling.a2;
  scaling["L"] = cfg.scaling.L;
  j["model"] = {{"kernel", kernel}, {"rates", rates}, {"scaling", scaling}};

  json b0;
  b0["preset"] = cfg.beta0.preset;
  if (cfg.beta0.preset == "constant") b0["value"] = cfg.beta0.value;
  if (cfg.beta0.preset == "cosine") {
    b0["base"] = cfg.beta0.base;
    b0["amplitude"] = cfg.beta0.amplitude;
  }
  if (cfg.beta0.preset == "tent") {
    b0["center"] = cfg.beta0.center;
    b0["halfwidth"] = cfg.beta0.halfwidth;
    b0["peak"] = cfg.beta0.peak;
    b0["base"] = cfg.beta0.base;
  }
  if (cfg.beta0.preset == "table") b0["table"] = cfg.beta0.table_path;
  j["beta0"] = b0;

  j["process"] = {{"T", cfg.process.T},
                  {"snapshot_times", cfg.process.snapshot_times},
                  {"replicates", cfg.process.replicates},
                  {"event_budget", cfg.process.event_budget},
                  {"tau_leap",
                   {{"enabled", cfg.process.tau_leap},
                    {"epsilon", cfg.process.tau_leap_epsilon},
                    {"fallback_threshold", cfg.process.tau_leap_fallback_threshold}}}};
  j["hj"] = {{"n", cfg.hj.n},
             {"T", cfg.hj.T},
             {"snapshots", cfg.hj.snapshots},
             {"cfl", cfg.hj.cfl},
             {"l_grad", cfg.hj.l_grad},
             {"manual_dt", cfg.hj.manual_dt}};
  json ladder = json::array();
  for (const auto& e : cfg.compare.ladder) ladder.push_back({{"K", e.K}, {"m", e.m}});
  j["compare"] = {{"ladder", ladder},
                  {"replicates", cfg.compare.replicates},
                  {"T", cfg.compare.T},
                  {"times", cfg.compare.times},
                  {"hj_n", cfg.compare.hj_n},
                  {"hj_l_grad", cfg.compare.hj_l_grad},
                  {"jobs", cfg.compare.jobs},
                  {"hypothesis_A", cfg.compare.hypothesis_A},
                  {"qv_bound_C", cfg.compare.qv_bound_C},
                  {"riemann_alpha", cfg.compare.riemann_alpha}};
  j["seed"] = cfg.seed;
  j["output"] = {{"dir", cfg.out_dir}, {"plots", cfg.plots}};
  j["strict_assumptions"] = cfg.strict_assumptions;
  j["verbosity"] = cfg.verbosity;
  return j.dump(2) + "\n";
}

uint64_t config_hash(const RunConfig& cfg) {
  std::string text = emit_config(cfg);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

MutationKernel build_kernel(const KernelConfig& cfg) {
  if (cfg.type == "gaussian") return MutationKernel::gaussian(cfg.sigma);
  if (cfg.type == "bump") return MutationKernel::bump(cfg.halfwidth);
  auto nodes = read_csv_column(cfg.table_path, "h");
  auto values = read_csv_column(cfg.table_path, "g");
  return MutationKernel::tabulated(std::move(nodes), std::move(values), cfg.tail_radius);
}

namespace {
std::vector<double> load_table(const std::string& path) {
  return read_csv_column(path, "value");
}
}  // namespace

RateFunctions build_rates(const RatePresetConfig& b, const RatePresetConfig& d,
                          const RatePresetConfig& p) {
  // Mixed presets are composed via tabulated sampling when any rate is a
  // table; otherwise the closed forms are kept.
  bool any_table = b.preset == "table" || d.preset == "table" || p.preset == "table";
  auto fn = [](const RatePresetConfig& r) -> std::function<double(double)> {
    if (r.preset == "constant") return [v = r.value](double) { return v; };
    if (r.preset == "cosine")
      return [base = r.base, amp = r.amplitude](double x) {
        return base + amp * std::cos(6.283185307179586 * x);
      };
    return [t = load_table(r.table_path)](double x) { return periodic_table_eval(t, x); };
  };
  if (!any_table && b.preset == "constant" && d.preset == "constant" &&
      p.preset == "constant")
    return RateFunctions::constants(b.value, d.value, p.value);

  RateFunctions out;
  out.b = fn(b);
  out.d = fn(d);
  out.p = fn(p);
  auto fill = [](const RatePresetConfig& r, const std::function<double(double)>& f,
                 double& lip, double& vmax, double* vmin) {
    if (r.preset == "constant") {
      lip = 0.0;
      vmax = r.value;
      if (vmin) *vmin = r.value;
      return;
    }
    if (r.preset == "cosine") {
      lip = 6.283185307179586 * std::fabs(r.amplitude);
      vmax = r.base + std::fabs(r.amplitude);
      if (vmin) *vmin = r.base - std::fabs(r.amplitude);
      return;
    }
    // Tabulated: exact bounds and slope of the piecewise-linear interpolant.
    auto t = load_table(r.table_path);
    size_t n = t.size();
    lip = 0.0;
    vmax = t[0];
    double lo = t[0];
    for (size_t i = 0; i < n; ++i) {
      vmax = std::max(vmax, t[i]);
      lo = std::min(lo, t[i]);
      lip = std::max(lip, std::fabs(t[(i + 1) % n] - t[i]) * static_cast<double>(n));
    }
    if (vmin) *vmin = lo;
  };
  fill(b, out.b, out.lip_b, out.b_max, nullptr);
  fill(d, out.d, out.lip_d, out.d_max, nullptr);
  fill(p, out.p, out.lip_p, out.p_max, &out.p_min);
  out.description = "configured";
  return out;
}

Beta0Profile build_beta0(const Beta0Config& cfg) {
  if (cfg.preset == "constant") return Beta0Profile::constant(cfg.value);
  if (cfg.preset == "cosine") return Beta0Profile::cosine(cfg.base, cfg.amplitude);
  if (cfg.preset == "tent")
    return Beta0Profile::tent(cfg.center, cfg.halfwidth, cfg.peak, cfg.base);
  return Beta0Profile::tabulated(load_table(cfg.table_path));
}

Scenario build_scenario(const RunConfig& cfg) {
  Scenario s;
  s.rates = build_rates(cfg.rate_b, cfg.rate_d, cfg.rate_p);
  s.kernel = build_kernel(cfg.kernel);
  s.a = cfg.scaling.a;
  s.a1 = cfg.scaling.a1;
  s.a2 = cfg.scaling.a2;
  s.L = cfg.scaling.L;
  s.beta0 = build_beta0(cfg.beta0);
  return s;
}

ModelSpec build_model_spec(const RunConfig& cfg) {
  Scenario s = build_scenario(cfg);
  return s.spec_for(cfg.scaling.K, cfg.scaling.m);
}

ExperimentConfig build_experiment(const RunConfig& cfg) {
  ExperimentConfig e;
  e.scenario = build_scenario(cfg);
  e.ladder = cfg.compare.ladder;
  e.replicates = cfg.compare.replicates;
  e.T = cfg.compare.T;
  e.times = cfg.compare.times;
  e.hj_n = cfg.compare.hj_n;
  e.hj_cfl = cfg.hj.cfl;
  e.hj_l_grad = cfg.compare.hj_l_grad;
  e.seed = cfg.seed;
  e.jobs = cfg.compare.jobs;
  e.event_budget = cfg.process.event_budget;
  e.strict = cfg.strict_assumptions;
  e.qv_bound_C = cfg.compare.qv_bound_C;
  return e;
}

}  // namespace hopfcole
