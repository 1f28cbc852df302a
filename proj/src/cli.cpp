#include "complab/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "complab/acceptance.hpp"
#include "complab/experiments.hpp"

namespace complab {

std::string version_string() {
#ifdef COMPLAB_GIT_VERSION
  return COMPLAB_GIT_VERSION;
#else
  return "0.1.0";
#endif
}

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kBoundaryTag = 0xD1310BA698DFB5ACULL;
constexpr std::uint64_t kWeightTag = 0x2FFD72DBD01ADFB7ULL;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Effective settings of one invocation: defaults, then the JSON config file,
// then explicit flags (flags win).
struct RunConfig {
  double lambda = 0.5;
  double rho = 0.5;
  std::uint64_t seed = 1;
  int replicas = 200;
  double t_max = 500.0;
  int n_steps = 200;
  std::vector<double> observe_at;
  double bin_width = 0.05;
  std::string out_dir = ".";
  int workers = 0;
  int box = 100;
  int grid = 201;
  double exclude_lo = 1.0;
  double exclude_hi = -1.0;
};

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const std::exception& ex) {
    throw std::invalid_argument("config file " + path + " is not valid JSON: " + ex.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  static const std::set<std::string> allowed = {
      "lambda",     "rho",     "seed",    "replicas",   "t_max",
      "n_steps",    "observe_at", "bin_width", "out_dir", "workers",
      "box",        "grid",    "exclude_lo", "exclude_hi"};
  for (const auto& item : doc.items()) {
    if (!allowed.count(item.key()))
      throw std::invalid_argument("unknown config key: " + item.key());
  }
  try {
    if (doc.contains("lambda")) cfg.lambda = doc["lambda"].get<double>();
    if (doc.contains("rho")) cfg.rho = doc["rho"].get<double>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("replicas")) cfg.replicas = doc["replicas"].get<int>();
    if (doc.contains("t_max")) cfg.t_max = doc["t_max"].get<double>();
    if (doc.contains("n_steps")) cfg.n_steps = doc["n_steps"].get<int>();
    if (doc.contains("observe_at")) cfg.observe_at = doc["observe_at"].get<std::vector<double>>();
    if (doc.contains("bin_width")) cfg.bin_width = doc["bin_width"].get<double>();
    if (doc.contains("out_dir")) cfg.out_dir = doc["out_dir"].get<std::string>();
    if (doc.contains("workers")) cfg.workers = doc["workers"].get<int>();
    if (doc.contains("box")) cfg.box = doc["box"].get<int>();
    if (doc.contains("grid")) cfg.grid = doc["grid"].get<int>();
    if (doc.contains("exclude_lo")) cfg.exclude_lo = doc["exclude_lo"].get<double>();
    if (doc.contains("exclude_hi")) cfg.exclude_hi = doc["exclude_hi"].get<double>();
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& ex) {
    throw std::invalid_argument(std::string("config value has the wrong type: ") + ex.what());
  }
}

// One record per subcommand: its defaults, the values CLI11 parsed into, and
// the config-file path, resolved into an effective RunConfig after parsing.
struct SubState {
  CLI::App* app = nullptr;
  RunConfig defaults;
  RunConfig parsed;
  std::string config_path;
};

template <typename T>
void take(CLI::App* sub, const char* flag, const T& from, T& to) {
  const CLI::Option* opt = sub->get_option_no_throw(flag);
  if (opt != nullptr && opt->count() > 0) to = from;
}

RunConfig effective_config(SubState& st) {
  RunConfig cfg = st.defaults;
  if (!st.config_path.empty()) apply_config_file(st.config_path, cfg);
  CLI::App* sub = st.app;
  take(sub, "--lambda", st.parsed.lambda, cfg.lambda);
  take(sub, "--rho", st.parsed.rho, cfg.rho);
  take(sub, "--seed", st.parsed.seed, cfg.seed);
  take(sub, "--replicas", st.parsed.replicas, cfg.replicas);
  take(sub, "--t-max", st.parsed.t_max, cfg.t_max);
  take(sub, "--steps", st.parsed.n_steps, cfg.n_steps);
  take(sub, "--observe-at", st.parsed.observe_at, cfg.observe_at);
  take(sub, "--bin-width", st.parsed.bin_width, cfg.bin_width);
  take(sub, "--out-dir", st.parsed.out_dir, cfg.out_dir);
  take(sub, "--workers", st.parsed.workers, cfg.workers);
  take(sub, "--box", st.parsed.box, cfg.box);
  take(sub, "--grid", st.parsed.grid, cfg.grid);
  take(sub, "--exclude-lo", st.parsed.exclude_lo, cfg.exclude_lo);
  take(sub, "--exclude-hi", st.parsed.exclude_hi, cfg.exclude_hi);
  return cfg;
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::invalid_argument("cannot create output directory " + cfg.out_dir + ": " +
                                      ec.message());
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_summary(const fs::path& dir, const ordered_json& config, const ordered_json& results,
                   bool pass, double wall_seconds) {
  ordered_json out;
  out["config"] = config;
  out["version"] = version_string();
  out["wall_seconds"] = wall_seconds;
  out["pass"] = pass;
  out["results"] = results;
  std::ofstream f = open_out(dir / "summary.json");
  f << out.dump(2) << "\n";
}

double wall_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> default_ladder() { return {125.0, 250.0, 500.0, 1000.0, 2000.0}; }

void require_positive_ascending(const std::vector<double>& ts) {
  for (size_t k = 0; k < ts.size(); ++k) {
    if (!(ts[k] > 0.0)) throw std::invalid_argument("observation times must be positive");
    if (k > 0 && ts[k] < ts[k - 1])
      throw std::invalid_argument("observation times must be ascending");
  }
}

int cmd_hydro(const RunConfig& cfg, Clock::time_point t0) {
  const Params params(cfg.lambda, cfg.rho);
  if (cfg.grid < 2) throw std::invalid_argument("grid must be >= 2");
  const fs::path dir = prepare_out_dir(cfg);
  const LimitShape shape(params);
  const InclinationLaw law = inclination_law(params);

  ordered_json results;
  results["theta_deg"] = params.theta_degrees();
  results["regime"] = regime_name(params.regime());
  std::cout << "theta_deg = " << fmt6(params.theta_degrees()) << "\n";
  std::cout << "regime = " << regime_name(params.regime()) << "\n";
  if (params.regime() == Regime::rarefaction) {
    const double lo = 1.0 - 2.0 * params.lambda, hi = 1.0 - 2.0 * params.rho;
    results["fan_interval"] = {lo, hi};
    std::cout << "fan_interval = [" << fmt6(lo) << ", " << fmt6(hi) << "]\n";
  } else if (params.regime() == Regime::shock) {
    const double s = 1.0 - params.lambda - params.rho;
    results["shock_speed"] = s;
    std::cout << "shock_speed = " << fmt6(s) << "\n";
  } else {
    const double s = 1.0 - 2.0 * params.lambda;
    results["characteristic_speed"] = s;
    std::cout << "characteristic_speed = " << fmt6(s) << "\n";
  }
  if (law.is_point_mass) {
    results["tan_alpha_atom"] = law.atom;
    std::cout << "tan_alpha_atom = " << fmt6(law.atom) << "\n";
  } else {
    ordered_json q;
    std::cout << "tan_alpha_quantiles =";
    for (double p : {0.01, 0.25, 0.5, 0.75, 0.99}) {
      const double v = law.quantile(p);
      q[("p" + std::to_string(static_cast<int>(p * 100)))] = v;
      std::cout << " " << fmt6(v);
    }
    std::cout << "\n";
    results["tan_alpha_quantiles"] = q;
  }

  {
    std::ofstream csv = open_out(dir / "shape.csv");
    csv << "r,x,y,u\n";
    const double lo = shape.r_lo() - 0.5, hi = shape.r_hi() + 0.5;
    for (int k = 0; k < cfg.grid; ++k) {
      const double r = lo + (hi - lo) * k / (cfg.grid - 1);
      csv << fmt17(r) << ',' << fmt17(shape.x(r)) << ',' << fmt17(shape.y(r)) << ','
          << fmt17(burgers_u(params, r, 1.0)) << '\n';
    }
  }

  ordered_json config{{"lambda", cfg.lambda}, {"rho", cfg.rho}, {"grid", cfg.grid},
                      {"out_dir", cfg.out_dir}};
  write_summary(dir, config, results, true, wall_since(t0));
  return 0;
}

int cmd_grow(const RunConfig& cfg, Clock::time_point t0) {
  const Params params(cfg.lambda, cfg.rho);
  if (cfg.box < 8) throw std::invalid_argument("box must be >= 8");
  const fs::path dir = prepare_out_dir(cfg);
  const RngSpec rng{cfg.seed};
  const std::uint64_t seed = rng.stream_seed(0);
  Rng boundary_rng(splitmix64_mix(seed ^ kBoundaryTag));
  const InterfaceProfile boundary = sample_initial_interface(params, cfg.box + 2, boundary_rng);
  const PassageField field = compute_passage_times(
      boundary, WeightSource::hashed(splitmix64_mix(seed ^ kWeightTag)), cfg.box);
  const SectorGeometry& geom = field.geometry();

  {
    std::ofstream csv = open_out(dir / "passage.csv");
    csv << "x,y,G\n";
    for (int y = geom.y_min(); y <= cfg.box; ++y)
      for (int x = geom.x_right(y) + 1; x <= cfg.box; ++x)
        csv << x << ',' << y << ',' << fmt17(field.g({x, y})) << '\n';
  }
  const ClusterLabels labels = label_clusters(field);
  {
    std::ofstream csv = open_out(dir / "labels.csv");
    csv << "x,y,sigma\n";
    for (int y = 1; y <= cfg.box; ++y)
      for (int x = 1; x <= cfg.box; ++x) {
        if (x == 1 && y == 1) continue;
        csv << x << ',' << y << ',' << static_cast<int>(labels.at(x, y)) << '\n';
      }
  }
  const CompetitionPath path = trace_competition_interface(field, cfg.box - 2);
  {
    std::ofstream csv = open_out(dir / "phi.csv");
    csv << "n,x,y,G\n";
    for (size_t n = 0; n < path.steps.size(); ++n)
      csv << n << ',' << path.steps[n].x << ',' << path.steps[n].y << ','
          << fmt17(path.event_times[n]) << '\n';
  }

  ordered_json results;
  results["interior_sites"] = field.interior_site_count();
  results["safe_horizon"] = field.safe_horizon();
  results["phi_steps"] = path.steps.size() - 1;
  ordered_json config{{"lambda", cfg.lambda}, {"rho", cfg.rho}, {"seed", cfg.seed},
                      {"box", cfg.box},       {"out_dir", cfg.out_dir}};
  write_summary(dir, config, results, true, wall_since(t0));
  return 0;
}

int cmd_compete(const RunConfig& cfg, Clock::time_point t0) {
  ExperimentSpec spec;
  spec.params = Params(cfg.lambda, cfg.rho);
  spec.kind = ExperimentKind::inclination;
  spec.n_steps = cfg.n_steps;
  spec.replicas = cfg.replicas;
  spec.rng = RngSpec{cfg.seed};
  spec.workers = cfg.workers;
  const fs::path dir = prepare_out_dir(cfg);
  const Ensemble e = run_inclination(spec);
  const std::vector<double> tans = e.column(2);
  {
    std::ofstream csv = open_out(dir / "inclination.csv");
    csv << "replica,tan_alpha\n";
    for (size_t i = 0; i < tans.size(); ++i) csv << i << ',' << fmt17(tans[i]) << '\n';
  }
  double mean = 0.0;
  for (double v : tans) mean += v;
  mean /= static_cast<double>(tans.size());

  const InclinationLaw law = inclination_law(spec.params);
  ordered_json results;
  results["mean_tan_alpha"] = mean;
  bool pass;
  if (law.is_point_mass) {
    results["atom"] = law.atom;
    results["mean_tolerance"] = 0.1;
    pass = std::abs(mean - law.atom) <= 0.1;
  } else {
    const double ks = ks_distance(tans, [&](double v) { return law.cdf(v); });
    results["ks_distance"] = ks;
    results["ks_limit"] = 0.06;
    pass = ks <= 0.06;
  }
  results["pass"] = pass;
  ordered_json config{{"lambda", cfg.lambda},     {"rho", cfg.rho},
                      {"n_steps", cfg.n_steps},   {"replicas", cfg.replicas},
                      {"seed", cfg.seed},         {"workers", cfg.workers},
                      {"out_dir", cfg.out_dir}};
  write_summary(dir, config, results, pass, wall_since(t0));
  return pass ? 0 : 1;
}

int cmd_tasep(const RunConfig& cfg, Clock::time_point t0) {
  ExperimentSpec spec;
  spec.params = Params(cfg.lambda, cfg.rho);
  spec.kind = ExperimentKind::speed;
  spec.t_max = cfg.t_max;
  spec.observe_at = cfg.observe_at;
  spec.replicas = cfg.replicas;
  spec.rng = RngSpec{cfg.seed};
  spec.workers = cfg.workers;
  if (spec.observe_at.empty()) spec.observe_at = {cfg.t_max};
  require_positive_ascending(spec.observe_at);
  const fs::path dir = prepare_out_dir(cfg);
  const Ensemble e = run_marker(spec);
  {
    std::ofstream csv = open_out(dir / "samples.csv");
    csv << "replica,t,x,speed\n";
    for (size_t i = 0; i < e.records.size(); ++i)
      for (size_t k = 0; k < spec.observe_at.size(); ++k) {
        const double x = e.records[i].values[k];
        csv << i << ',' << fmt17(spec.observe_at[k]) << ','
            << static_cast<long long>(x) << ',' << fmt17(x / spec.observe_at[k]) << '\n';
      }
  }
  std::vector<double> speeds = e.column(spec.observe_at.size() - 1);
  for (double& v : speeds) v /= spec.observe_at.back();
  double mean = 0.0;
  for (double v : speeds) mean += v;
  mean /= static_cast<double>(speeds.size());

  const SpeedLaw law = second_class_speed_law(spec.params);
  ordered_json results;
  results["t"] = spec.observe_at.back();
  results["mean_speed"] = mean;
  bool pass;
  if (law.is_point_mass) {
    results["atom"] = law.atom;
    results["mean_tolerance"] = 0.02;
    pass = std::abs(mean - law.atom) <= 0.02;
  } else {
    const double ks = ks_distance(speeds, [&](double v) { return law.cdf(v); });
    results["support"] = {law.lo, law.hi};
    results["ks_distance"] = ks;
    results["ks_limit"] = 0.05;
    pass = ks <= 0.05;
  }
  results["pass"] = pass;
  ordered_json config{{"lambda", cfg.lambda},   {"rho", cfg.rho},
                      {"t_max", cfg.t_max},     {"observe_at", spec.observe_at},
                      {"replicas", cfg.replicas}, {"seed", cfg.seed},
                      {"workers", cfg.workers}, {"out_dir", cfg.out_dir}};
  write_summary(dir, config, results, pass, wall_since(t0));
  return pass ? 0 : 1;
}

int cmd_profile(const RunConfig& cfg, Clock::time_point t0) {
  ExperimentSpec spec;
  spec.params = Params(cfg.lambda, cfg.rho);
  spec.kind = ExperimentKind::profile;
  spec.t_max = cfg.t_max;
  spec.replicas = cfg.replicas;
  spec.bin_width = cfg.bin_width;
  spec.rng = RngSpec{cfg.seed};
  spec.workers = cfg.workers;
  const fs::path dir = prepare_out_dir(cfg);
  const Ensemble e = run_profile(spec);
  {
    std::ofstream csv = open_out(dir / "density.csv");
    csv << "r,density,particles,sites\n";
    for (size_t i = 0; i < e.pooled.size(); ++i)
      csv << fmt17(e.pooled.center(i)) << ',' << fmt17(e.pooled.density(i)) << ','
          << e.pooled.particles[i] << ',' << e.pooled.sites[i] << '\n';
  }
  const Params params = spec.params;
  const ProfileDistance d = profile_l1(
      e.pooled, [&](double r) { return burgers_u(params, r, 1.0); }, cfg.exclude_lo,
      cfg.exclude_hi);
  const bool pass = d.l1 <= 0.02;
  ordered_json results;
  results["l1"] = d.l1;
  results["l1_limit"] = 0.02;
  results["used_bins"] = d.used_bins;
  results["missing_bins"] = d.missing_bins;
  if (cfg.exclude_lo <= cfg.exclude_hi)
    results["excluded_band"] = {cfg.exclude_lo, cfg.exclude_hi};
  results["pooled_replicas"] = e.pooled_replicas;
  results["pass"] = pass;
  ordered_json config{{"lambda", cfg.lambda},   {"rho", cfg.rho},
                      {"t_max", cfg.t_max},     {"replicas", cfg.replicas},
                      {"bin_width", cfg.bin_width}, {"exclude_lo", cfg.exclude_lo},
                      {"exclude_hi", cfg.exclude_hi}, {"seed", cfg.seed},
                      {"workers", cfg.workers}, {"out_dir", cfg.out_dir}};
  write_summary(dir, config, results, pass, wall_since(t0));
  return pass ? 0 : 1;
}

int cmd_fluct(const RunConfig& cfg, Clock::time_point t0) {
  ExperimentSpec spec;
  spec.params = Params(cfg.lambda, cfg.rho);
  spec.kind = ExperimentKind::fluctuation;
  spec.observe_at = cfg.observe_at.empty() ? default_ladder() : cfg.observe_at;
  require_positive_ascending(spec.observe_at);
  spec.t_max = spec.observe_at.back();
  spec.replicas = cfg.replicas;
  spec.rng = RngSpec{cfg.seed};
  spec.workers = cfg.workers;
  const fs::path dir = prepare_out_dir(cfg);
  const Ensemble e = run_marker(spec);
  const VarianceLadder ladder = marker_variance_ladder(e, spec.observe_at);
  const RegressionResult reg = exponent_regression(ladder.times, ladder.variances);
  {
    std::ofstream csv = open_out(dir / "ladder.csv");
    csv << "t,variance\n";
    for (size_t k = 0; k < ladder.times.size(); ++k)
      csv << fmt17(ladder.times[k]) << ',' << fmt17(ladder.variances[k]) << '\n';
  }
  ordered_json results;
  results["slope"] = reg.slope;
  results["intercept"] = reg.intercept;
  results["slope_stderr"] = reg.slope_stderr;
  results["points"] = reg.points;
  bool pass = true;
  if (spec.params.regime() == Regime::stationary) {
    results["slope_window"] = {1.15, 1.55};
    pass = reg.slope >= 1.15 && reg.slope <= 1.55;
  } else if (spec.params.regime() == Regime::shock) {
    results["slope_window"] = {0.85, 1.15};
    pass = reg.slope >= 0.85 && reg.slope <= 1.15;
  }
  results["pass"] = pass;
  ordered_json config{{"lambda", cfg.lambda},   {"rho", cfg.rho},
                      {"observe_at", spec.observe_at}, {"replicas", cfg.replicas},
                      {"seed", cfg.seed},       {"workers", cfg.workers},
                      {"out_dir", cfg.out_dir}};
  write_summary(dir, config, results, pass, wall_since(t0));
  return pass ? 0 : 1;
}

int cmd_couple(const RunConfig& cfg, Clock::time_point t0) {
  ExperimentSpec spec;
  spec.params = Params(cfg.lambda, cfg.rho);
  spec.kind = ExperimentKind::coupling;
  spec.t_max = cfg.t_max;
  spec.replicas = cfg.replicas;
  spec.rng = RngSpec{cfg.seed};
  spec.workers = cfg.workers;
  const fs::path dir = prepare_out_dir(cfg);
  const Ensemble e = run_coupling(spec);
  {
    std::ofstream csv = open_out(dir / "couple.csv");
    csv << "replica,direct_events,direct_violations,replay_events,replay_violations,"
           "oracle_equal,labels_equal\n";
    for (size_t i = 0; i < e.records.size(); ++i) {
      csv << i;
      for (double v : e.records[i].values) csv << ',' << static_cast<long long>(v);
      csv << '\n';
    }
  }
  long long direct_events = 0, replay_events = 0, violations = 0, inexact = 0;
  for (const ReplicaRecord& r : e.records) {
    direct_events += static_cast<long long>(r.values[0]);
    violations += static_cast<long long>(r.values[1]);
    replay_events += static_cast<long long>(r.values[2]);
    violations += static_cast<long long>(r.values[3]);
    inexact += r.values[4] == 1.0 ? 0 : 1;
    inexact += r.values[5] == 1.0 ? 0 : 1;
  }
  const bool pass = violations == 0 && inexact == 0 && direct_events > 0 && replay_events > 0;
  ordered_json results;
  results["direct_pair_events"] = direct_events;
  results["replay_pair_events"] = replay_events;
  results["identity_violations"] = violations;
  results["failed_exact_checks"] = inexact;
  results["pass"] = pass;
  ordered_json config{{"lambda", cfg.lambda},   {"rho", cfg.rho},
                      {"t_max", cfg.t_max},     {"replicas", cfg.replicas},
                      {"seed", cfg.seed},       {"workers", cfg.workers},
                      {"out_dir", cfg.out_dir}};
  write_summary(dir, config, results, pass, wall_since(t0));
  return pass ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, Clock::time_point t0) {
  const fs::path dir = prepare_out_dir(cfg);
  AcceptanceOptions options;
  options.master_seed = cfg.seed;
  options.workers = cfg.workers;
  options.log = &std::cout;
  const AcceptanceReport report = run_acceptance(options);
  ordered_json criteria = ordered_json::array();
  for (const CriterionResult& c : report.criteria) {
    criteria.push_back(ordered_json{{"id", c.id},
                                    {"name", c.name},
                                    {"pass", c.pass},
                                    {"measured", c.measured},
                                    {"limit", c.limit},
                                    {"detail", c.detail},
                                    {"seconds", c.seconds}});
  }
  ordered_json out;
  out["config"] = ordered_json{{"seed", cfg.seed}, {"workers", cfg.workers},
                               {"out_dir", cfg.out_dir}};
  out["version"] = version_string();
  out["wall_seconds"] = wall_since(t0);
  out["pass"] = report.all_pass();
  out["criteria"] = criteria;
  {
    std::ofstream f = open_out(dir / "acceptance.json");
    f << out.dump(2) << "\n";
  }
  std::cout << (report.all_pass() ? "acceptance: PASS" : "acceptance: FAIL") << " ("
            << fmt6(report.total_seconds) << " s)\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"competition-lab: growth, exclusion, and competition-interface experiments"};
  app.require_subcommand(1);

  std::vector<SubState> states(8);
  auto add_common = [](SubState& st, CLI::App* sub) {
    st.app = sub;
    st.parsed = st.defaults;
    sub->add_option("--config", st.config_path, "JSON config file (flags override it)");
    sub->add_option("--out-dir", st.parsed.out_dir, "output directory");
  };
  auto add_params = [](SubState& st) {
    st.app->add_option("--lambda", st.parsed.lambda, "density of the left/upper arm, in (0,1]");
    st.app->add_option("--rho", st.parsed.rho, "density of the right/lower arm, in [0,1)");
  };
  auto add_ensemble = [](SubState& st) {
    st.app->add_option("--seed", st.parsed.seed, "master seed");
    st.app->add_option("--replicas", st.parsed.replicas, "number of replicas");
    st.app->add_option("--workers", st.parsed.workers,
                       "worker threads (0: COMPETITION_LAB_WORKERS or hardware)");
  };

  SubState& hydro = states[0];
  add_common(hydro, app.add_subcommand("hydro", "closed-form laws and the limit shape"));
  add_params(hydro);
  hydro.app->add_option("--grid", hydro.parsed.grid, "number of shape samples");

  SubState& grow = states[1];
  grow.defaults.box = 100;
  add_common(grow, app.add_subcommand("grow", "one growth realization: passage times, labels, "
                                              "competition interface"));
  add_params(grow);
  grow.app->add_option("--seed", grow.parsed.seed, "master seed");
  grow.app->add_option("--box", grow.parsed.box, "box side for the passage-time field");

  SubState& compete = states[2];
  compete.defaults.n_steps = 200;
  add_common(compete, app.add_subcommand("compete", "competition-interface inclination ensemble"));
  add_params(compete);
  add_ensemble(compete);
  compete.app->add_option("--steps", compete.parsed.n_steps, "interface steps per replica");

  SubState& tasep = states[3];
  add_common(tasep, app.add_subcommand("tasep", "second-class particle speed ensemble"));
  add_params(tasep);
  add_ensemble(tasep);
  tasep.app->add_option("--t-max", tasep.parsed.t_max, "simulation horizon");
  tasep.app->add_option("--observe-at", tasep.parsed.observe_at, "observation times")
      ->delimiter(',');

  SubState& profile = states[4];
  profile.defaults.replicas = 50;
  add_common(profile, app.add_subcommand("profile", "pooled density profile vs the entropy "
                                                    "solution"));
  add_params(profile);
  add_ensemble(profile);
  profile.app->add_option("--t-max", profile.parsed.t_max, "simulation horizon");
  profile.app->add_option("--bin-width", profile.parsed.bin_width, "bin width in r = site/t");
  profile.app->add_option("--exclude-lo", profile.parsed.exclude_lo,
                          "left edge of the excluded band of bin centers");
  profile.app->add_option("--exclude-hi", profile.parsed.exclude_hi,
                          "right edge of the excluded band of bin centers");

  SubState& fluct = states[5];
  add_common(fluct, app.add_subcommand("fluct", "marker variance ladder and fluctuation "
                                                "exponent"));
  add_params(fluct);
  add_ensemble(fluct);
  fluct.app->add_option("--observe-at", fluct.parsed.observe_at, "variance ladder times")
      ->delimiter(',');

  SubState& couple = states[6];
  couple.defaults.replicas = 4;
  add_common(couple, app.add_subcommand("couple", "exact coupling checks: pair identity, "
                                                  "labels vs geodesics, dynamics oracle"));
  add_params(couple);
  add_ensemble(couple);
  couple.app->add_option("--t-max", couple.parsed.t_max, "simulation horizon");

  SubState& verify = states[7];
  verify.defaults.seed = 0xC0DE5EEDULL;
  add_common(verify, app.add_subcommand("verify", "full acceptance suite at published scale"));
  verify.app->add_option("--seed", verify.parsed.seed, "master seed");
  verify.app->add_option("--workers", verify.parsed.workers,
                         "worker threads (0: COMPETITION_LAB_WORKERS or hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "ERROR: " << e.what() << "\n";
    return 2;
  }

  const auto t0 = Clock::now();
  try {
    for (size_t k = 0; k < states.size(); ++k) {
      if (states[k].app == nullptr || !states[k].app->parsed()) continue;
      const RunConfig cfg = effective_config(states[k]);
      switch (k) {
        case 0: return cmd_hydro(cfg, t0);
        case 1: return cmd_grow(cfg, t0);
        case 2: return cmd_compete(cfg, t0);
        case 3: return cmd_tasep(cfg, t0);
        case 4: return cmd_profile(cfg, t0);
        case 5: return cmd_fluct(cfg, t0);
        case 6: return cmd_couple(cfg, t0);
        case 7: return cmd_verify(cfg, t0);
      }
    }
    std::cerr << "ERROR: no subcommand selected\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "ERROR: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "ERROR: " << ex.what() << "\n";
    return 1;
  }
}

}  // namespace complab
