#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct CliRun {
  int exit_code = -1;
  fs::path dir;
  std::string out, err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

fs::path fresh_dir() {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() /
                       ("complab_cli_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

// Runs the packaged binary with `args`, pointing --out-dir at a fresh
// directory unless the caller embeds its own.
CliRun run_cli(const std::string& args, bool add_out_dir = true) {
  CliRun r;
  r.dir = fresh_dir();
  std::string cmd = std::string(COMPLAB_CLI_PATH) + " " + args;
  if (add_out_dir) cmd += " --out-dir '" + r.dir.string() + "'";
  cmd += " >'" + (r.dir / "stdout.txt").string() + "' 2>'" + (r.dir / "stderr.txt").string() + "'";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  r.exit_code = WEXITSTATUS(status);
  r.out = slurp(r.dir / "stdout.txt");
  r.err = slurp(r.dir / "stderr.txt");
  return r;
}

ordered_json summary_of(const CliRun& r) {
  return ordered_json::parse(slurp(r.dir / "summary.json"));
}

}  // namespace

TEST_CASE("help is help and garbage is a usage error") {
  CHECK(run_cli("--help", false).exit_code == 0);
  CHECK(run_cli("tasep --help", false).exit_code == 0);
  CHECK(run_cli("verify --help", false).exit_code == 0);

  const CliRun none = run_cli("", false);
  CHECK(none.exit_code == 2);
  const CliRun unknown_sub = run_cli("frobnicate", false);
  CHECK(unknown_sub.exit_code == 2);
  CHECK(unknown_sub.err.find("ERROR:") != std::string::npos);
  const CliRun unknown_flag = run_cli("hydro --bogus 3", false);
  CHECK(unknown_flag.exit_code == 2);
  CHECK(unknown_flag.err.find("ERROR:") != std::string::npos);
}

TEST_CASE("invalid values exit 2 with a diagnostic on stderr") {
  for (const char* args : {"hydro --lambda 1.5", "hydro --rho -0.1", "hydro --grid 1",
                           "grow --box 4", "tasep --observe-at 5,3 --t-max 6 --replicas 2",
                           "tasep --observe-at 0 --t-max 6 --replicas 2"}) {
    const CliRun r = run_cli(args);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("ERROR:") != std::string::npos);
  }
}

TEST_CASE("hydro writes the limit shape and the closed-form laws") {
  const CliRun r = run_cli("hydro --lambda 0.3 --rho 0.7 --grid 51");
  REQUIRE(r.exit_code == 0);

  const std::vector<std::string> shape = lines_of(slurp(r.dir / "shape.csv"));
  REQUIRE(shape.size() == 52);
  CHECK(shape[0] == "r,x,y,u");
  // First grid point is r_lo - 1/2 = -1/2; below the shock the density is
  // lambda.
  CHECK(shape[1].substr(0, 5) == "-0.5,");
  CHECK(shape[1].substr(shape[1].rfind(',') + 1) == "0.29999999999999999");

  const ordered_json s = summary_of(r);
  CHECK(s["pass"] == true);
  CHECK(s.contains("version"));
  CHECK(s.contains("wall_seconds"));
  CHECK(s["config"]["lambda"] == 0.3);
  CHECK(s["results"]["regime"] == "shock");
  CHECK(std::abs(s["results"]["shock_speed"].get<double>()) < 1e-15);
  // lambda rho / ((1-lambda)(1-rho)) = 0.21 / 0.21
  CHECK(s["results"]["tan_alpha_atom"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s["results"]["theta_deg"].get<double>() > 180.0);

  SUBCASE("the rarefaction branch reports the fan and the continuous law") {
    const CliRun fan = run_cli("hydro --lambda 0.8 --rho 0.2 --grid 21");
    REQUIRE(fan.exit_code == 0);
    const ordered_json fs_ = summary_of(fan);
    CHECK(fs_["results"]["regime"] == "rarefaction");
    CHECK(fs_["results"]["fan_interval"][0].get<double>() == doctest::Approx(-0.6));
    CHECK(fs_["results"]["fan_interval"][1].get<double>() == doctest::Approx(0.6));
    CHECK(fs_["results"]["tan_alpha_quantiles"]["p50"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(lines_of(slurp(fan.dir / "shape.csv")).size() == 22);
  }
}

TEST_CASE("grow writes consistent passage, label, and interface tables") {
  const CliRun r = run_cli("grow --lambda 0.6 --rho 0.4 --box 24 --seed 9");
  REQUIRE(r.exit_code == 0);

  const std::vector<std::string> passage = lines_of(slurp(r.dir / "passage.csv"));
  const std::vector<std::string> labels = lines_of(slurp(r.dir / "labels.csv"));
  const std::vector<std::string> phi = lines_of(slurp(r.dir / "phi.csv"));
  CHECK(passage[0] == "x,y,G");
  CHECK(labels[0] == "x,y,sigma");
  CHECK(phi[0] == "n,x,y,G");
  CHECK(labels.size() == 1 + 24 * 24 - 1);
  CHECK(phi.size() == 1 + 24 - 1);

  const ordered_json s = summary_of(r);
  CHECK(s["pass"] == true);
  CHECK(s["results"]["interior_sites"].get<long long>() ==
        static_cast<long long>(passage.size()) - 1);
  CHECK(s["results"]["phi_steps"] == 22);
  CHECK(s["results"]["safe_horizon"].get<double>() > 0.0);
  CHECK(phi[1] == "0,1,1,0");
}

TEST_CASE("compete verifies the inclination atom at the marked corner") {
  const CliRun r = run_cli("compete --lambda 0.3 --rho 0.7 --steps 200 --replicas 30 --seed 4");
  REQUIRE(r.exit_code == 0);

  const std::vector<std::string> csv = lines_of(slurp(r.dir / "inclination.csv"));
  REQUIRE(csv.size() == 31);
  CHECK(csv[0] == "replica,tan_alpha");

  const ordered_json s = summary_of(r);
  CHECK(s["results"]["atom"].get<double>() == doctest::Approx(1.0));
  CHECK(std::abs(s["results"]["mean_tan_alpha"].get<double>() - 1.0) <= 0.1);
  CHECK(s["results"]["pass"] == true);
  CHECK(s["config"]["n_steps"] == 200);
}

TEST_CASE("tasep verifies the marker speed atom in the shock regime") {
  const CliRun r = run_cli("tasep --lambda 0.3 --rho 0.7 --t-max 60 --replicas 240 --seed 11");
  REQUIRE(r.exit_code == 0);

  const std::vector<std::string> csv = lines_of(slurp(r.dir / "samples.csv"));
  REQUIRE(csv.size() == 241);
  CHECK(csv[0] == "replica,t,x,speed");

  const ordered_json s = summary_of(r);
  CHECK(s["results"]["atom"].get<double>() == doctest::Approx(0.0));
  CHECK(std::abs(s["results"]["mean_speed"].get<double>()) <= 0.02);
  CHECK(s["results"]["t"].get<double>() == 60.0);
  CHECK(s["pass"] == true);
}

TEST_CASE("couple runs the exact cross-checks clean at a small horizon") {
  const CliRun r = run_cli("couple --lambda 0.5 --rho 0.5 --t-max 6 --replicas 2 --seed 3");
  REQUIRE(r.exit_code == 0);

  const std::vector<std::string> csv = lines_of(slurp(r.dir / "couple.csv"));
  REQUIRE(csv.size() == 3);
  CHECK(csv[0] ==
        "replica,direct_events,direct_violations,replay_events,replay_violations,"
        "oracle_equal,labels_equal");

  const ordered_json s = summary_of(r);
  CHECK(s["results"]["identity_violations"] == 0);
  CHECK(s["results"]["failed_exact_checks"] == 0);
  CHECK(s["results"]["direct_pair_events"].get<long long>() > 0);
  CHECK(s["results"]["replay_pair_events"].get<long long>() > 0);
  CHECK(s["pass"] == true);
}

TEST_CASE("fluct writes the variance ladder and regression diagnostics") {
  const CliRun r = run_cli(
      "fluct --lambda 0.8 --rho 0.2 --observe-at 4,8,16 --replicas 30 --seed 6");
  REQUIRE(r.exit_code == 0);

  const std::vector<std::string> csv = lines_of(slurp(r.dir / "ladder.csv"));
  REQUIRE(csv.size() == 4);
  CHECK(csv[0] == "t,variance");

  const ordered_json s = summary_of(r);
  CHECK(s["results"].contains("slope"));
  CHECK(s["results"]["points"] == 3);
}

TEST_CASE("a failed statistical gate exits 1 without an error banner") {
  // Two replicas at a tiny horizon cannot meet the 0.02 L1 budget.
  const CliRun r = run_cli(
      "profile --lambda 0.8 --rho 0.2 --t-max 20 --replicas 2 --bin-width 0.1 --seed 8");
  CHECK(r.exit_code == 1);
  CHECK(r.err.empty());

  const ordered_json s = summary_of(r);
  CHECK(s["pass"] == false);
  CHECK(s["results"]["l1"].get<double>() > 0.02);
  CHECK(s["results"]["used_bins"].get<int>() > 0);
  CHECK(lines_of(slurp(r.dir / "density.csv"))[0] == "r,density,particles,sites");
}

TEST_CASE("config files fill in settings and flags override them") {
  const fs::path dir = fresh_dir();
  {
    std::ofstream cfg(dir / "config.json");
    cfg << R"({"lambda": 0.8, "rho": 0.2, "grid": 11})";
  }
  const CliRun r = run_cli("hydro --config '" + (dir / "config.json").string() + "' --grid 21");
  REQUIRE(r.exit_code == 0);
  const ordered_json s = summary_of(r);
  CHECK(s["config"]["lambda"] == 0.8);
  CHECK(s["config"]["grid"] == 21);
  CHECK(lines_of(slurp(r.dir / "shape.csv")).size() == 22);

  SUBCASE("config mistakes are usage errors") {
    {
      std::ofstream cfg(dir / "bad_key.json");
      cfg << R"({"bogus": 1})";
    }
    const CliRun bad = run_cli("hydro --config '" + (dir / "bad_key.json").string() + "'");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("unknown config key: bogus") != std::string::npos);

    {
      std::ofstream cfg(dir / "not_json.json");
      cfg << "грид = 5";
    }
    CHECK(run_cli("hydro --config '" + (dir / "not_json.json").string() + "'").exit_code == 2);
    CHECK(run_cli("hydro --config '" + (dir / "missing.json").string() + "'").exit_code == 2);

    {
      std::ofstream cfg(dir / "bad_type.json");
      cfg << R"({"grid": "many"})";
    }
    CHECK(run_cli("hydro --config '" + (dir / "bad_type.json").string() + "'").exit_code == 2);
  }
}

TEST_CASE("reruns are byte-identical and workers cannot change the data") {
  const std::string args = "tasep --lambda 0.3 --rho 0.7 --t-max 60 --replicas 200 --seed 77";
  const CliRun a = run_cli(args + " --workers 1");
  const CliRun b = run_cli(args + " --workers 1");
  const CliRun c = run_cli(args + " --workers 2");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  REQUIRE(c.exit_code == 0);

  const std::string samples_a = slurp(a.dir / "samples.csv");
  CHECK(samples_a == slurp(b.dir / "samples.csv"));
  CHECK(samples_a == slurp(c.dir / "samples.csv"));

  ordered_json sa = summary_of(a), sb = summary_of(b);
  CHECK(sa["wall_seconds"].is_number());
  sa.erase("wall_seconds");
  sb.erase("wall_seconds");
  sa["config"].erase("out_dir");
  sb["config"].erase("out_dir");
  CHECK(sa == sb);

  SUBCASE("COMPETITION_LAB_WORKERS steers the default worker count") {
    setenv("COMPETITION_LAB_WORKERS", "2", 1);
    const CliRun env_run = run_cli(args);
    unsetenv("COMPETITION_LAB_WORKERS");
    REQUIRE(env_run.exit_code == 0);
    CHECK(slurp(env_run.dir / "samples.csv") == samples_a);

    setenv("COMPETITION_LAB_WORKERS", "nope", 1);
    const CliRun env_bad = run_cli(args);
    unsetenv("COMPETITION_LAB_WORKERS");
    CHECK(env_bad.exit_code == 2);
    CHECK(env_bad.err.find("COMPETITION_LAB_WORKERS") != std::string::npos);
  }
}
