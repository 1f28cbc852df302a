#include "complab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

#include "complab/experiments.hpp"

namespace complab {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kBoundaryTag = 0xC0AC29B7C97C50DDULL;
constexpr std::uint64_t kWeightTag = 0x3F84D5B5B5470917ULL;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Harness {
  AcceptanceOptions options;
  AcceptanceReport report;

  RngSpec seed_for(std::uint64_t criterion) const {
    return RngSpec{splitmix64_mix(options.master_seed ^ (criterion * 0x9E3779B97F4A7C15ULL))};
  }

  void add(const std::string& id, const std::string& name, bool pass, double measured,
           double limit, const std::string& detail, double seconds) {
    if (options.log) {
      char head[80];
      std::snprintf(head, sizeof head, "%-4s %-5s %-38s ", id.c_str(),
                    pass ? "PASS" : "FAIL", name.c_str());
      char tail[48];
      std::snprintf(tail, sizeof tail, "  [%.1f s]", seconds);
      *options.log << head << detail << tail << std::endl;
    }
    report.criteria.push_back({id, name, pass, measured, limit, detail, seconds});
  }
};

template <typename Body>
void guarded(Harness& h, const std::string& id, const std::string& name, Body body) {
  const auto t0 = Clock::now();
  try {
    body(t0);
  } catch (const std::exception& ex) {
    h.add(id, name, false, std::numeric_limits<double>::quiet_NaN(), 0.0,
          std::string("error: ") + ex.what(), seconds_since(t0));
  }
}

}  // namespace

AcceptanceReport run_acceptance(const AcceptanceOptions& options) {
  Harness h{options, {}};
  const auto suite_start = Clock::now();
  const std::vector<double> ladder = {125.0, 250.0, 500.0, 1000.0, 2000.0};
  const double t_max = 2000.0;

  guarded(h, "A1", "inclination atom, lambda < rho", [&](Clock::time_point t0) {
    ExperimentSpec spec;
    spec.params = Params(0.2, 0.8);
    spec.kind = ExperimentKind::inclination;
    spec.n_steps = 2000;
    spec.replicas = 500;
    spec.rng = h.seed_for(1);
    spec.workers = options.workers;
    const Ensemble e = run_inclination(spec);
    const double mean = mean_of(e.column(2));
    h.add("A1", "inclination atom, lambda < rho", std::abs(mean - 1.0) <= 0.1, mean, 0.1,
          "mean tan_alpha = " + fmt(mean) + " (want 1 +- 0.1, 500 replicas)",
          seconds_since(t0));
  });

  guarded(h, "A2", "inclination law, lambda > rho", [&](Clock::time_point t0) {
    ExperimentSpec spec;
    spec.params = Params(0.8, 0.2);
    spec.kind = ExperimentKind::inclination;
    spec.n_steps = 2000;
    spec.replicas = 1000;
    spec.rng = h.seed_for(2);
    spec.workers = options.workers;
    const Ensemble e = run_inclination(spec);
    const InclinationLaw law = inclination_law(spec.params);
    const double d = ks_distance(e.column(2), [&](double v) { return law.cdf(v); });
    h.add("A2", "inclination law, lambda > rho", d <= 0.06, d, 0.06,
          "KS distance to pushforward law = " + fmt(d) + " (limit 0.06, 1000 replicas)",
          seconds_since(t0));
  });

  Ensemble shock_fluct;  // (0.3, 0.7) ladder ensemble, shared by A3/A6/A7
  Ensemble rare_speed;   // (0.8, 0.2) speed ensemble, shared by A3/A10

  guarded(h, "A3", "second-class speed laws", [&](Clock::time_point t0) {
    ExperimentSpec shock;
    shock.params = Params(0.3, 0.7);
    shock.kind = ExperimentKind::fluctuation;
    shock.t_max = t_max;
    shock.observe_at = ladder;
    shock.replicas = 2000;
    shock.rng = h.seed_for(3);
    shock.workers = options.workers;
    shock_fluct = run_marker(shock);
    const double mean_speed = mean_of(shock_fluct.column(ladder.size() - 1)) / t_max;

    ExperimentSpec rare;
    rare.params = Params(0.8, 0.2);
    rare.kind = ExperimentKind::speed;
    rare.t_max = t_max;
    rare.replicas = 1000;
    rare.rng = h.seed_for(30);
    rare.workers = options.workers;
    rare_speed = run_marker(rare);
    std::vector<double> speeds = rare_speed.column(0);
    for (double& v : speeds) v /= t_max;
    const SpeedLaw law = second_class_speed_law(rare.params);
    const double d = ks_distance(speeds, [&](double v) { return law.cdf(v); });

    h.add("A3", "second-class speed laws",
          std::abs(mean_speed) <= 0.02 && d <= 0.05, mean_speed, 0.02,
          "shock mean X/t = " + fmt(mean_speed) + " (|.| <= 0.02); rarefaction KS vs Unif[" +
              fmt(law.lo) + "," + fmt(law.hi) + "] = " + fmt(d) + " (<= 0.05)",
          seconds_since(t0));
  });

  guarded(h, "A4", "pair identity X = I - J, both routes", [&](Clock::time_point t0) {
    const Params regimes[3] = {Params(0.3, 0.7), Params(0.5, 0.5), Params(0.8, 0.2)};
    long long violations = 0, direct_events = 0, replay_events = 0;
    for (int k = 0; k < 3; ++k) {
      ExperimentSpec spec;
      spec.params = regimes[k];
      spec.kind = ExperimentKind::coupling;
      spec.t_max = 500.0;
      spec.replicas = 100;
      spec.rng = h.seed_for(40 + static_cast<std::uint64_t>(k));
      spec.workers = options.workers;
      const Ensemble e = run_coupling(spec);
      for (const ReplicaRecord& r : e.records) {
        direct_events += static_cast<long long>(r.values[0]);
        violations += static_cast<long long>(r.values[1]);
        replay_events += static_cast<long long>(r.values[2]);
        violations += static_cast<long long>(r.values[3]);
      }
    }
    const bool pass = violations == 0 && direct_events > 0 && replay_events > 0;
    h.add("A4", "pair identity X = I - J, both routes", pass,
          static_cast<double>(violations), 0.0,
          std::to_string(violations) + " violations over " + std::to_string(direct_events) +
              " direct + " + std::to_string(replay_events) +
              " replayed pair events (300 runs, t <= 500)",
          seconds_since(t0));
  });

  guarded(h, "A5", "cluster labels and growth oracle", [&](Clock::time_point t0) {
    const Params cyc[4] = {Params(0.2, 0.8), Params(0.3, 0.7), Params(0.5, 0.5),
                           Params(0.8, 0.2)};
    const RngSpec rng = h.seed_for(5);
    long long label_mismatch = 0;
    for (int s = 0; s < 20; ++s) {
      const std::uint64_t seed = rng.stream_seed(static_cast<std::uint64_t>(s));
      Rng boundary_rng(splitmix64_mix(seed ^ kBoundaryTag));
      const int box = 300;
      const InterfaceProfile boundary =
          sample_initial_interface(cyc[s % 4], box + 2, boundary_rng);
      const PassageField field = compute_passage_times(
          boundary, WeightSource::hashed(splitmix64_mix(seed ^ kWeightTag)), box);
      const ClusterLabels labels = label_clusters(field);
      for (int y = 1; y <= box; ++y)
        for (int x = 1; x <= box; ++x) {
          if (x == 1 && y == 1) continue;
          if (labels.at(x, y) != backtrack_geodesic(field, {x, y}).origin_side)
            ++label_mismatch;
        }
    }
    long long oracle_mismatch = 0;
    for (int s = 0; s < 100; ++s) {
      const std::uint64_t seed = rng.stream_seed(1000 + static_cast<std::uint64_t>(s));
      Rng oracle_rng(splitmix64_mix(seed ^ kBoundaryTag));
      const int box = 50;
      const InterfaceProfile boundary =
          sample_initial_interface(cyc[s % 4], box + 2, oracle_rng);
      const SectorGeometry geom(boundary);
      const WeightField stored =
          sample_weights(Rect{geom.x_min(), box, geom.y_min(), box}, oracle_rng);
      const PassageField swept =
          compute_passage_times(boundary, WeightSource::stored(stored), box);
      const PassageField grown =
          event_driven_growth(boundary, WeightSource::stored(stored), box);
      for (int y = geom.y_min(); y <= box; ++y)
        for (int x = geom.x_right(y) + 1; x <= box; ++x)
          if (swept.g({x, y}) != grown.g({x, y})) ++oracle_mismatch;
    }
    const bool pass = label_mismatch == 0 && oracle_mismatch == 0;
    h.add("A5", "cluster labels and growth oracle", pass,
          static_cast<double>(label_mismatch + oracle_mismatch), 0.0,
          std::to_string(label_mismatch) + " label mismatches on 20 boxes of 300^2; " +
              std::to_string(oracle_mismatch) +
              " passage-time mismatches on 100 boxes of 50^2",
          seconds_since(t0));
  });

  guarded(h, "A6", "fluctuation exponents", [&](Clock::time_point t0) {
    ExperimentSpec stat;
    stat.params = Params(0.5, 0.5);
    stat.kind = ExperimentKind::fluctuation;
    stat.t_max = t_max;
    stat.observe_at = ladder;
    stat.replicas = 1000;
    stat.rng = h.seed_for(6);
    stat.workers = options.workers;
    const Ensemble stat_fluct = run_marker(stat);
    const VarianceLadder vs = marker_variance_ladder(stat_fluct, ladder);
    const RegressionResult rs = exponent_regression(vs.times, vs.variances);
    const VarianceLadder vh = marker_variance_ladder(shock_fluct, ladder);
    const RegressionResult rh = exponent_regression(vh.times, vh.variances);
    const bool pass =
        rs.slope >= 1.15 && rs.slope <= 1.55 && rh.slope >= 0.85 && rh.slope <= 1.15;
    h.add("A6", "fluctuation exponents", pass, rs.slope, 1.55,
          "stationary slope = " + fmt(rs.slope) + " +- " + fmt(rs.slope_stderr) +
              " (want [1.15,1.55]); shock slope = " + fmt(rh.slope) + " +- " +
              fmt(rh.slope_stderr) + " (want [0.85,1.15])",
          seconds_since(t0));
  });

  guarded(h, "A7", "Gaussian shock fluctuations", [&](Clock::time_point t0) {
    std::vector<double> xs = shock_fluct.column(ladder.size() - 1);
    const double m = mean_of(xs), sd = sample_sd(xs);
    for (double& v : xs) v = (v - m) / sd;
    const NormalityResult nr = normality_check(xs);
    h.add("A7", "Gaussian shock fluctuations", nr.pass, nr.skewness, 0.15,
          "standardized X(2000), 2000 replicas: skew = " + fmt(nr.skewness) +
              " (|.| <= 0.15), excess kurtosis = " + fmt(nr.excess_kurtosis) +
              " (|.| <= 0.3)",
          seconds_since(t0));
  });

  guarded(h, "A8", "hydrodynamic density profiles", [&](Clock::time_point t0) {
    ExperimentSpec rare;
    rare.params = Params(0.8, 0.2);
    rare.kind = ExperimentKind::profile;
    rare.t_max = t_max;
    rare.replicas = 200;
    rare.bin_width = 0.05;
    rare.rng = h.seed_for(8);
    rare.workers = options.workers;
    const Ensemble re = run_profile(rare);
    const ProfileDistance dr = profile_l1(
        re.pooled, [&](double r) { return burgers_u(rare.params, r, 1.0); });

    ExperimentSpec shock;
    shock.params = Params(0.3, 0.7);
    shock.kind = ExperimentKind::profile;
    shock.t_max = t_max;
    shock.replicas = 200;
    shock.bin_width = 0.05;
    shock.rng = h.seed_for(80);
    shock.workers = options.workers;
    const Ensemble se = run_profile(shock);
    const ProfileDistance ds = profile_l1(
        se.pooled, [&](double r) { return burgers_u(shock.params, r, 1.0); }, -0.05, 0.05);

    const bool pass = dr.l1 <= 0.02 && ds.l1 <= 0.02;
    h.add("A8", "hydrodynamic density profiles", pass, dr.l1, 0.02,
          "rarefaction L1 = " + fmt(dr.l1) + " (<= 0.02); shock L1 excluding |r| <= 0.05 = " +
              fmt(ds.l1) + " (<= 0.02); 200 pooled replicas each",
          seconds_since(t0));
  });

  guarded(h, "A9", "shape theorem, quadrant growth", [&](Clock::time_point t0) {
    const int box = static_cast<int>(std::ceil(1.1 * t_max)) + 128;
    const ShapeCheck sc = check_limit_shape(Params(1.0, 0.0), t_max, box, h.seed_for(9));
    const bool pass = sc.sup_distance <= 0.03 && sc.parabola_residual <= 1e-12;
    h.add("A9", "shape theorem, quadrant growth", pass, sc.sup_distance, 0.03,
          "sup distance = " + fmt(sc.sup_distance) + " (<= 0.03); fan parabola residual = " +
              fmt(sc.parabola_residual) + " (<= 1e-12)",
          seconds_since(t0));
  });

  guarded(h, "A10", "psi limit vs speed identity", [&](Clock::time_point t0) {
    const std::vector<double> xs = rare_speed.column(0);
    const std::vector<double> js = rare_speed.column(2);
    double mad = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
      const double u = xs[i] / t_max;
      mad += std::abs(js[i] / t_max - 0.25 * (1.0 - u) * (1.0 - u));
    }
    mad /= static_cast<double>(xs.size());
    h.add("A10", "psi limit vs speed identity", mad <= 0.03, mad, 0.03,
          "MAD of J/t vs (1-X/t)^2/4 = " + fmt(mad) + " (<= 0.03, " +
              std::to_string(xs.size()) + " replicas)",
          seconds_since(t0));
  });

  guarded(h, "A11", "stationary duality", [&](Clock::time_point t0) {
    ExperimentSpec spec;
    spec.params = Params(0.5, 0.5);
    spec.kind = ExperimentKind::duality;
    spec.n_steps = 200;
    spec.backward_from = 1500;
    spec.replicas = 800;
    spec.rng = h.seed_for(11);
    spec.workers = options.workers;
    const DualityOutcome d = run_duality(spec);
    h.add("A11", "stationary duality", d.ks.p_value >= 0.01, d.ks.p_value, 0.01,
          "up-step counts, 800 vs 800: KS D = " + fmt(d.ks.distance) + ", p = " +
              fmt(d.ks.p_value) + " (need >= 0.01); means " +
              fmt(mean_of(d.forward_up_steps)) + " / " + fmt(mean_of(d.backward_up_steps)),
          seconds_since(t0));
  });

  guarded(h, "A12", "law-layer invariants", [&](Clock::time_point t0) {
    double worst = 0.0;
    auto note = [&](double r) { worst = std::max(worst, std::abs(r)); };
    const double eps = 1e-9;

    for (double p : {0.2, 0.5, 0.8}) {
      const Params eq(p, p);
      const SpeedLaw sl = second_class_speed_law(eq);
      note(sl.is_point_mass ? 0.0 : 1.0);
      note(sl.atom - (1.0 - 2.0 * p));
      const InclinationLaw il = inclination_law(eq);
      note(il.is_point_mass ? 0.0 : 1.0);
      note(il.atom - InclinationLaw::g(1.0 - 2.0 * p));
      const Params near(p + eps, p - eps);
      note(second_class_speed_law(near).quantile(0.5) - sl.atom);
      note(inclination_law(near).quantile(0.5) - il.atom);
      for (double r : {-0.9, -0.3, 0.0, 0.4, 0.9})
        note(burgers_u(near, r, 1.0) - burgers_u(eq, r, 1.0));
    }

    const Params shocks[3] = {Params(0.3, 0.7), Params(0.2, 0.6), Params(0.45, 0.55)};
    for (const Params& p : shocks) {
      const double s = 1.0 - p.lambda - p.rho;
      note(p.lambda * (1.0 - p.lambda) - p.rho * (1.0 - p.rho) - s * (p.lambda - p.rho));
      note(burgers_u(p, s - eps, 1.0) - p.lambda);
      note(burgers_u(p, s + eps, 1.0) - p.rho);
    }

    const Params fans[3] = {Params(0.8, 0.2), Params(0.9, 0.1), Params(0.6, 0.4)};
    for (const Params& p : fans) {
      const double r1 = 1.0 - 2.0 * p.lambda, r2 = 1.0 - 2.0 * p.rho;
      note(burgers_u(p, r1 - eps, 1.0) - p.lambda);
      note(burgers_u(p, r1 + eps, 1.0) - p.lambda);
      note(burgers_u(p, r2 - eps, 1.0) - p.rho);
      note(burgers_u(p, r2 + eps, 1.0) - p.rho);
      note(burgers_u(p, 1.0 - p.lambda - p.rho, 1.0) - 0.5 * (p.lambda + p.rho));
    }

    const Params masses[3] = {Params(0.3, 0.7), Params(0.8, 0.2), Params(0.5, 0.5)};
    for (const Params& p : masses) {
      std::vector<double> breaks;
      if (p.regime() == Regime::shock) breaks = {1.0 - p.lambda - p.rho};
      if (p.regime() == Regime::rarefaction)
        breaks = {1.0 - 2.0 * p.lambda, 1.0 - 2.0 * p.rho};
      const double mass = integrate_adaptive(
          [&](double r) { return burgers_u(p, r, 1.0); }, -2.0, 2.0, 1e-10, breaks);
      const double flux_in =
          p.lambda * (1.0 - p.lambda) - p.rho * (1.0 - p.rho);
      note(mass - 2.0 * (p.lambda + p.rho) - flux_in);
    }

    for (const Params& p : fans) {
      const PsiLimitLaw psi = psi_limit_law(p);
      note(psi.is_point_mass ? 1.0 : 0.0);
      for (int k = 1; k < 100; ++k) {
        const double u = psi.u_lo + (psi.u_hi - psi.u_lo) * k / 100.0;
        const std::pair<double, double> ij = PsiLimitLaw::point_for(u);
        note(ij.second / ij.first - InclinationLaw::g(u));
      }
    }
    {
      const Params p(0.2, 0.8);
      const PsiLimitLaw psi = psi_limit_law(p);
      note(psi.is_point_mass ? 0.0 : 1.0);
      note(psi.atom.second / psi.atom.first - inclination_law(p).atom);
    }

    h.add("A12", "law-layer invariants", worst <= 1e-8, worst, 1e-8,
          "worst residual over branch continuity, jump condition, fan endpoints, mass "
          "conservation, psi/inclination ratio = " +
              fmt(worst) + " (<= 1e-8)",
          seconds_since(t0));
  });

  h.report.total_seconds = seconds_since(suite_start);
  return h.report;
}

}  // namespace complab
