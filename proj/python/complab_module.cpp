#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "complab/cli.hpp"
#include "complab/experiments.hpp"

namespace py = pybind11;

namespace {

using namespace complab;

ExperimentSpec base_spec(double lam, double rho, std::uint64_t seed, int replicas, int workers) {
  ExperimentSpec spec;
  spec.params = Params(lam, rho);
  spec.rng = RngSpec{seed};
  spec.replicas = replicas;
  spec.workers = workers;
  return spec;
}

std::vector<double> sample_inclination(double lam, double rho, int n_steps, int replicas,
                                       std::uint64_t seed, int workers) {
  ExperimentSpec spec = base_spec(lam, rho, seed, replicas, workers);
  spec.kind = ExperimentKind::inclination;
  spec.n_steps = n_steps;
  return run_inclination(spec).column(2);
}

std::vector<double> sample_marker(double lam, double rho, double t_max, int replicas,
                                  std::uint64_t seed, int workers) {
  ExperimentSpec spec = base_spec(lam, rho, seed, replicas, workers);
  spec.kind = ExperimentKind::speed;
  spec.t_max = t_max;
  return run_marker(spec).column(0);
}

std::vector<std::tuple<double, long long, long long, long long>> marker_trajectory(
    double lam, double rho, double t_max, const std::vector<double>& observe_at,
    std::uint64_t seed) {
  SecondClassOptions options;
  options.t_max = t_max;
  options.observe_at = observe_at;
  Rng rng(seed);
  const TasepTrajectory traj = simulate_second_class(Params(lam, rho), options, rng);
  std::vector<std::tuple<double, long long, long long, long long>> out;
  out.reserve(traj.samples.size());
  for (const TrajectorySample& s : traj.samples)
    out.emplace_back(s.time, s.x, s.label_i, s.label_j);
  return out;
}

std::vector<std::pair<double, double>> pooled_density(double lam, double rho, double t_max,
                                                      int replicas, double bin_width,
                                                      std::uint64_t seed, int workers) {
  ExperimentSpec spec = base_spec(lam, rho, seed, replicas, workers);
  spec.kind = ExperimentKind::profile;
  spec.t_max = t_max;
  spec.bin_width = bin_width;
  const Ensemble e = run_profile(spec);
  std::vector<std::pair<double, double>> out;
  out.reserve(e.pooled.size());
  for (size_t i = 0; i < e.pooled.size(); ++i)
    out.emplace_back(e.pooled.center(i), e.pooled.density(i));
  return out;
}

std::map<std::string, long long> coupling_totals(double lam, double rho, double t_max,
                                                 int replicas, std::uint64_t seed, int workers) {
  ExperimentSpec spec = base_spec(lam, rho, seed, replicas, workers);
  spec.kind = ExperimentKind::coupling;
  spec.t_max = t_max;
  const Ensemble e = run_coupling(spec);
  std::map<std::string, long long> out{{"direct_events", 0},
                                       {"direct_violations", 0},
                                       {"replay_events", 0},
                                       {"replay_violations", 0},
                                       {"failed_exact_checks", 0}};
  for (const ReplicaRecord& r : e.records) {
    out["direct_events"] += static_cast<long long>(r.values[0]);
    out["direct_violations"] += static_cast<long long>(r.values[1]);
    out["replay_events"] += static_cast<long long>(r.values[2]);
    out["replay_violations"] += static_cast<long long>(r.values[3]);
    out["failed_exact_checks"] += (r.values[4] == 1.0 ? 0 : 1) + (r.values[5] == 1.0 ? 0 : 1);
  }
  return out;
}

std::vector<std::tuple<int, int, double>> passage_times(double lam, double rho, int box,
                                                        std::uint64_t seed) {
  const RngSpec rng{seed};
  Rng boundary_rng(rng.stream_seed(0));
  const InterfaceProfile boundary = sample_initial_interface(Params(lam, rho), box + 2,
                                                             boundary_rng);
  const PassageField field =
      compute_passage_times(boundary, WeightSource::hashed(rng.stream_seed(1)), box);
  const SectorGeometry& geom = field.geometry();
  std::vector<std::tuple<int, int, double>> out;
  for (int y = geom.y_min(); y <= box; ++y)
    for (int x = geom.x_right(y) + 1; x <= box; ++x) out.emplace_back(x, y, field.g({x, y}));
  return out;
}

std::vector<std::pair<int, int>> growth_interface(double lam, double rho, int box,
                                                  std::uint64_t seed, double t) {
  const RngSpec rng{seed};
  Rng boundary_rng(rng.stream_seed(0));
  const InterfaceProfile boundary = sample_initial_interface(Params(lam, rho), box + 2,
                                                             boundary_rng);
  const PassageField field =
      compute_passage_times(boundary, WeightSource::hashed(rng.stream_seed(1)), box);
  const InterfaceProfile grown = growth_interface_at(field, t);
  std::vector<std::pair<int, int>> out;
  out.reserve(grown.points().size());
  for (const Site& p : grown.points()) out.emplace_back(p.x, p.y);
  return out;
}

py::dict law_dict(double lam, double rho, bool inclination) {
  const Params params(lam, rho);
  py::dict d;
  if (inclination) {
    const InclinationLaw law = inclination_law(params);
    d["is_point_mass"] = law.is_point_mass;
    if (law.is_point_mass) {
      d["atom"] = law.atom;
    } else {
      d["u_support"] = py::make_tuple(law.u_lo, law.u_hi);
    }
  } else {
    const SpeedLaw law = second_class_speed_law(params);
    d["is_point_mass"] = law.is_point_mass;
    if (law.is_point_mass) {
      d["atom"] = law.atom;
    } else {
      d["support"] = py::make_tuple(law.lo, law.hi);
    }
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "growth, exclusion, and competition-interface laboratory";

  m.def("version", &version_string, "build identity string");
  m.def(
      "theta_degrees",
      [](double lam, double rho) { return Params(lam, rho).theta_degrees(); },
      py::arg("lam"), py::arg("rho"), "sector angle in degrees");
  m.def(
      "regime",
      [](double lam, double rho) { return std::string(regime_name(Params(lam, rho).regime())); },
      py::arg("lam"), py::arg("rho"));
  m.def(
      "burgers_u",
      [](double lam, double rho, double r, double t) { return burgers_u(Params(lam, rho), r, t); },
      py::arg("lam"), py::arg("rho"), py::arg("r"), py::arg("t") = 1.0,
      "entropy solution of the step Riemann problem");
  m.def(
      "limit_shape",
      [](double lam, double rho, int n) {
        const LimitShape shape{Params(lam, rho)};
        std::vector<std::tuple<double, double, double>> out;
        const double lo = shape.r_lo() - 0.5, hi = shape.r_hi() + 0.5;
        for (int k = 0; k < n; ++k) {
          const double r = lo + (hi - lo) * k / (n - 1);
          out.emplace_back(r, shape.x(r), shape.y(r));
        }
        return out;
      },
      py::arg("lam"), py::arg("rho"), py::arg("n") = 201,
      "rescaled growth-interface samples (r, x, y)");
  m.def("inclination_law", [](double lam, double rho) { return law_dict(lam, rho, true); },
        py::arg("lam"), py::arg("rho"));
  m.def("speed_law", [](double lam, double rho) { return law_dict(lam, rho, false); },
        py::arg("lam"), py::arg("rho"));
  m.def(
      "inclination_cdf",
      [](double lam, double rho, double v) { return inclination_law(Params(lam, rho)).cdf(v); },
      py::arg("lam"), py::arg("rho"), py::arg("v"));

  m.def("sample_inclination", &sample_inclination, py::arg("lam"), py::arg("rho"),
        py::arg("n_steps"), py::arg("replicas"), py::arg("seed"), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "per-replica tan(alpha) of the competition interface after n_steps");
  m.def("sample_marker", &sample_marker, py::arg("lam"), py::arg("rho"), py::arg("t_max"),
        py::arg("replicas"), py::arg("seed"), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "per-replica marker position X(t_max)");
  m.def("marker_trajectory", &marker_trajectory, py::arg("lam"), py::arg("rho"),
        py::arg("t_max"), py::arg("observe_at"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>(),
        "one marker run: (time, x, label_i, label_j) at each observation time");
  m.def("pooled_density", &pooled_density, py::arg("lam"), py::arg("rho"), py::arg("t_max"),
        py::arg("replicas"), py::arg("bin_width"), py::arg("seed"), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "pooled particle density as (r, density) pairs");
  m.def("coupling_totals", &coupling_totals, py::arg("lam"), py::arg("rho"), py::arg("t_max"),
        py::arg("replicas"), py::arg("seed"), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "exact-identity check totals across both simulation routes");
  m.def("passage_times", &passage_times, py::arg("lam"), py::arg("rho"), py::arg("box"),
        py::arg("seed"), py::call_guard<py::gil_scoped_release>(),
        "(x, y, G) for every interior site of one realization");
  m.def("growth_interface", &growth_interface, py::arg("lam"), py::arg("rho"), py::arg("box"),
        py::arg("seed"), py::arg("t"), py::call_guard<py::gil_scoped_release>(),
        "the occupied-region staircase at time t");

  m.def(
      "ks_distance",
      [](const std::vector<double>& sample, const std::function<double(double)>& cdf) {
        return ks_distance(sample, cdf);
      },
      py::arg("sample"), py::arg("cdf"));
  m.def(
      "ks_two_sample",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        const TwoSampleKs r = ks_two_sample(a, b);
        return py::make_tuple(r.distance, r.p_value);
      },
      py::arg("a"), py::arg("b"), "(distance, asymptotic p-value)");
}
