#include "complab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

namespace complab {

namespace {

// Sub-stream tags: every consumer of a replica seed hashes it with its own
// tag, so boundary draws, site weights, and simulation clocks never share a
// stream even within one replica.
constexpr std::uint64_t kBoundaryTag = 0x243F6A8885A308D3ULL;
constexpr std::uint64_t kWeightTag = 0x13198A2E03707344ULL;
constexpr std::uint64_t kDirectTag = 0xA4093822299F31D0ULL;
constexpr std::uint64_t kOracleTag = 0x082EFA98EC4E6C89ULL;
constexpr std::uint64_t kForwardTag = 0x452821E638D01377ULL;
constexpr std::uint64_t kBackwardTag = 0xBE5466CF34E90C6CULL;

std::string time_column(double t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "x_at_%g", t);
  return buf;
}

std::vector<double> observation_times(const ExperimentSpec& spec) {
  return spec.observe_at.empty() ? std::vector<double>{spec.t_max} : spec.observe_at;
}

// Checks the ledger a pair-event stream must satisfy exactly: positions move
// by single steps in the direction recorded, exactly one label advances per
// event, the position always equals label_i - label_j, and time never runs
// backwards.
long long pair_identity_violations(const std::vector<PairEvent>& events) {
  long long bad = 0;
  long long prev_x = 0, prev_i = 1, prev_j = 1;
  double prev_t = 0.0;
  for (const PairEvent& e : events) {
    const long long want_x = prev_x + (e.forward ? 1 : -1);
    const long long want_i = prev_i + (e.forward ? 1 : 0);
    const long long want_j = prev_j + (e.forward ? 0 : 1);
    if (e.x != e.label_i - e.label_j || e.x != want_x || e.label_i != want_i ||
        e.label_j != want_j || !(e.time >= prev_t)) {
      ++bad;
    }
    prev_x = e.x;
    prev_i = e.label_i;
    prev_j = e.label_j;
    prev_t = e.time;
  }
  return bad;
}

}  // namespace

const char* experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::inclination: return "inclination";
    case ExperimentKind::speed: return "speed";
    case ExperimentKind::coupling: return "coupling";
    case ExperimentKind::fluctuation: return "fluctuation";
    case ExperimentKind::profile: return "profile";
    case ExperimentKind::duality: return "duality";
  }
  return "?";
}

void ExperimentSpec::validate() const {
  params.validate();
  if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
  const bool step_driven =
      kind == ExperimentKind::inclination || kind == ExperimentKind::duality;
  if (step_driven) {
    if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  } else if (!(t_max > 0.0)) {
    throw std::invalid_argument("t_max must be positive");
  }
  if (kind == ExperimentKind::duality && backward_from < n_steps + 1)
    throw std::invalid_argument(
        "backward_from must exceed n_steps so the polymer stays inside the box");
  if (kind == ExperimentKind::profile && !(bin_width > 0.0))
    throw std::invalid_argument("bin_width must be positive");
  for (size_t k = 0; k < observe_at.size(); ++k) {
    const bool ordered = k == 0 || observe_at[k] >= observe_at[k - 1];
    if (!(observe_at[k] >= 0.0) || observe_at[k] > t_max || !ordered)
      throw std::invalid_argument("observe_at must be ascending within [0, t_max]");
  }
}

std::vector<double> Ensemble::column(size_t index) const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const ReplicaRecord& r : records) out.push_back(r.values.at(index));
  return out;
}

Ensemble run_inclination(const ExperimentSpec& spec) {
  spec.validate();
  Ensemble out;
  out.columns = {"i_n", "j_n", "tan_alpha"};
  out.records.assign(static_cast<size_t>(spec.replicas), ReplicaRecord{});
  const int box = spec.n_steps + 2;
  parallel_for_replicas(spec.replicas, resolve_worker_count(spec.workers), [&](int i) {
    const std::uint64_t seed = spec.rng.stream_seed(static_cast<std::uint64_t>(i));
    Rng boundary_rng(splitmix64_mix(seed ^ kBoundaryTag));
    const InterfaceProfile boundary = sample_initial_interface(spec.params, box, boundary_rng);
    const QuadrantField field(boundary, WeightSource::hashed(splitmix64_mix(seed ^ kWeightTag)),
                              box);
    const CompetitionPath path = trace_competition_interface(field, spec.n_steps);
    const Site phi = path.steps.back();
    out.records[static_cast<size_t>(i)] = {
        seed,
        {static_cast<double>(phi.x), static_cast<double>(phi.y),
         static_cast<double>(phi.y) / static_cast<double>(phi.x)}};
  });
  return out;
}

Ensemble run_marker(const ExperimentSpec& spec, SecondClassInit init) {
  spec.validate();
  const std::vector<double> observe = observation_times(spec);
  Ensemble out;
  for (double t : observe) out.columns.push_back(time_column(t));
  out.columns.push_back("label_i");
  out.columns.push_back("label_j");
  out.records.assign(static_cast<size_t>(spec.replicas), ReplicaRecord{});
  SecondClassOptions options;
  options.t_max = spec.t_max;
  options.observe_at = observe;
  options.init = init;
  parallel_for_replicas(spec.replicas, resolve_worker_count(spec.workers), [&](int i) {
    Rng rng = spec.rng.stream(static_cast<std::uint64_t>(i));
    const TasepTrajectory traj = simulate_second_class(spec.params, options, rng);
    ReplicaRecord rec;
    rec.stream = spec.rng.stream_seed(static_cast<std::uint64_t>(i));
    rec.values.reserve(observe.size() + 2);
    for (const TrajectorySample& s : traj.samples)
      rec.values.push_back(static_cast<double>(s.x));
    rec.values.push_back(static_cast<double>(traj.samples.back().label_i));
    rec.values.push_back(static_cast<double>(traj.samples.back().label_j));
    out.records[static_cast<size_t>(i)] = std::move(rec);
  });
  return out;
}

Ensemble run_profile(const ExperimentSpec& spec) {
  spec.validate();
  Ensemble out;
  out.columns = {"clean_lo", "clean_hi"};
  out.records.assign(static_cast<size_t>(spec.replicas), ReplicaRecord{});
  std::vector<DensityProfile> parts(static_cast<size_t>(spec.replicas));
  SecondClassOptions options;
  options.t_max = spec.t_max;
  options.observe_at = {spec.t_max};
  options.keep_snapshots = true;
  options.min_clean_radius = static_cast<int>(std::ceil(spec.t_max)) + 8;
  parallel_for_replicas(spec.replicas, resolve_worker_count(spec.workers), [&](int i) {
    Rng rng = spec.rng.stream(static_cast<std::uint64_t>(i));
    const TasepTrajectory traj = simulate_second_class(spec.params, options, rng);
    parts[static_cast<size_t>(i)] =
        density_profile(traj.snapshots.back(), traj.clean_lo, traj.clean_hi, spec.bin_width);
    out.records[static_cast<size_t>(i)] = {
        spec.rng.stream_seed(static_cast<std::uint64_t>(i)),
        {static_cast<double>(traj.clean_lo), static_cast<double>(traj.clean_hi)}};
  });
  out.pooled = parts.front();
  for (size_t i = 1; i < parts.size(); ++i) out.pooled.accumulate(parts[i]);
  out.pooled_replicas = spec.replicas;
  return out;
}

Ensemble run_coupling(const ExperimentSpec& spec) {
  spec.validate();
  Ensemble out;
  out.columns = {"direct_events", "direct_violations", "replay_events", "replay_violations",
                 "oracle_equal", "labels_equal"};
  out.records.assign(static_cast<size_t>(spec.replicas), ReplicaRecord{});
  const int diag = replay_diag_halfwidth(spec.params, spec.t_max);
  const int box = replay_box_side(spec.params, spec.t_max);
  const int coverage = std::max(box, diag + 2);
  parallel_for_replicas(spec.replicas, resolve_worker_count(spec.workers), [&](int i) {
    const std::uint64_t seed = spec.rng.stream_seed(static_cast<std::uint64_t>(i));

    Rng direct_rng(splitmix64_mix(seed ^ kDirectTag));
    SecondClassOptions direct;
    direct.t_max = spec.t_max;
    direct.observe_at = {spec.t_max};
    direct.keep_pair_events = true;
    const TasepTrajectory direct_traj = simulate_second_class(spec.params, direct, direct_rng);

    Rng boundary_rng(splitmix64_mix(seed ^ kBoundaryTag));
    const InterfaceProfile boundary =
        sample_initial_interface(spec.params, coverage, boundary_rng);
    const PassageField field = compute_passage_times(
        boundary, WeightSource::hashed(splitmix64_mix(seed ^ kWeightTag)), box);
    ReplayOptions replay;
    replay.t_max = spec.t_max;
    replay.diag_halfwidth = diag;
    replay.observe_at = {spec.t_max};
    const TasepTrajectory replay_traj = derive_tasep_from_lpp(field, replay);

    Rng oracle_rng(splitmix64_mix(seed ^ kOracleTag));
    const int oracle_box = 48;
    const InterfaceProfile oracle_boundary =
        sample_initial_interface(spec.params, oracle_box + 2, oracle_rng);
    const SectorGeometry geom(oracle_boundary);
    const WeightField stored =
        sample_weights(Rect{geom.x_min(), oracle_box, geom.y_min(), oracle_box}, oracle_rng);
    const PassageField swept =
        compute_passage_times(oracle_boundary, WeightSource::stored(stored), oracle_box);
    const PassageField grown =
        event_driven_growth(oracle_boundary, WeightSource::stored(stored), oracle_box);
    bool oracle_equal = true;
    for (int y = geom.y_min(); y <= oracle_box && oracle_equal; ++y)
      for (int x = geom.x_right(y) + 1; x <= oracle_box; ++x)
        if (swept.g({x, y}) != grown.g({x, y})) {
          oracle_equal = false;
          break;
        }
    const ClusterLabels labels = label_clusters(swept);
    bool labels_equal = true;
    for (int y = 1; y <= oracle_box && labels_equal; ++y)
      for (int x = 1; x <= oracle_box; ++x) {
        if (x == 1 && y == 1) continue;
        if (labels.at(x, y) != backtrack_geodesic(swept, {x, y}).origin_side) {
          labels_equal = false;
          break;
        }
      }

    out.records[static_cast<size_t>(i)] = {
        seed,
        {static_cast<double>(direct_traj.pair_events.size()),
         static_cast<double>(pair_identity_violations(direct_traj.pair_events)),
         static_cast<double>(replay_traj.pair_events.size()),
         static_cast<double>(pair_identity_violations(replay_traj.pair_events)),
         oracle_equal ? 1.0 : 0.0, labels_equal ? 1.0 : 0.0}};
  });
  return out;
}

DualityOutcome run_duality(const ExperimentSpec& spec) {
  spec.validate();
  DualityOutcome out;
  out.forward_up_steps.assign(static_cast<size_t>(spec.replicas), 0.0);
  out.backward_up_steps.assign(static_cast<size_t>(spec.replicas), 0.0);
  const int forward_box = spec.n_steps + 2;
  const int backward_box = spec.backward_from;
  const int workers = resolve_worker_count(spec.workers);
  parallel_for_replicas(spec.replicas, workers, [&](int i) {
    const std::uint64_t seed =
        splitmix64_mix(spec.rng.stream_seed(static_cast<std::uint64_t>(i)) ^ kForwardTag);
    Rng boundary_rng(splitmix64_mix(seed ^ kBoundaryTag));
    const InterfaceProfile boundary =
        sample_initial_interface(spec.params, forward_box, boundary_rng);
    const QuadrantField field(boundary, WeightSource::hashed(splitmix64_mix(seed ^ kWeightTag)),
                              forward_box);
    const CompetitionPath path = trace_competition_interface(field, spec.n_steps);
    out.forward_up_steps[static_cast<size_t>(i)] =
        static_cast<double>(path.steps.back().y - 1);
  });
  parallel_for_replicas(spec.replicas, workers, [&](int i) {
    const std::uint64_t seed =
        splitmix64_mix(spec.rng.stream_seed(static_cast<std::uint64_t>(i)) ^ kBackwardTag);
    Rng boundary_rng(splitmix64_mix(seed ^ kBoundaryTag));
    const InterfaceProfile boundary =
        sample_initial_interface(spec.params, backward_box, boundary_rng);
    const QuadrantField field(boundary, WeightSource::hashed(splitmix64_mix(seed ^ kWeightTag)),
                              backward_box);
    const std::vector<Site> path =
        trace_backward_polymer(field, {backward_box, backward_box}, spec.n_steps);
    out.backward_up_steps[static_cast<size_t>(i)] =
        static_cast<double>(backward_box - path.back().y);
  });
  out.ks = ks_two_sample(out.forward_up_steps, out.backward_up_steps);
  return out;
}

Ensemble run_replicas(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::inclination:
      return run_inclination(spec);
    case ExperimentKind::speed:
    case ExperimentKind::fluctuation:
      return run_marker(spec);
    case ExperimentKind::profile:
      return run_profile(spec);
    case ExperimentKind::coupling:
      return run_coupling(spec);
    case ExperimentKind::duality: {
      const DualityOutcome d = run_duality(spec);
      Ensemble out;
      out.columns = {"side", "up_steps"};
      out.records.reserve(2 * d.forward_up_steps.size());
      for (size_t i = 0; i < d.forward_up_steps.size(); ++i)
        out.records.push_back(
            {spec.rng.stream_seed(i), {0.0, d.forward_up_steps[i]}});
      for (size_t i = 0; i < d.backward_up_steps.size(); ++i)
        out.records.push_back(
            {spec.rng.stream_seed(i), {1.0, d.backward_up_steps[i]}});
      return out;
    }
  }
  throw std::invalid_argument("unknown experiment kind");
}

namespace {

double point_segment_distance_sq(double px, double py, double ax, double ay, double bx,
                                 double by) {
  const double vx = bx - ax, vy = by - ay;
  const double wx = px - ax, wy = py - ay;
  const double vv = vx * vx + vy * vy;
  const double s = vv > 0.0 ? std::clamp((wx * vx + wy * vy) / vv, 0.0, 1.0) : 0.0;
  const double dx = wx - s * vx, dy = wy - s * vy;
  return dx * dx + dy * dy;
}

}  // namespace

ShapeCheck check_limit_shape(const Params& params, double t, int box_side, const RngSpec& rng) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  const std::uint64_t seed = rng.stream_seed(0);
  Rng boundary_rng(splitmix64_mix(seed ^ kBoundaryTag));
  const InterfaceProfile boundary = sample_initial_interface(params, box_side, boundary_rng);
  const PassageField field = compute_passage_times(
      boundary, WeightSource::hashed(splitmix64_mix(seed ^ kWeightTag)), box_side);
  const InterfaceProfile grown = growth_interface_at(field, t);
  const LimitShape shape(params);
  // Polyline over the fan arc, flanked by ray segments long enough to cover
  // everything the box can hold; chord sag is far below the tolerances in use.
  const double span = 2.0 * (static_cast<double>(box_side) / t + 2.0) + 4.0;
  const int arc = shape.r_hi() > shape.r_lo() ? 4000 : 1;
  std::vector<std::pair<double, double>> verts;
  verts.reserve(static_cast<size_t>(arc) + 3);
  verts.push_back(shape.point(shape.r_lo() - span));
  for (int k = 0; k <= arc; ++k)
    verts.push_back(shape.point(shape.r_lo() + (shape.r_hi() - shape.r_lo()) * k / arc));
  verts.push_back(shape.point(shape.r_hi() + span));
  ShapeCheck out;
  for (const Site& p : grown.points()) {
    const double px = p.x / t, py = p.y / t;
    double best = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k + 1 < verts.size(); ++k)
      best = std::min(best, point_segment_distance_sq(px, py, verts[k].first, verts[k].second,
                                                      verts[k + 1].first, verts[k + 1].second));
    out.sup_distance = std::max(out.sup_distance, std::sqrt(best));
  }
  if (params.lambda > params.rho) {
    const int grid = 4096;
    for (int k = 0; k <= grid; ++k) {
      const double r = shape.r_lo() + (shape.r_hi() - shape.r_lo()) * k / grid;
      out.parabola_residual =
          std::max(out.parabola_residual,
                   std::abs(std::sqrt(shape.x(r)) + std::sqrt(shape.y(r)) - 1.0));
    }
  }
  return out;
}

VarianceLadder marker_variance_ladder(const Ensemble& ensemble,
                                      const std::vector<double>& observe_at) {
  if (ensemble.records.size() < 2)
    throw std::invalid_argument("variance ladder needs at least two replicas");
  VarianceLadder out;
  for (size_t k = 0; k < observe_at.size(); ++k) {
    const std::vector<double> xs = ensemble.column(k);
    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double v : xs) ss += (v - mean) * (v - mean);
    out.times.push_back(observe_at[k]);
    out.variances.push_back(ss / static_cast<double>(xs.size() - 1));
  }
  return out;
}

}  // namespace complab
