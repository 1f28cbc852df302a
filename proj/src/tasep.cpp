#include "complab/tasep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace complab {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void validate_observations(const std::vector<double>& observe_at, double t_max) {
  double prev = 0.0;
  for (const double t : observe_at) {
    require(t >= 0.0 && t <= t_max, "observation times must lie in [0, t_max]");
    require(t >= prev, "observation times must be sorted ascending");
    prev = t;
  }
}

long long ceil_ll(double v) { return static_cast<long long>(std::ceil(v)); }

// How fast the marker's range can drift toward a window edge: zero for
// regimes whose speed law stays at the origin, the extreme speed otherwise,
// and rate 1 for an isolated marker (a pure Poisson walk to the right).
double truncation_reach(const Params& params, SecondClassInit init) {
  if (init == SecondClassInit::isolated) return 1.0;
  return std::max({0.0, 2.0 * params.lambda - 1.0, 1.0 - 2.0 * params.rho});
}

}  // namespace

int gillespie_window_radius(const Params& params, double t_max, SecondClassInit init,
                            int min_clean_radius) {
  params.validate();
  require(t_max >= 0.0, "t_max must be nonnegative");
  const long long slack = 16 * ceil_ll(std::sqrt(t_max)) + 96;
  long long w = ceil_ll((1.1 + truncation_reach(params, init)) * t_max) + slack;
  if (min_clean_radius > 0)
    w = std::max(w, static_cast<long long>(min_clean_radius) + ceil_ll(t_max) + slack);
  return static_cast<int>(w);
}

TasepTrajectory simulate_second_class(const Params& params, const SecondClassOptions& options,
                                      Rng& rng) {
  params.validate();
  require(options.t_max >= 0.0, "t_max must be nonnegative");
  validate_observations(options.observe_at, options.t_max);

  const int radius =
      gillespie_window_radius(params, options.t_max, options.init, options.min_clean_radius);
  const int lo = -radius - 1, hi = radius + 1;
  const size_t n_sites = static_cast<size_t>(hi - lo + 1);

  TasepTrajectory traj;
  traj.window_lo = lo;
  traj.window_hi = hi;

  std::vector<std::uint8_t> occ(n_sites, 0);
  auto cell = [&](int j) -> std::uint8_t& { return occ[static_cast<size_t>(j - lo)]; };
  cell(0) = 2;
  if (options.init == SecondClassInit::standard) {
    for (int j = lo; j <= hi; ++j) {
      if (j == 0) continue;
      cell(j) = rng.bernoulli(j < 0 ? params.lambda : params.rho) ? 1 : 0;
    }
  }

  // Dominating rate-1 influence fronts, drawn up front: by time t_max each
  // window edge can have affected at most the sites such a front has crossed.
  int front_l = lo - 1;
  for (double s = rng.exp1(); s <= options.t_max; s += rng.exp1()) ++front_l;
  int front_r = hi + 1;
  for (double s = rng.exp1(); s <= options.t_max; s += rng.exp1()) --front_r;

  std::vector<int> edge_list;
  std::vector<int> edge_pos(n_sites, -1);
  auto eligible = [&](int s) {
    const std::uint8_t a = cell(s), b = cell(s + 1);
    return (a != 0 && b == 0) || (a == 1 && b == 2);
  };
  auto sync_edge = [&](int s) {
    if (s < lo || s >= hi) return;
    const bool want = eligible(s);
    int& p = edge_pos[static_cast<size_t>(s - lo)];
    if (want && p < 0) {
      p = static_cast<int>(edge_list.size());
      edge_list.push_back(s);
    } else if (!want && p >= 0) {
      const int last = edge_list.back();
      edge_list[static_cast<size_t>(p)] = last;
      edge_pos[static_cast<size_t>(last - lo)] = p;
      edge_list.pop_back();
      p = -1;
    }
  };
  for (int s = lo; s < hi; ++s) sync_edge(s);

  double t = 0.0;
  long long x = 0, label_i = 1, label_j = 1;
  long long min_x = 0, max_x = 0;
  size_t obs = 0;
  auto flush_observations = [&](double bound, bool inclusive) {
    while (obs < options.observe_at.size() &&
           (inclusive ? options.observe_at[obs] <= bound : options.observe_at[obs] < bound)) {
      traj.samples.push_back({options.observe_at[obs], x, label_i, label_j});
      if (options.keep_snapshots) traj.snapshots.push_back({options.observe_at[obs], lo, occ});
      ++obs;
    }
  };

  while (!edge_list.empty()) {
    const double t_next = t + rng.exp1() / static_cast<double>(edge_list.size());
    if (t_next > options.t_max) break;
    const int s = edge_list[static_cast<size_t>(rng.below(edge_list.size()))];
    flush_observations(t_next, false);
    t = t_next;
    const std::uint8_t a = cell(s), b = cell(s + 1);
    if (a == 1 && b == 2) {
      cell(s) = 2;
      cell(s + 1) = 1;
      if (s + 1 != x) throw std::logic_error("marker bookkeeping diverged from the lattice");
      x -= 1;
      label_j += 1;
      if (options.keep_pair_events) traj.pair_events.push_back({t, x, label_i, label_j, false});
      min_x = std::min(min_x, x);
    } else if (a == 2) {
      cell(s) = 0;
      cell(s + 1) = 2;
      if (s != x) throw std::logic_error("marker bookkeeping diverged from the lattice");
      x += 1;
      label_i += 1;
      if (options.keep_pair_events) traj.pair_events.push_back({t, x, label_i, label_j, true});
      max_x = std::max(max_x, x);
    } else {
      cell(s) = 0;
      cell(s + 1) = 1;
    }
    sync_edge(s - 1);
    sync_edge(s);
    sync_edge(s + 1);
  }
  flush_observations(options.t_max, true);

  if (!(front_l < min_x - 1 && front_r > max_x + 1))
    throw std::runtime_error(
        "window influence could have reached the marker's range; enlarge the window");
  traj.clean_lo = front_l + 2;
  traj.clean_hi = front_r - 2;
  return traj;
}

int replay_diag_halfwidth(const Params& params, double t_max) {
  params.validate();
  require(t_max >= 0.0, "t_max must be nonnegative");
  const long long slack = 16 * ceil_ll(std::sqrt(t_max)) + 96;
  return static_cast<int>(
      ceil_ll((1.1 + truncation_reach(params, SecondClassInit::standard)) * t_max) + slack);
}

int replay_box_side(const Params& params, double t_max) {
  const int d = replay_diag_halfwidth(params, t_max);
  const double arm = std::max(params.lambda, 1.0 - params.rho);
  return static_cast<int>(ceil_ll(arm * d + 0.5 * t_max + 8.0 * std::sqrt(t_max) + 64.0));
}

TasepTrajectory derive_tasep_from_lpp(const PassageField& passage, const ReplayOptions& options) {
  const int d = options.diag_halfwidth;
  require(d >= 2, "diag_halfwidth must be at least 2");
  require(options.t_max >= 0.0, "t_max must be nonnegative");
  validate_observations(options.observe_at, options.t_max);
  const double t_max = options.t_max;
  const SectorGeometry& geom = passage.geometry();
  const InterfaceProfile& gamma = passage.boundary();
  const int box = passage.box_side();

  for (int j = -d; j <= d; ++j) {
    const Site start = gamma.at(j);
    const int kmax = std::min(box - start.x, box - start.y);
    if (kmax < 1) throw std::runtime_error("box too small to track the requested diagonal window");
    if (!(passage.g({start.x + kmax, start.y + kmax}) > t_max))
      throw std::runtime_error(
          "replay guard violated: a tracked diagonal could grow past the box rim before t_max");
  }

  struct GrowthEvent {
    double time;
    int x, y;
  };
  std::vector<GrowthEvent> events;
  for (int y = geom.y_min() + 1; y <= box; ++y) {
    const int x0 = std::max(geom.x_right(y) + 1, y - d);
    const int x1 = std::min(box, y + d);
    for (int x = x0; x <= x1; ++x) {
      const double g = passage.g({x, y});
      if (g <= t_max) events.push_back({g, x, y});
    }
  }
  std::sort(events.begin(), events.end(), [](const GrowthEvent& a, const GrowthEvent& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });

  const size_t span = static_cast<size_t>(2 * d + 3);
  std::vector<std::uint8_t> occ(span, 0);
  std::vector<int> site_label(span, 0);
  auto oc = [&](int j) -> std::uint8_t& { return occ[static_cast<size_t>(j + d + 1)]; };
  auto lab = [&](int j) -> int& { return site_label[static_cast<size_t>(j + d + 1)]; };
  for (int j = -d - 1; j <= d + 1; ++j) {
    const Site cur = gamma.at(j), prev = gamma.at(j - 1);
    const bool particle = cur.x == prev.x;
    oc(j) = particle ? 1 : 0;
    lab(j) = particle ? cur.y + 1 : prev.x + 1;
  }
  if (oc(0) != 0 || lab(0) != 1 || oc(1) != 1 || lab(1) != 1)
    throw std::logic_error("boundary profile does not put the marked pair at the origin");

  TasepTrajectory traj;
  traj.window_lo = -d - 1;
  traj.window_hi = d + 1;

  // Sites in [-d+1, d] are exact for the whole replay: every event that
  // touches them lies on a collected diagonal, and each replayed event
  // rewrites its two sites with the state the growth picture dictates.  The
  // three outermost sites can go stale between collected events because
  // diagonals beyond +-d also push particles into them.
  const int exact_lo = -d + 1, exact_hi = d;
  long long x = 0, label_i = 1, label_j = 1;
  size_t obs = 0;
  auto flush_observations = [&](double bound, bool inclusive) {
    while (obs < options.observe_at.size() &&
           (inclusive ? options.observe_at[obs] <= bound : options.observe_at[obs] < bound)) {
      traj.samples.push_back({options.observe_at[obs], x, label_i, label_j});
      if (options.keep_snapshots)
        traj.snapshots.push_back({options.observe_at[obs], -d - 1, occ});
      ++obs;
    }
  };

  for (const GrowthEvent& e : events) {
    flush_observations(e.time, false);
    const int j = e.x - e.y;
    const bool trusted = j >= exact_lo && j + 1 <= exact_hi;
    const bool fwd_pair = e.x == label_i + 1 && e.y == label_j;
    const bool bwd_pair = e.x == label_i && e.y == label_j + 1;
    if ((fwd_pair || bwd_pair) && !trusted)
      throw std::runtime_error(
          "the marked pair reached the influenced margin of the diagonal window; enlarge it");
    if (trusted) {
      if (oc(j) != 1 || oc(j + 1) != 0)
        throw std::logic_error("replayed event does not sit on a particle-hole edge");
      if (lab(j) != e.y || lab(j + 1) != e.x)
        throw std::logic_error("replayed event labels disagree with its lattice coordinates");
    }
    oc(j) = 0;
    oc(j + 1) = 1;
    lab(j) = e.x;
    lab(j + 1) = e.y;
    if (fwd_pair) {
      if (j != x + 1) throw std::logic_error("forward pair event off the marker diagonal");
      x += 1;
      label_i += 1;
      if (options.keep_pair_events) traj.pair_events.push_back({e.time, x, label_i, label_j, true});
    } else if (bwd_pair) {
      if (j != x - 1) throw std::logic_error("backward pair event off the marker diagonal");
      x -= 1;
      label_j += 1;
      if (options.keep_pair_events)
        traj.pair_events.push_back({e.time, x, label_i, label_j, false});
    }
    if (fwd_pair || bwd_pair) {
      if (x != label_i - label_j)
        throw std::logic_error("pair position diverged from its label difference");
      if (x <= -d + 1 || x >= d - 1)
        throw std::runtime_error("the marked pair approached the edge of the diagonal window");
    }
  }
  flush_observations(t_max, true);
  traj.clean_lo = exact_lo;
  traj.clean_hi = exact_hi;
  return traj;
}

DensityProfile density_profile(const OccupancySnapshot& snapshot, int clean_lo, int clean_hi,
                               double bin_width) {
  require(bin_width > 0.0, "bin width must be positive");
  require(snapshot.time > 0.0, "density profiles need a positive observation time");
  const double t = snapshot.time;
  DensityProfile prof;
  prof.bin_width = bin_width;
  const int k_lo = static_cast<int>(std::ceil(-1.0 / bin_width - 1e-9));
  const int k_hi = static_cast<int>(std::floor(1.0 / bin_width + 1e-9));
  prof.k_lo = k_lo;
  prof.particles.assign(static_cast<size_t>(k_hi - k_lo + 1), 0);
  prof.sites.assign(static_cast<size_t>(k_hi - k_lo + 1), 0);
  const int j_lo = std::max(clean_lo, snapshot.site_lo);
  const int j_hi =
      std::min(clean_hi, snapshot.site_lo + static_cast<int>(snapshot.cells.size()) - 1);
  for (int j = j_lo; j <= j_hi; ++j) {
    const long long k = std::llround(static_cast<double>(j) / t / bin_width);
    if (k < k_lo || k > k_hi) continue;
    const size_t b = static_cast<size_t>(k - k_lo);
    prof.sites[b] += 1;
    if (snapshot.cells[static_cast<size_t>(j - snapshot.site_lo)] == 1) prof.particles[b] += 1;
  }
  return prof;
}

void DensityProfile::accumulate(const DensityProfile& other) {
  if (bin_width != other.bin_width || k_lo != other.k_lo || sites.size() != other.sites.size())
    throw std::invalid_argument("density profiles with different binnings cannot be pooled");
  for (size_t i = 0; i < sites.size(); ++i) {
    particles[i] += other.particles[i];
    sites[i] += other.sites[i];
  }
}

}  // namespace complab
