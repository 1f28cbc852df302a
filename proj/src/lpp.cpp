#include "complab/lpp.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace complab {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

SectorGeometry::SectorGeometry(const InterfaceProfile& boundary) {
  const std::vector<Site>& pts = boundary.points();
  require(pts.size() >= 2, "boundary profile must contain at least two points");
  x_min_ = pts.front().x;
  y_min_ = pts.back().y;
  const int x_max = pts.back().x;
  const int y_max = pts.front().y;
  y_top_.assign(static_cast<size_t>(x_max - x_min_) + 1, std::numeric_limits<int>::min());
  y_bot_.assign(static_cast<size_t>(x_max - x_min_) + 1, std::numeric_limits<int>::max());
  x_right_.assign(static_cast<size_t>(y_max - y_min_) + 1, std::numeric_limits<int>::min());
  for (const Site& p : pts) {
    const size_t col = static_cast<size_t>(p.x - x_min_);
    y_top_[col] = std::max(y_top_[col], p.y);
    y_bot_[col] = std::min(y_bot_[col], p.y);
    const size_t row = static_cast<size_t>(p.y - y_min_);
    x_right_[row] = std::max(x_right_[row], p.x);
  }
}

PassageField::PassageField(const InterfaceProfile& boundary, const WeightSource& weights,
                           int box_side)
    : boundary_(boundary),
      geom_(boundary_),
      weights_(weights),
      box_side_(box_side),
      x_lo_(geom_.x_min()),
      y_lo_(geom_.y_min()),
      rect_width_(box_side - geom_.x_min() + 1) {
  require(box_side >= 2, "box side must be at least 2");
  require(geom_.x_max() > box_side && geom_.y_max() > box_side,
          "boundary arms must extend past the box on both sides");
  rect_.assign(static_cast<size_t>(rect_width_) * static_cast<size_t>(box_side - y_lo_ + 1), 0.0);
}

double PassageField::g(Site z) const {
  if (geom_.on_boundary(z)) return 0.0;
  if (z.x <= box_side_ && z.y <= box_side_ && geom_.is_interior(z)) return rect_[index(z.x, z.y)];
  throw std::out_of_range("passage time queried outside the stored region");
}

bool PassageField::covers(Site z) const {
  if (geom_.on_boundary(z)) return true;
  return z.x <= box_side_ && z.y <= box_side_ && geom_.is_interior(z);
}

void PassageField::finish() {
  const int L = box_side_;
  double horizon = std::numeric_limits<double>::infinity();
  long long count = 0;
  for (int y = y_lo_; y <= L; ++y) {
    const int start = geom_.x_right(y) + 1;
    if (start > L) continue;
    count += L - start + 1;
    horizon = std::min(horizon, rect_[index(L, y)]);
  }
  for (int x = x_lo_; x <= L; ++x) {
    if (geom_.y_top(x) >= L) continue;
    horizon = std::min(horizon, rect_[index(x, L)]);
  }
  safe_horizon_ = horizon;
  interior_count_ = count;
}

PassageField compute_passage_times(const InterfaceProfile& boundary, const WeightSource& weights,
                                   int box_side) {
  PassageField field(boundary, weights, box_side);
  const SectorGeometry& geom = field.geom_;
  const int L = box_side;
  for (int y = field.y_lo_ + 1; y <= L; ++y) {
    const int start = geom.x_right(y) + 1;
    if (start > L) continue;
    const int start_below = geom.x_right(y - 1) + 1;
    const size_t width = static_cast<size_t>(field.rect_width_);
    size_t i = field.index(start, y);
    double left = 0.0;
    for (int x = start; x <= L; ++x, ++i) {
      const double down = (x >= start_below) ? field.rect_[i - width] : 0.0;
      const double v = (left > down ? left : down) + field.weights_(x, y);
      field.rect_[i] = v;
      left = v;
    }
  }
  field.finish();
  return field;
}

PassageField event_driven_growth(const InterfaceProfile& boundary, const WeightSource& weights,
                                 int box_side) {
  PassageField field(boundary, weights, box_side);
  const SectorGeometry& geom = field.geom_;
  const int L = box_side;
  std::vector<std::uint8_t> occupied(field.rect_.size(), 0);
  auto is_occupied = [&](Site z) {
    if (geom.on_boundary(z)) return true;
    return occupied[field.index(z.x, z.y)] != 0;
  };

  using Event = std::tuple<double, int, int>;  // (activation time, y, x)
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue;
  for (int y = field.y_lo_ + 1; y <= L; ++y) {
    const int start = geom.x_right(y) + 1;
    if (start > L) continue;
    for (int x = start; x <= L; ++x)
      if (geom.on_boundary({x - 1, y}) && geom.on_boundary({x, y - 1}))
        queue.emplace(field.weights_(x, y), y, x);
  }

  long long events = 0;
  while (!queue.empty()) {
    const auto [t, y, x] = queue.top();
    queue.pop();
    field.cell(x, y) = t;
    occupied[field.index(x, y)] = 1;
    ++events;
    for (const Site n : {Site{x + 1, y}, Site{x, y + 1}}) {
      if (n.x > L || n.y > L || !geom.is_interior(n)) continue;
      const Site other = (n.x == x) ? Site{n.x - 1, n.y} : Site{n.x, n.y - 1};
      if (is_occupied(other)) queue.emplace(t + field.weights_(n.x, n.y), n.y, n.x);
    }
  }
  field.finish();
  if (events != field.interior_count_)
    throw std::logic_error("event-driven growth did not occupy every interior site exactly once");
  return field;
}

QuadrantField::QuadrantField(const InterfaceProfile& boundary, const WeightSource& weights,
                             int box_side)
    : boundary_(boundary), geom_(boundary_), box_side_(box_side) {
  require(box_side >= 2, "box side must be at least 2");
  require(boundary_.has_initial_corner(),
          "quadrant sweep expects a boundary with the corner at (1,1)");
  require(geom_.x_max() > box_side && geom_.y_max() > box_side,
          "boundary arms must extend past the box on both sides");
  const int L = box_side;
  const size_t span = static_cast<size_t>(L) + 1;

  std::vector<double> prev(span, 0.0), cur(span, 0.0);
  for (int x = geom_.x_min(); x <= 0; ++x) {
    const int top = geom_.y_top(x);
    const int band_hi = std::min(top, L);
    for (int y = geom_.y_bot(x); y <= band_hi; ++y) cur[static_cast<size_t>(y)] = 0.0;
    for (int y = top + 1; y <= L; ++y) {
      const size_t k = static_cast<size_t>(y);
      cur[k] = std::max(prev[k], cur[k - 1]) + weights(x, y);
    }
    std::swap(prev, cur);
  }
  col0_ = prev;

  prev.assign(span, 0.0);
  cur.assign(span, 0.0);
  for (int y = geom_.y_min(); y <= 0; ++y) {
    const int right = geom_.x_right(y);
    const int left = geom_.x_right(y + 1);
    const int band_hi = std::min(right, L);
    for (int x = left; x <= band_hi; ++x) cur[static_cast<size_t>(x)] = 0.0;
    for (int x = right + 1; x <= L; ++x) {
      const size_t k = static_cast<size_t>(x);
      cur[k] = std::max(cur[k - 1], prev[k]) + weights(x, y);
    }
    std::swap(prev, cur);
  }
  row0_ = prev;

  quad_.assign(static_cast<size_t>(L) * static_cast<size_t>(L), 0.0);
  for (int y = 1; y <= L; ++y) {
    size_t i = static_cast<size_t>(y - 1) * static_cast<size_t>(L);
    double left_val = col0_[static_cast<size_t>(y)];
    for (int x = 1; x <= L; ++x, ++i) {
      if (x == 1 && y == 1) {
        quad_[i] = 0.0;
        left_val = 0.0;
        continue;
      }
      const double down =
          (y == 1) ? row0_[static_cast<size_t>(x)] : quad_[i - static_cast<size_t>(L)];
      const double v = (left_val > down ? left_val : down) + weights(x, y);
      quad_[i] = v;
      left_val = v;
    }
  }

  double horizon = std::numeric_limits<double>::infinity();
  for (int x = 1; x <= L; ++x)
    horizon = std::min(horizon, quad_[static_cast<size_t>(L - 1) * L + (x - 1)]);
  for (int y = 1; y <= L; ++y)
    horizon = std::min(horizon, quad_[static_cast<size_t>(y - 1) * L + (L - 1)]);
  safe_horizon_ = horizon;
}

double QuadrantField::g(Site z) const {
  const int L = box_side_;
  if (z.x >= 1 && z.x <= L && z.y >= 1 && z.y <= L) {
    if (z.x == 1 && z.y == 1) return 0.0;
    return quad_[static_cast<size_t>(z.y - 1) * static_cast<size_t>(L) +
                 static_cast<size_t>(z.x - 1)];
  }
  if (z.x == 0 && z.y >= 0 && z.y <= L) return col0_[static_cast<size_t>(z.y)];
  if (z.y == 0 && z.x >= 0 && z.x <= L) return row0_[static_cast<size_t>(z.x)];
  if (geom_.on_boundary(z)) return 0.0;
  throw std::out_of_range("passage time queried outside the stored region");
}

bool QuadrantField::covers(Site z) const {
  const int L = box_side_;
  if (z.x >= 1 && z.x <= L && z.y >= 1 && z.y <= L) return true;
  if (z.x == 0 && z.y >= 0 && z.y <= L) return true;
  if (z.y == 0 && z.x >= 0 && z.x <= L) return true;
  return geom_.on_boundary(z);
}

ClusterLabels label_clusters(const PassageView& passage) {
  const int L = passage.box_side();
  ClusterLabels labels;
  labels.box_side = L;
  labels.sigma.assign(static_cast<size_t>(L) * static_cast<size_t>(L), 0);
  auto lab = [&](Site n) -> std::uint8_t {
    if (n.x == 0) return 1;
    if (n.y == 0) return 2;
    return labels.sigma[static_cast<size_t>(n.y - 1) * static_cast<size_t>(L) +
                        static_cast<size_t>(n.x - 1)];
  };
  for (int y = 1; y <= L; ++y) {
    for (int x = 1; x <= L; ++x) {
      if (x == 1 && y == 1) continue;
      const Site left{x - 1, y}, down{x, y - 1};
      const double gl = passage.g(left), gd = passage.g(down);
      std::uint8_t s;
      if (gl > gd)
        s = lab(left);
      else if (gd > gl)
        s = lab(down);
      else if (gl == 0.0)
        s = (x <= 1) ? 1 : 2;
      else
        s = lab(down);
      labels.sigma[static_cast<size_t>(y - 1) * static_cast<size_t>(L) +
                   static_cast<size_t>(x - 1)] = s;
    }
  }
  return labels;
}

namespace {

template <class Stop>
CompetitionPath trace_interface(const PassageView& passage, Stop stop) {
  CompetitionPath path;
  path.steps = {Site{1, 1}};
  path.event_times = {0.0};
  const int L = passage.box_side();
  Site phi{1, 1};
  for (long long k = 0;; ++k) {
    const Site r = phi + kRight, u = phi + kUp;
    if (r.x > L || u.y > L)
      throw std::runtime_error(
          "competition interface needs passage times outside the box; enlarge box_side");
    const double gr = passage.g(r), gu = passage.g(u);
    const bool go_up = gu <= gr;
    const double step_time = go_up ? gu : gr;
    if (stop(k, step_time)) {
      path.next_event_time = step_time;
      break;
    }
    phi = go_up ? u : r;
    path.steps.push_back(phi);
    path.event_times.push_back(step_time);
  }
  return path;
}

}  // namespace

CompetitionPath trace_competition_interface(const PassageView& passage, int n_steps) {
  require(n_steps >= 0, "step count must be nonnegative");
  return trace_interface(passage,
                         [n_steps](long long k, double) { return k >= n_steps; });
}

CompetitionPath trace_competition_interface_until(const PassageView& passage, double t_max) {
  require(t_max >= 0.0, "trace horizon must be nonnegative");
  return trace_interface(passage, [t_max](long long, double t) { return t > t_max; });
}

CompetitionEventProcess::CompetitionEventProcess(CompetitionPath path) : path_(std::move(path)) {
  require(!path_.steps.empty() && path_.steps.size() == path_.event_times.size(),
          "competition path must pair each step with an event time");
  for (size_t k = 1; k < path_.event_times.size(); ++k)
    require(path_.event_times[k] > path_.event_times[k - 1],
            "competition event times must be strictly increasing");
  require(path_.next_event_time > path_.event_times.back(),
          "the next event time must lie past the last recorded event");
}

Site CompetitionEventProcess::at(double t) const {
  if (t < 0.0) throw std::out_of_range("the competition interface starts at time 0");
  if (t >= path_.next_event_time)
    throw std::out_of_range("queried at or past the traced horizon of the competition interface");
  const auto it = std::upper_bound(path_.event_times.begin(), path_.event_times.end(), t);
  return path_.steps[static_cast<size_t>(it - path_.event_times.begin()) - 1];
}

CompetitionEventProcess competition_event_process(CompetitionPath path) {
  return CompetitionEventProcess(std::move(path));
}

namespace {

Site backward_step(const PassageView& passage, Site cur) {
  const Site l = cur - kRight, d = cur - kUp;
  const double gl = passage.g(l), gd = passage.g(d);
  if (gl > gd) return l;
  if (gd > gl) return d;
  if (gl == 0.0) return (cur.x <= 1) ? l : d;
  return d;
}

}  // namespace

Geodesic backtrack_geodesic(const PassageField& passage, Site z) {
  const SectorGeometry& geom = passage.geometry();
  if (!passage.covers(z) || !geom.is_interior(z))
    throw std::invalid_argument("geodesic endpoint must be a stored interior site");
  Geodesic geo;
  geo.path.push_back(z);
  Site cur = z;
  while (!geom.on_boundary(cur)) {
    cur = backward_step(passage, cur);
    geo.path.push_back(cur);
  }
  geo.origin = cur;
  if (cur.x <= 0)
    geo.origin_side = 1;
  else if (cur.y <= 0)
    geo.origin_side = 2;
  else
    throw std::logic_error("geodesic terminated at the corner (1,1)");
  double energy = 0.0;
  for (size_t k = geo.path.size() - 1; k-- > 0;)
    energy += passage.weights()(geo.path[k].x, geo.path[k].y);
  geo.energy = energy;
  return geo;
}

std::vector<Site> trace_backward_polymer(const PassageView& passage, Site z, int n_steps) {
  require(n_steps >= 0, "step count must be nonnegative");
  if (!passage.covers(z)) throw std::invalid_argument("polymer start is outside the stored region");
  const SectorGeometry& geom = passage.geometry();
  std::vector<Site> path{z};
  Site cur = z;
  for (int k = 0; k < n_steps; ++k) {
    if (geom.on_boundary(cur))
      throw std::runtime_error("backward polymer reached the boundary before finishing its steps");
    if (!passage.covers(cur - kRight) || !passage.covers(cur - kUp))
      throw std::runtime_error("backward polymer needs passage times outside the stored region");
    cur = backward_step(passage, cur);
    path.push_back(cur);
  }
  return path;
}

InterfaceProfile growth_interface_at(const PassageField& passage, double t) {
  require(t >= 0.0, "time must be nonnegative");
  if (t >= passage.safe_horizon())
    throw std::out_of_range("growth interface requested at or past the safe horizon");
  const SectorGeometry& geom = passage.geometry();
  const int L = passage.box_side();
  auto column_top = [&](int x, int from) {
    int y = from;
    while (y > geom.y_top(x) && !(y <= L && passage.g({x, y}) <= t)) --y;
    return y;
  };
  std::vector<Site> pts;
  int x = geom.x_min();
  int prev = geom.y_top(x);
  pts.push_back({x, prev});
  for (++x; x <= L; ++x) {
    const int cur = column_top(x, prev);
    for (int y = prev - 1; y >= cur; --y) pts.push_back({x - 1, y});
    pts.push_back({x, cur});
    prev = cur;
  }
  const int j_min = pts.front().x - pts.front().y;
  return InterfaceProfile(j_min, std::move(pts));
}

}  // namespace complab
