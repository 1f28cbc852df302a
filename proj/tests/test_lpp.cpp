#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "complab/lpp.hpp"
#include "complab/profile.hpp"
#include "complab/rng.hpp"
#include "doctest.h"

using namespace complab;

namespace {

InterfaceProfile sampled_boundary(const Params& params, int coverage, std::uint64_t seed) {
  Rng rng(seed);
  return sample_initial_interface(params, coverage, rng);
}

WeightField sector_weights(const InterfaceProfile& boundary, int box, Rng& rng) {
  const SectorGeometry geom(boundary);
  return sample_weights(Rect{geom.x_min(), box, geom.y_min(), box}, rng);
}

}  // namespace

TEST_CASE("passage times follow the corner recursion, checked by hand") {
  // Quadrant boundary, a 3x3 box, and a weight table small enough to chase
  // G(z) = max(G(z - (1,0)), G(z - (0,1))) + w(z) by hand.
  const InterfaceProfile boundary = sampled_boundary(Params(1.0, 0.0), 5, 1);
  WeightField w;
  w.box = Rect{0, 3, 0, 3};
  w.values.assign(16, 0.0);
  const double table[3][3] = {{0.0, 2.0, 1.0},    // y = 1: (1,1) unused
                              {3.0, 1.0, 1.0},    // y = 2
                              {2.0, 4.0, 0.5}};   // y = 3
  for (int y = 1; y <= 3; ++y)
    for (int x = 1; x <= 3; ++x)
      w.values[static_cast<size_t>(y) * 4 + static_cast<size_t>(x)] = table[y - 1][x - 1];

  const PassageField field = compute_passage_times(boundary, WeightSource::stored(w), 3);
  CHECK(field.g({1, 1}) == 0.0);
  CHECK(field.g({2, 1}) == 2.0);
  CHECK(field.g({3, 1}) == 3.0);
  CHECK(field.g({1, 2}) == 3.0);
  CHECK(field.g({2, 2}) == 4.0);   // max(3, 2) + 1
  CHECK(field.g({3, 2}) == 5.0);   // max(4, 3) + 1
  CHECK(field.g({1, 3}) == 5.0);   // 3 + 2
  CHECK(field.g({2, 3}) == 9.0);   // max(5, 4) + 4
  CHECK(field.g({3, 3}) == 9.5);   // max(9, 5) + 0.5
  CHECK(field.safe_horizon() == 3.0);  // min over the rim: (3,1) wins
  CHECK(field.interior_site_count() == 8);
}

TEST_CASE("the dynamics oracle reproduces the sweep bit for bit") {
  Rng seeder(404);
  for (const Params params : {Params(0.8, 0.2), Params(0.3, 0.7), Params(0.5, 0.5),
                              Params(1.0, 0.0)}) {
    for (int rep = 0; rep < 3; ++rep) {
      const std::uint64_t seed = seeder.next_u64();
      const InterfaceProfile boundary = sampled_boundary(params, 44, seed);
      Rng wrng(seed + 1);
      const WeightField w = sector_weights(boundary, 40, wrng);
      const PassageField swept = compute_passage_times(boundary, WeightSource::stored(w), 40);
      const PassageField grown = event_driven_growth(boundary, WeightSource::stored(w), 40);
      const SectorGeometry& geom = swept.geometry();
      for (int y = geom.y_min(); y <= 40; ++y)
        for (int x = geom.x_right(y) + 1; x <= 40; ++x)
          CHECK(swept.g({x, y}) == grown.g({x, y}));
      CHECK(swept.safe_horizon() == grown.safe_horizon());
    }
  }
}

TEST_CASE("the quadrant sweep matches the dense field wherever both store values") {
  for (const std::uint64_t seed : {9ULL, 10ULL, 11ULL}) {
    const Params params(0.6, 0.3);
    const InterfaceProfile boundary = sampled_boundary(params, 40, seed);
    const WeightSource weights = WeightSource::hashed(seed * 77 + 1);
    const PassageField dense = compute_passage_times(boundary, weights, 36);
    const QuadrantField quad(boundary, weights, 36);
    long long compared = 0;
    for (int y = 0; y <= 36; ++y)
      for (int x = 0; x <= 36; ++x) {
        const Site z{x, y};
        if (!quad.covers(z) || !dense.covers(z)) continue;
        CHECK(dense.g(z) == quad.g(z));
        ++compared;
      }
    CHECK(compared > 36 * 36);
    // The dense field's rim includes the near-arm slivers, so its horizon can
    // only be more conservative than the quadrant view's box-edge horizon.
    CHECK(dense.safe_horizon() <= quad.safe_horizon());
  }
}

TEST_CASE("growth interfaces are staircases that sweep outward in time") {
  const InterfaceProfile boundary = sampled_boundary(Params(1.0, 0.0), 34, 21);
  const PassageField field = compute_passage_times(boundary, WeightSource::hashed(5), 30);
  REQUIRE(field.safe_horizon() > 8.0);

  const InterfaceProfile at0 = growth_interface_at(field, 0.0);
  for (int j = at0.j_min(); j <= at0.j_max(); ++j)
    CHECK(field.geometry().on_boundary(at0.at(j)));

  double prev_t = 0.0;
  InterfaceProfile prev = at0;
  for (double t : {0.5, 2.0, 5.0, 8.0}) {
    REQUIRE(t > prev_t);
    const InterfaceProfile cur = growth_interface_at(field, t);
    const int j_lo = std::max(prev.j_min(), cur.j_min());
    const int j_hi = std::min(prev.j_max(), cur.j_max());
    for (int j = j_lo; j <= j_hi; ++j) {
      CHECK(cur.at(j).x - cur.at(j).y == j);
      CHECK(cur.at(j).x + cur.at(j).y >= prev.at(j).x + prev.at(j).y);
    }
    prev = cur;
    prev_t = t;
  }

  SUBCASE("the interface is exactly the top of the grown set in every column") {
    const SectorGeometry& geom = field.geometry();
    for (double t : {4.0, 0.7 * field.safe_horizon()}) {
      const InterfaceProfile cur = growth_interface_at(field, t);
      for (int j = cur.j_min(); j <= cur.j_max(); ++j) {
        const Site p = cur.at(j);
        if (geom.on_boundary(p)) continue;
        CHECK(field.g(p) <= t);
        // Only a column's top point (entered by a right step) has empty space
        // above it; lower points of a vertical run sit under grown cells.
        if (j == cur.j_min() || cur.at(j - 1).y != p.y) continue;
        const Site above{p.x, p.y + 1};
        if (above.y <= field.box_side() && geom.is_interior(above)) CHECK(field.g(above) > t);
      }
    }
  }

  SUBCASE("a general sector boundary gets the same treatment below its horizon") {
    const InterfaceProfile sector = sampled_boundary(Params(0.7, 0.4), 34, 21);
    const PassageField sfield = compute_passage_times(sector, WeightSource::hashed(6), 30);
    REQUIRE(sfield.safe_horizon() > 0.0);
    const double t = 0.5 * sfield.safe_horizon();
    const InterfaceProfile cur = growth_interface_at(sfield, t);
    const SectorGeometry& geom = sfield.geometry();
    for (int j = cur.j_min(); j <= cur.j_max(); ++j) {
      const Site p = cur.at(j);
      CHECK(p.x - p.y == j);
      if (geom.on_boundary(p)) continue;
      CHECK(sfield.g(p) <= t);
    }
  }

  CHECK_THROWS_AS(growth_interface_at(field, field.safe_horizon() + 1.0), std::out_of_range);
}

TEST_CASE("geodesic energies reproduce passage times exactly") {
  const Params params(0.5, 0.5);
  const InterfaceProfile boundary = sampled_boundary(params, 30, 33);
  Rng wrng(34);
  const WeightField w = sector_weights(boundary, 25, wrng);
  const PassageField field = compute_passage_times(boundary, WeightSource::stored(w), 25);
  for (int y = 1; y <= 25; y += 3)
    for (int x = 1; x <= 25; x += 3) {
      if (x == 1 && y == 1) continue;
      const Geodesic geo = backtrack_geodesic(field, {x, y});
      CHECK(geo.energy == field.g({x, y}));
      CHECK(geo.path.front() == Site{x, y});
      CHECK(field.geometry().on_boundary(geo.path.back()));
      CHECK(geo.origin == geo.path.back());
      CHECK(geo.origin_side == (geo.origin.x <= 0 ? 1 : 2));
      for (size_t k = 1; k < geo.path.size(); ++k) {
        const Site d = geo.path[k - 1] - geo.path[k];
        CHECK((d == kRight || d == kUp));
      }
    }
}

TEST_CASE("cluster labels equal the geodesic origin side everywhere") {
  Rng seeder(777);
  for (const Params params : {Params(0.8, 0.2), Params(0.3, 0.7), Params(1.0, 0.0)}) {
    const std::uint64_t seed = seeder.next_u64();
    const InterfaceProfile boundary = sampled_boundary(params, 40, seed);
    const PassageField field = compute_passage_times(boundary, WeightSource::hashed(seed), 36);
    const ClusterLabels labels = label_clusters(field);
    long long mismatches = 0;
    for (int y = 1; y <= 36; ++y)
      for (int x = 1; x <= 36; ++x) {
        if (x == 1 && y == 1) continue;
        if (labels.at(x, y) != backtrack_geodesic(field, {x, y}).origin_side) ++mismatches;
      }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("labels fill two staircase-separated clusters") {
  const InterfaceProfile boundary = sampled_boundary(Params(0.55, 0.45), 40, 91);
  const PassageField field = compute_passage_times(boundary, WeightSource::hashed(91), 36);
  const ClusterLabels labels = label_clusters(field);
  for (int y = 1; y <= 36; ++y)
    for (int x = 1; x <= 36; ++x) {
      if (x == 1 && y == 1) continue;
      const std::uint8_t s = labels.at(x, y);
      CHECK((s == 1 || s == 2));
      // Within a row, label 2 only ever sits right of label 1; within a
      // column, label 1 only ever sits above label 2.
      if (x > 1 && !(x == 2 && y == 1)) {
        if (labels.at(x - 1, y) == 2) CHECK(s == 2);
      }
      if (y > 1 && !(x == 1 && y == 2)) {
        if (labels.at(x, y - 1) == 1) CHECK(s == 1);
      }
    }
}

TEST_CASE("the competition interface runs between the two clusters") {
  for (const std::uint64_t seed : {14ULL, 15ULL}) {
    const InterfaceProfile boundary = sampled_boundary(Params(0.5, 0.5), 40, seed);
    const PassageField field = compute_passage_times(boundary, WeightSource::hashed(seed ^ 3), 36);
    const ClusterLabels labels = label_clusters(field);
    const CompetitionPath path = trace_competition_interface(field, 34);

    CHECK(path.steps.front() == Site{1, 1});
    CHECK(path.steps.size() == 35);
    CHECK(path.event_times.front() == 0.0);
    for (size_t n = 1; n < path.steps.size(); ++n) {
      const Site d = path.steps[n] - path.steps[n - 1];
      CHECK((d == kRight || d == kUp));
      CHECK(path.event_times[n] > path.event_times[n - 1]);
      CHECK(path.event_times[n] == field.g(path.steps[n]));
    }
    CHECK(path.next_event_time > path.event_times.back());

    for (const Site phi : path.steps) {
      const Site above = phi + kUp, right = phi + kRight;
      if (above.x >= 1 && above.x <= 36 && above.y <= 36 && above != Site{1, 1})
        CHECK(labels.at(above.x, above.y) == 1);
      if (right.x <= 36 && right.y >= 1 && right.y <= 36 && right != Site{1, 1})
        CHECK(labels.at(right.x, right.y) == 2);
    }
  }
}

TEST_CASE("step-limited and time-limited traces agree on their common range") {
  const InterfaceProfile boundary = sampled_boundary(Params(0.8, 0.2), 40, 55);
  const QuadrantField field(boundary, WeightSource::hashed(56), 36);
  const CompetitionPath by_steps = trace_competition_interface(field, 34);
  const double t_mid = by_steps.event_times[20];
  const CompetitionPath by_time = trace_competition_interface_until(field, t_mid);
  REQUIRE(by_time.steps.size() == 21);
  for (size_t n = 0; n < by_time.steps.size(); ++n) {
    CHECK(by_time.steps[n] == by_steps.steps[n]);
    CHECK(by_time.event_times[n] == by_steps.event_times[n]);
  }
  CHECK(by_time.next_event_time == by_steps.event_times[21]);
}

TEST_CASE("the interface event process is a right-continuous step function") {
  const InterfaceProfile boundary = sampled_boundary(Params(0.5, 0.5), 20, 62);
  const QuadrantField field(boundary, WeightSource::hashed(63), 16);
  const CompetitionPath path = trace_competition_interface(field, 14);
  const CompetitionEventProcess psi = competition_event_process(path);

  CHECK(psi.at(0.0) == Site{1, 1});
  for (size_t n = 0; n < path.steps.size(); ++n) {
    const double t = path.event_times[n];
    CHECK(psi.at(t) == path.steps[n]);  // right continuity at the jump
    if (n + 1 < path.steps.size()) {
      const double before = 0.5 * (t + path.event_times[n + 1]);
      CHECK(psi.at(before) == path.steps[n]);
    }
  }
  CHECK_THROWS_AS(psi.at(psi.next_event_time()), std::out_of_range);
  CHECK_THROWS_AS(psi.at(-0.1), std::out_of_range);
}

TEST_CASE("interface tracing is identical on dense and quadrant fields") {
  const InterfaceProfile boundary = sampled_boundary(Params(0.7, 0.3), 30, 71);
  const WeightSource weights = WeightSource::hashed(72);
  const PassageField dense = compute_passage_times(boundary, weights, 26);
  const QuadrantField quad(boundary, weights, 26);
  const CompetitionPath a = trace_competition_interface(dense, 24);
  const CompetitionPath b = trace_competition_interface(quad, 24);
  REQUIRE(a.steps.size() == b.steps.size());
  for (size_t n = 0; n < a.steps.size(); ++n) {
    CHECK(a.steps[n] == b.steps[n]);
    CHECK(a.event_times[n] == b.event_times[n]);
  }
}

TEST_CASE("backward polymers follow the maximizing parent") {
  const InterfaceProfile boundary = sampled_boundary(Params(0.5, 0.5), 34, 81);
  const WeightSource weights = WeightSource::hashed(82);
  const PassageField field = compute_passage_times(boundary, weights, 30);

  const std::vector<Site> path = trace_backward_polymer(field, {30, 30}, 20);
  CHECK(path.size() == 21);
  CHECK(path.front() == Site{30, 30});
  for (size_t k = 1; k < path.size(); ++k) {
    const Site d = path[k - 1] - path[k];
    CHECK((d == kRight || d == kUp));
    // Each step picks the larger of the two parent passage times.
    const Site other = (d == kRight) ? path[k - 1] - kUp : path[k - 1] - kRight;
    CHECK(field.g(path[k]) >= field.g(other));
  }

  SUBCASE("a full-length polymer retraces the geodesic") {
    const Geodesic geo = backtrack_geodesic(field, {12, 9});
    const std::vector<Site> poly =
        trace_backward_polymer(field, {12, 9}, static_cast<int>(geo.path.size()) - 1);
    CHECK(poly == geo.path);
    CHECK_THROWS_AS(trace_backward_polymer(field, {12, 9}, static_cast<int>(geo.path.size()) + 4),
                    std::runtime_error);
  }
}

TEST_CASE("box sizing guards throw instead of truncating") {
  const InterfaceProfile boundary = sampled_boundary(Params(0.5, 0.5), 20, 90);
  const WeightSource weights = WeightSource::hashed(90);
  const PassageField field = compute_passage_times(boundary, weights, 16);
  // A meandering path can keep 16 steps inside a box of side 16, but after
  // 2*16-2 steps the walk sits on x+y = 31 and one candidate must lie outside.
  CHECK_THROWS_AS(trace_competition_interface(field, 30), std::runtime_error);
  CHECK_NOTHROW(trace_competition_interface(field, 14));
  CHECK_THROWS_AS(compute_passage_times(boundary, weights, 25), std::invalid_argument);
}
