#ifndef COMPLAB_TASEP_HPP_
#define COMPLAB_TASEP_HPP_

#include <cstdint>
#include <limits>
#include <vector>

#include "complab/lpp.hpp"
#include "complab/params.hpp"
#include "complab/profile.hpp"
#include "complab/rng.hpp"

namespace complab {

// Initial occupancies around the marked second-class particle at the origin.
enum class SecondClassInit {
  standard,  // Bernoulli(lambda) left of the origin, Bernoulli(rho) right of it
  isolated,  // empty lattice: the marker performs a rate-1 Poisson walk right
};

struct TrajectorySample {
  double time = 0.0;
  long long x = 0;        // marker position X(time)
  long long label_i = 1;  // label of the pair's hole: 1 + forward moves so far
  long long label_j = 1;  // label of the pair's particle: 1 + backward moves
};

struct PairEvent {
  double time = 0.0;
  long long x = 0;  // marker position after the move
  long long label_i = 1;
  long long label_j = 1;
  bool forward = false;  // true when the marker moved right
};

struct OccupancySnapshot {
  double time = 0.0;
  int site_lo = 0;                  // site index of cells[0]
  std::vector<std::uint8_t> cells;  // 0 hole, 1 particle, 2 marker
};

struct TasepTrajectory {
  std::vector<TrajectorySample> samples;  // one per requested observation time
  std::vector<PairEvent> pair_events;
  std::vector<OccupancySnapshot> snapshots;
  int window_lo = 0, window_hi = 0;  // simulated (or replayed) site range
  int clean_lo = 0, clean_hi = 0;    // sites provably unaffected by the edges
};

struct SecondClassOptions {
  double t_max = 0.0;
  std::vector<double> observe_at;  // ascending times within [0, t_max]
  SecondClassInit init = SecondClassInit::standard;
  bool keep_pair_events = false;
  bool keep_snapshots = false;     // one occupancy snapshot per observation
  int min_clean_radius = 0;        // widen the window so |site| <= radius stays clean
};

// Window radius sized so that the edge-influence fronts cannot reach the
// marker (nor the requested clean radius) before t_max, with a generous
// fluctuation allowance on top of the mean drifts involved.
int gillespie_window_radius(const Params& params, double t_max, SecondClassInit init,
                            int min_clean_radius);

// Direct continuous-time simulation on a finite window. Every eligible
// nearest-neighbour move carries rate 1: particles and the marker hop onto
// holes, and particles swap with a marker directly ahead of them. Two
// dominating rate-1 fronts started at the window edges bound how far edge
// effects can have travelled; the run aborts if a front comes near the
// marker's range, and [clean_lo, clean_hi] reports the untouched sites.
TasepTrajectory simulate_second_class(const Params& params, const SecondClassOptions& options,
                                      Rng& rng);

struct ReplayOptions {
  double t_max = 0.0;
  int diag_halfwidth = 0;  // replayed sites are [-diag_halfwidth-1, diag_halfwidth+1]
  std::vector<double> observe_at;
  bool keep_pair_events = true;
  bool keep_snapshots = false;  // snapshots keep the uncollapsed hole/particle picture
};

// Default sizing for the replay: how many diagonals around the origin to
// track for a horizon of t_max, and how large a passage-time box those
// diagonals need so that no tracked diagonal can grow past the rim by t_max.
int replay_diag_halfwidth(const Params& params, double t_max);
int replay_box_side(const Params& params, double t_max);

// Replays the growth events of a passage field (every interior site whose
// passage time is <= t_max, in time order) as exclusion moves: the event on
// diagonal j = x - y moves the particle on site j to site j + 1. Labels
// carried with every particle and hole are checked against the event's
// lattice coordinates at each move, the pair of labels adjacent to the
// marked hole-particle pair reproduces the marker trajectory, and exact
// influence fronts track how far the truncation at the window edges can have
// propagated inward; any inconsistency throws. Fails loudly (rather than
// silently truncating) when a tracked diagonal could have grown past the box
// rim before t_max.
TasepTrajectory derive_tasep_from_lpp(const PassageField& passage, const ReplayOptions& options);

// Empirical particle density binned in the rescaled coordinate r = site/t.
// Bin k covers r in [(k - 1/2) w, (k + 1/2) w); only sites inside
// [clean_lo, clean_hi] contribute, and the marker counts as a hole.
struct DensityProfile {
  double bin_width = 0.0;
  int k_lo = 0;  // centers are (k_lo + i) * bin_width
  std::vector<long long> particles, sites;

  size_t size() const { return sites.size(); }
  double center(size_t i) const { return (k_lo + static_cast<int>(i)) * bin_width; }
  double density(size_t i) const {
    return sites[i] > 0 ? static_cast<double>(particles[i]) / static_cast<double>(sites[i])
                        : std::numeric_limits<double>::quiet_NaN();
  }
  // Pools another profile with identical binning into this one.
  void accumulate(const DensityProfile& other);
};

DensityProfile density_profile(const OccupancySnapshot& snapshot, int clean_lo, int clean_hi,
                               double bin_width);

}  // namespace complab

#endif  // COMPLAB_TASEP_HPP_
