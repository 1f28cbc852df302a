#ifndef COMPLAB_PROFILE_HPP_
#define COMPLAB_PROFILE_HPP_

#include <cstdint>
#include <vector>

#include "complab/geometry.hpp"
#include "complab/params.hpp"
#include "complab/rng.hpp"

namespace complab {

// Bi-indexed staircase path gamma(j), j in [j_min, j_max]; consecutive points
// differ by a right step (1,0) or a down step (0,-1) as j increases.
// Initial interfaces carry the forced corner gamma(0)=(1,1), gamma(1)=(1,0),
// gamma(-1)=(0,1); (1,1) is stored on the path but belongs to neither arm.
class InterfaceProfile {
 public:
  InterfaceProfile(int j_min, std::vector<Site> points);

  int j_min() const { return j_min_; }
  int j_max() const { return j_min_ + static_cast<int>(points_.size()) - 1; }
  Site at(int j) const;
  const std::vector<Site>& points() const { return points_; }

  // True when the forced-corner convention holds at indices -1, 0, 1.
  bool has_initial_corner() const;

  friend bool operator==(const InterfaceProfile& a, const InterfaceProfile& b) {
    return a.j_min_ == b.j_min_ && a.points_ == b.points_;
  }

 private:
  int j_min_;
  std::vector<Site> points_;
};

// Exclusion-process snapshot: occupancies over a site window, the marked
// pair's left site (the *hole; the *particle sits one to its right), and the
// pair labels (I, J).
struct TasepConfig {
  int j_lo = 0;
  std::vector<std::uint8_t> occupancy;  // site j -> occupancy[j - j_lo]
  int star_site = 0;
  long long label_i = 1;
  long long label_j = 1;

  int j_hi() const { return j_lo + static_cast<int>(occupancy.size()) - 1; }
  bool occupied(int j) const { return occupancy[static_cast<size_t>(j - j_lo)] != 0; }
};

// Draws the two-sided staircase: the negative arm walks up from (0,1) with
// probability lambda (left otherwise) until its y-coordinate exceeds
// `coverage`; the positive arm walks down from (1,0) with probability rho
// (right otherwise) until its x-coordinate exceeds `coverage`. The negative
// arm is drawn first.
InterfaceProfile sample_initial_interface(const Params& params, int coverage, Rng& rng);

// gamma(j) - gamma(j-1) = (1 - eta(j), -eta(j)): a down step at index j means
// site j holds a particle. Produces occupancies on [j_min+1, j_max].
TasepConfig interface_to_tasep(const InterfaceProfile& profile);

// Inverse map, anchored at gamma(0) = (1,1); the occupancy window must cover
// site 0.
InterfaceProfile tasep_to_interface(const TasepConfig& config);

}  // namespace complab

#endif  // COMPLAB_PROFILE_HPP_
