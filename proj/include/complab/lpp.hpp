#ifndef COMPLAB_LPP_HPP_
#define COMPLAB_LPP_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "complab/geometry.hpp"
#include "complab/profile.hpp"
#include "complab/weights.hpp"

namespace complab {

// Per-column extents of the sector carved out by a staircase boundary:
// column x holds boundary cells on [y_bot(x), y_top(x)], and sites strictly
// above y_top(x) are interior. Row-wise the same data gives x_right(y), the
// rightmost boundary cell of row y, so row-interior means x > x_right(y).
class SectorGeometry {
 public:
  explicit SectorGeometry(const InterfaceProfile& boundary);

  int x_min() const { return x_min_; }
  int x_max() const { return x_min_ + static_cast<int>(y_top_.size()) - 1; }
  int y_min() const { return y_min_; }
  int y_max() const { return y_min_ + static_cast<int>(x_right_.size()) - 1; }

  int y_top(int x) const { return y_top_[static_cast<size_t>(x - x_min_)]; }
  int y_bot(int x) const { return y_bot_[static_cast<size_t>(x - x_min_)]; }
  int x_right(int y) const { return x_right_[static_cast<size_t>(y - y_min_)]; }

  bool on_boundary(Site z) const {
    return z.x >= x_min_ && z.x <= x_max() && z.y >= y_bot(z.x) && z.y <= y_top(z.x);
  }
  // Strictly inside the sector (above the boundary staircase).
  bool is_interior(Site z) const { return z.x >= x_min_ && z.x <= x_max() && z.y > y_top(z.x); }

 private:
  int x_min_, y_min_;
  std::vector<int> y_top_, y_bot_;  // by column
  std::vector<int> x_right_;        // by row
};

// Read-only view of computed passage times. g() is defined on every interior
// site the implementation stores plus the boundary staircase (where it is 0);
// covers() says which sites those are.
class PassageView {
 public:
  virtual ~PassageView() = default;

  virtual double g(Site z) const = 0;
  virtual bool covers(Site z) const = 0;
  virtual int box_side() const = 0;
  virtual const InterfaceProfile& boundary() const = 0;
  virtual const SectorGeometry& geometry() const = 0;

  // Largest time for which level sets are certainly contained in the stored
  // region: the minimum passage time on the region's top row and right
  // column.
  virtual double safe_horizon() const = 0;
};

// Dense passage times over the whole truncated sector: every interior site
// (x, y) with x <= box_side and y <= box_side, both trapezoidal wings
// included. Supports cluster labeling, geodesics from any interior site,
// growth-interface extraction, and exclusion-trajectory replay.
class PassageField final : public PassageView {
 public:
  double g(Site z) const override;
  bool covers(Site z) const override;
  int box_side() const override { return box_side_; }
  const InterfaceProfile& boundary() const override { return boundary_; }
  const SectorGeometry& geometry() const override { return geom_; }
  double safe_horizon() const override { return safe_horizon_; }

  long long interior_site_count() const { return interior_count_; }

  // The weight source the field was built from (a stored-field source keeps
  // only a pointer, so the field it wraps must stay alive). Lets geodesics
  // re-read the weights they collect.
  const WeightSource& weights() const { return weights_; }

 private:
  friend PassageField compute_passage_times(const InterfaceProfile& boundary,
                                            const WeightSource& weights, int box_side);
  friend PassageField event_driven_growth(const InterfaceProfile& boundary,
                                          const WeightSource& weights, int box_side);
  PassageField(const InterfaceProfile& boundary, const WeightSource& weights, int box_side);

  double& cell(int x, int y) { return rect_[index(x, y)]; }
  size_t index(int x, int y) const {
    return static_cast<size_t>(y - y_lo_) * static_cast<size_t>(rect_width_) +
           static_cast<size_t>(x - x_lo_);
  }
  void finish();

  InterfaceProfile boundary_;
  SectorGeometry geom_;
  WeightSource weights_;
  int box_side_;
  int x_lo_, y_lo_, rect_width_;
  std::vector<double> rect_;
  double safe_horizon_ = 0.0;
  long long interior_count_ = 0;
};

// Passage times stored on the first-quadrant box [1, L]^2 only, with the two
// trapezoidal wings swept in O(L) memory to supply the column-0 and row-0
// values the box recursion reads. Fits forward/backward path tracing at box
// sides where the dense field would not.
class QuadrantField final : public PassageView {
 public:
  QuadrantField(const InterfaceProfile& boundary, const WeightSource& weights, int box_side);

  double g(Site z) const override;
  bool covers(Site z) const override;
  int box_side() const override { return box_side_; }
  const InterfaceProfile& boundary() const override { return boundary_; }
  const SectorGeometry& geometry() const override { return geom_; }
  double safe_horizon() const override { return safe_horizon_; }

 private:
  InterfaceProfile boundary_;
  SectorGeometry geom_;
  int box_side_;
  std::vector<double> quad_;  // row-major over [1, L]^2
  std::vector<double> col0_;  // G(0, y), y in [0, L]
  std::vector<double> row0_;  // G(x, 0), x in [0, L]
  double safe_horizon_ = 0.0;
};

// One-sweep recursion G(z) = max(G(z-(1,0)), G(z-(0,1))) + w(z) over the
// truncated sector, G = 0 on the boundary staircase. The boundary must reach
// past box_side on both arms (sample_initial_interface with
// coverage >= box_side guarantees that); a stored WeightField must cover
// every interior site or the sweep throws.
PassageField compute_passage_times(const InterfaceProfile& boundary, const WeightSource& weights,
                                   int box_side);

// Continuous-time dynamics oracle: vacant sites activate a stored waiting
// time after both down-left neighbors are occupied, driven by a priority
// queue of activation events. Produces bit-identical values to
// compute_passage_times on the same weights.
PassageField event_driven_growth(const InterfaceProfile& boundary, const WeightSource& weights,
                                 int box_side);

// Cluster membership over the box [1, L]^2: each site joins the cluster of
// its most recently occupied down-left neighbor; column-0 neighbors seed
// label 1 (upper arm side), row-0 neighbors label 2 (lower arm side). The
// corner (1,1) is boundary and carries no label.
struct ClusterLabels {
  int box_side = 0;
  std::vector<std::uint8_t> sigma;  // row-major over [1, L]^2; 0 at (1,1)

  std::uint8_t at(int x, int y) const {
    return sigma[static_cast<size_t>(y - 1) * static_cast<size_t>(box_side) +
                 static_cast<size_t>(x - 1)];
  }
};
ClusterLabels label_clusters(const PassageView& passage);

// The competition interface: phi_0 = (1,1) and phi_{n+1} is whichever of
// phi_n + (1,0), phi_n + (0,1) has the smaller passage time. event_times[n]
// is G(phi_n) (0 for n = 0); next_event_time is the passage time of the step
// that was *not* taken at the end of the trace, so the path's step function
// is known on [0, next_event_time).
struct CompetitionPath {
  std::vector<Site> steps;
  std::vector<double> event_times;
  double next_event_time = 0.0;
};

// Traces exactly n_steps steps. Throws if the path would need a passage time
// outside the stored box: callers must size the box as n_steps + 2.
CompetitionPath trace_competition_interface(const PassageView& passage, int n_steps);

// Traces until the next event time would exceed t_max (so the returned path
// determines psi(t) for all t <= t_max), with the same box requirement.
CompetitionPath trace_competition_interface_until(const PassageView& passage, double t_max);

// Right-continuous step function psi(t) = phi_n for t in
// [G(phi_n), G(phi_{n+1})). Queries at or past next_event_time throw rather
// than extrapolate.
class CompetitionEventProcess {
 public:
  explicit CompetitionEventProcess(CompetitionPath path);

  Site at(double t) const;
  double last_event_time() const { return path_.event_times.back(); }
  double next_event_time() const { return path_.next_event_time; }
  const CompetitionPath& path() const { return path_; }

 private:
  CompetitionPath path_;
};
CompetitionEventProcess competition_event_process(CompetitionPath path);

// Down-left maximizing path from z to the boundary. origin_side is 1 when the
// path lands on the upper arm (x <= 0), 2 on the lower arm (y <= 0); the
// forced corner (1,1) is never reached. energy is the sum of the weights
// collected along the path, which equals G(z) up to summation round-off.
struct Geodesic {
  std::vector<Site> path;  // from z down to the boundary point
  double energy = 0.0;
  int origin_side = 0;
  Site origin{0, 0};
};
Geodesic backtrack_geodesic(const PassageField& passage, Site z);

// First n_steps of the backward maximizing path from z, for fields that may
// not store enough of the wings to reach the boundary. Throws when a needed
// neighbor value is unavailable before n_steps are done.
std::vector<Site> trace_backward_polymer(const PassageView& passage, Site z, int n_steps);

// The growth interface at time t: the staircase separating
// {z : occupied by time t} from its complement, anchored like the initial
// profile by index j = x - y. Requires t < safe_horizon(); t = 0 returns the
// stored boundary truncated to the computed column range.
InterfaceProfile growth_interface_at(const PassageField& passage, double t);

}  // namespace complab

#endif  // COMPLAB_LPP_HPP_
