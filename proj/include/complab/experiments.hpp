#ifndef COMPLAB_EXPERIMENTS_HPP_
#define COMPLAB_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "complab/hydro.hpp"
#include "complab/lpp.hpp"
#include "complab/params.hpp"
#include "complab/profile.hpp"
#include "complab/rng.hpp"
#include "complab/stats.hpp"
#include "complab/tasep.hpp"

namespace complab {

enum class ExperimentKind { inclination, speed, coupling, fluctuation, profile, duality };

const char* experiment_kind_name(ExperimentKind kind);

// One ensemble request: which law to probe, at what horizon, how many
// replicas, and the seed from which per-replica streams are derived.
struct ExperimentSpec {
  Params params;
  ExperimentKind kind = ExperimentKind::speed;
  double t_max = 0.0;                // horizon for time-driven experiments
  int n_steps = 0;                   // horizon for step-driven experiments
  int backward_from = 0;             // duality: polymer start (m, m)
  std::vector<double> observe_at;    // defaults to {t_max} when empty
  int replicas = 1;
  RngSpec rng;
  double bin_width = 0.05;           // profile binning
  int workers = 0;                   // 0: resolve from the environment

  void validate() const;
};

struct ReplicaRecord {
  std::uint64_t stream = 0;  // per-replica seed, kept for replay
  std::vector<double> values;
};

struct Ensemble {
  std::vector<std::string> columns;
  std::vector<ReplicaRecord> records;
  DensityProfile pooled;    // profile runs only
  int pooled_replicas = 0;  // replicas pooled into `pooled`

  std::vector<double> column(size_t index) const;
};

// Dispatches on spec.kind; replica i always runs on stream i and records are
// aggregated by replica index, so results do not depend on worker count.
Ensemble run_replicas(const ExperimentSpec& spec);

// Forward competition interfaces on quadrant fields:
// columns i_n, j_n, tan_alpha (= j_n / i_n).
Ensemble run_inclination(const ExperimentSpec& spec);

// Marker (second-class particle) simulation runs:
// columns x_at_<t> for each observation time, then label_i, label_j.
Ensemble run_marker(const ExperimentSpec& spec,
                    SecondClassInit init = SecondClassInit::standard);

// Pooled density profile at t_max; per-replica records keep the clean range.
Ensemble run_profile(const ExperimentSpec& spec);

// Exact cross-checks per replica: the direct simulation's pair identity, the
// replayed field's pair identity, the event-driven oracle against the sweep,
// and cluster labels against geodesic origins on a small box. Columns:
// direct_events, direct_violations, replay_events, replay_violations,
// oracle_equal, labels_equal.
Ensemble run_coupling(const ExperimentSpec& spec);

struct DualityOutcome {
  std::vector<double> forward_up_steps;   // competition interfaces, n_steps each
  std::vector<double> backward_up_steps;  // polymers from (backward_from, backward_from)
  TwoSampleKs ks;
};
DualityOutcome run_duality(const ExperimentSpec& spec);

struct ShapeCheck {
  double sup_distance = 0.0;       // sup over rescaled interface points of the
                                   // Euclidean distance to the limit shape
                                   // (fan arc plus its straight rays)
  double parabola_residual = 0.0;  // max |sqrt(x)+sqrt(y)-1| on the fan grid
};
// Single-realization shape theorem check at time t on a box of side box_side.
ShapeCheck check_limit_shape(const Params& params, double t, int box_side, const RngSpec& rng);

// Per-time sample variance (about the empirical mean) of the x_at_* columns
// of a marker ensemble, in observation order.
struct VarianceLadder {
  std::vector<double> times, variances;
};
VarianceLadder marker_variance_ladder(const Ensemble& ensemble,
                                      const std::vector<double>& observe_at);

}  // namespace complab

#endif  // COMPLAB_EXPERIMENTS_HPP_
