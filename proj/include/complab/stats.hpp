#ifndef COMPLAB_STATS_HPP_
#define COMPLAB_STATS_HPP_

#include <functional>
#include <vector>

#include "complab/tasep.hpp"

namespace complab {

// Sup distance between the sample's empirical CDF and a reference CDF.
double ks_distance(const std::vector<double>& sample, const std::function<double(double)>& cdf);

struct TwoSampleKs {
  double distance = 0.0;
  double p_value = 0.0;  // asymptotic Kolmogorov tail; conservative under ties
};
TwoSampleKs ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int points = 0;
};
// Ordinary least squares of log(variance) against log(time); the slope
// estimates twice the fluctuation exponent.
RegressionResult exponent_regression(const std::vector<double>& times,
                                     const std::vector<double>& variances);

struct NormalityResult {
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  bool pass = false;
};
// Moment-based screen: pass iff |skew| <= 0.15 and |excess kurtosis| <= 0.3
// (about three standard errors each at n = 2000). Requires n >= 100.
NormalityResult normality_check(const std::vector<double>& sample);

struct ProfileDistance {
  double l1 = 0.0;
  int used_bins = 0;
  int missing_bins = 0;  // bins with no clean sites, skipped
};
// Bin-width-weighted L1 distance between a binned density and a reference
// density, skipping bins whose centers fall inside [exclude_lo, exclude_hi]
// (pass an empty band, lo > hi, to exclude nothing).
ProfileDistance profile_l1(const DensityProfile& empirical,
                           const std::function<double(double)>& law, double exclude_lo = 1.0,
                           double exclude_hi = -1.0);

// Worker resolution: an explicit positive request wins, then the
// COMPETITION_LAB_WORKERS environment variable, then hardware concurrency.
int resolve_worker_count(int requested);

// Runs body(0..count-1) across a small thread pool. Replica work must only
// touch replica-owned state (e.g. results[i]); the first failure (lowest
// replica index) is rethrown with the index attached after all threads stop.
void parallel_for_replicas(int count, int workers, const std::function<void(int)>& body);

}  // namespace complab

#endif  // COMPLAB_STATS_HPP_
