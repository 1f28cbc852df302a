#ifndef COMPLAB_ACCEPTANCE_HPP_
#define COMPLAB_ACCEPTANCE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace complab {

struct CriterionResult {
  std::string id;      // "A1" .. "A12"
  std::string name;    // short label of what is being checked
  bool pass = false;
  double measured = 0.0;  // headline statistic
  double limit = 0.0;     // threshold it was held against
  std::string detail;     // full measurements, human-readable
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t master_seed = 0xC0DE5EEDULL;
  int workers = 0;             // 0: resolve from the environment
  std::ostream* log = nullptr; // one line per criterion as results land
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  double total_seconds = 0.0;

  bool all_pass() const {
    for (const CriterionResult& c : criteria)
      if (!c.pass) return false;
    return !criteria.empty();
  }
};

// Runs the full verification suite (A1-A12) at its published scales. Shared
// ensembles are computed once and reused; every criterion reports its own
// pass/fail verdict and wall-clock cost.
AcceptanceReport run_acceptance(const AcceptanceOptions& options);

}  // namespace complab

#endif  // COMPLAB_ACCEPTANCE_HPP_
