#include "complab/profile.hpp"

#include <algorithm>
#include <stdexcept>

namespace complab {

InterfaceProfile::InterfaceProfile(int j_min, std::vector<Site> points)
    : j_min_(j_min), points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("interface profile needs at least one point");
  for (size_t k = 1; k < points_.size(); ++k) {
    Site d = points_[k] - points_[k - 1];
    if (!(d == kRight) && !(d == Site{0, -1}))
      throw std::invalid_argument("interface increments must be right or down steps");
  }
}

Site InterfaceProfile::at(int j) const {
  if (j < j_min() || j > j_max()) throw std::out_of_range("interface index outside stored range");
  return points_[static_cast<size_t>(j - j_min_)];
}

bool InterfaceProfile::has_initial_corner() const {
  return j_min() <= -1 && j_max() >= 1 && at(0) == Site{1, 1} && at(1) == Site{1, 0} &&
         at(-1) == Site{0, 1};
}

InterfaceProfile sample_initial_interface(const Params& params, int coverage, Rng& rng) {
  params.validate();
  if (coverage < 1) throw std::invalid_argument("coverage must be positive");

  // Negative arm, sampled outward from (0,1): gamma(-1), gamma(-2), ...
  std::vector<Site> negative{Site{0, 1}};
  while (negative.back().y <= coverage) {
    Site p = negative.back();
    negative.push_back(rng.bernoulli(params.lambda) ? Site{p.x, p.y + 1} : Site{p.x - 1, p.y});
  }

  // Positive arm, sampled outward from (1,0): gamma(1), gamma(2), ...
  std::vector<Site> positive{Site{1, 0}};
  while (positive.back().x <= coverage) {
    Site p = positive.back();
    positive.push_back(rng.bernoulli(params.rho) ? Site{p.x, p.y - 1} : Site{p.x + 1, p.y});
  }

  std::vector<Site> points;
  points.reserve(negative.size() + positive.size() + 1);
  points.insert(points.end(), negative.rbegin(), negative.rend());
  points.push_back(Site{1, 1});
  points.insert(points.end(), positive.begin(), positive.end());
  return InterfaceProfile(-static_cast<int>(negative.size()), std::move(points));
}

TasepConfig interface_to_tasep(const InterfaceProfile& profile) {
  TasepConfig config;
  config.j_lo = profile.j_min() + 1;
  config.occupancy.reserve(profile.points().size() - 1);
  for (int j = profile.j_min() + 1; j <= profile.j_max(); ++j) {
    Site d = profile.at(j) - profile.at(j - 1);
    config.occupancy.push_back(d == Site{0, -1} ? 1 : 0);
  }
  return config;
}

InterfaceProfile tasep_to_interface(const TasepConfig& config) {
  if (config.j_lo > 0 || config.j_hi() < 0)
    throw std::invalid_argument("occupancy window must cover site 0 to anchor the interface");
  std::vector<Site> points(config.occupancy.size() + 1);
  const int base = config.j_lo - 1;  // gamma index of points[0]
  auto idx = [base](int j) { return static_cast<size_t>(j - base); };
  points[idx(0)] = Site{1, 1};
  for (int j = 1; j <= config.j_hi(); ++j) {
    Site d = config.occupied(j) ? Site{0, -1} : kRight;
    points[idx(j)] = points[idx(j - 1)] + d;
  }
  for (int j = 0; j > config.j_lo - 1; --j) {
    Site d = config.occupied(j) ? Site{0, -1} : kRight;
    points[idx(j - 1)] = points[idx(j)] - d;
  }
  return InterfaceProfile(base, std::move(points));
}

}  // namespace complab
