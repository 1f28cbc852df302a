#include "complab/params.hpp"

#include <cmath>

namespace complab {

double Params::theta_degrees() const {
  validate();
  const double kDeg = 180.0 / 3.14159265358979323846;
  double negative_arm = std::atan2(lambda, lambda - 1.0) * kDeg;  // in [90, 180)
  double positive_arm = std::atan2(-rho, 1.0 - rho) * kDeg;       // in (-90, 0]
  return negative_arm - positive_arm;
}

}  // namespace complab
