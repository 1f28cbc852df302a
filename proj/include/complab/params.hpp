#ifndef COMPLAB_PARAMS_HPP_
#define COMPLAB_PARAMS_HPP_

#include <stdexcept>
#include <string>

namespace complab {

// Which hydrodynamic picture the density pair selects.
enum class Regime { shock, stationary, rarefaction };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::shock: return "shock";
    case Regime::stationary: return "stationary";
    case Regime::rarefaction: return "rarefaction";
  }
  return "?";
}

// Densities of the two boundary arms: lambda in (0,1], rho in [0,1).
struct Params {
  double lambda = 0.5;
  double rho = 0.5;

  Params() = default;
  Params(double lam, double r) : lambda(lam), rho(r) { validate(); }

  void validate() const {
    if (!(lambda > 0.0) || !(lambda <= 1.0))
      throw std::invalid_argument("lambda must lie in (0,1], got " + std::to_string(lambda));
    if (!(rho >= 0.0) || !(rho < 1.0))
      throw std::invalid_argument("rho must lie in [0,1), got " + std::to_string(rho));
  }

  Regime regime() const {
    if (lambda < rho) return Regime::shock;
    if (lambda > rho) return Regime::rarefaction;
    return Regime::stationary;
  }

  // Sector angle in degrees: swept from the positive-arm direction
  // (1-rho, -rho) counterclockwise through the first quadrant to the
  // negative-arm direction (lambda-1, lambda). Lies in [90, 270), and is
  // below 180 exactly when rho < lambda.
  double theta_degrees() const;
};

}  // namespace complab

#endif  // COMPLAB_PARAMS_HPP_
