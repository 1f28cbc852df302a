#ifndef COMPLAB_HYDRO_HPP_
#define COMPLAB_HYDRO_HPP_

#include <functional>
#include <utility>
#include <vector>

#include "complab/params.hpp"
#include "complab/rng.hpp"

namespace complab {

// Entropy solution of u_t + (u(1-u))_x = 0 with step data u(.,0) = lambda on
// r<0, rho on r>0; requires t > 0.
double burgers_u(const Params& params, double r, double t);

// Characteristic emanating from a at time 0, evaluated at time t. From the
// origin this is a fan interval (rarefaction), the shock position, or a single
// line (stationary); elsewhere it is a point, so lo == hi.
struct Characteristic {
  double lo = 0.0;
  double hi = 0.0;
  bool is_fan() const { return lo != hi; }
};
Characteristic characteristic(const Params& params, double a, double t);

// Angle in degrees swept from the positive-arm direction (1-rho, -rho)
// counterclockwise through the first quadrant to the negative-arm direction
// (lambda-1, lambda); lies in [90, 270) and is < 180 exactly when rho < lambda.
double sector_angle_deg(const Params& params);

// Rescaled growth interface gamma_t/t -> {(x(r), y(r))}: dx/dr = 1 - u(r,1),
// dy/dr = -u(r,1), anchored so that for lambda <= rho the wedge vertex sits at
// ((1-rho)(1-lambda), lambda*rho) and for lambda > rho the fan piece is
// x = (1+r)^2/4, y = (1-r)^2/4. Outside [r_lo, r_hi] the curve continues along
// the two straight boundary rays.
class LimitShape {
 public:
  explicit LimitShape(const Params& params);

  double r_lo() const { return r_lo_; }
  double r_hi() const { return r_hi_; }
  double x(double r) const;
  double y(double r) const;
  std::pair<double, double> point(double r) const { return {x(r), y(r)}; }

 private:
  Params params_;
  double r_lo_, r_hi_;  // ends of the curved/vertex piece
};
LimitShape limit_shape(const Params& params);

// Law of tan(alpha), the competition-interface inclination: a point mass at
// lambda*rho/((1-lambda)(1-rho)) when rho >= lambda, otherwise the pushforward
// of U ~ Unif[1-2*lambda, 1-2*rho] under g(u) = ((1-u)/(1+u))^2.
struct InclinationLaw {
  bool is_point_mass = false;
  double atom = 0.0;
  double u_lo = 0.0, u_hi = 0.0;  // U-support when continuous

  static double g(double u);
  static double g_inverse(double v);

  double cdf(double v) const;
  double quantile(double p) const;  // p in [0,1]
  double sample(Rng& rng) const;
};
InclinationLaw inclination_law(const Params& params);

// Law of the limiting speed X(t)/t of the second-class particle: a point mass
// at 1-lambda-rho when lambda <= rho, otherwise Unif[1-2*lambda, 1-2*rho].
struct SpeedLaw {
  bool is_point_mass = false;
  double atom = 0.0;
  double lo = 0.0, hi = 0.0;

  double cdf(double v) const;
  double quantile(double p) const;
  double sample(Rng& rng) const;
  double mean() const { return is_point_mass ? atom : 0.5 * (lo + hi); }
};
SpeedLaw second_class_speed_law(const Params& params);

// Law of psi(t)/t = (I(t), J(t))/t: deterministic ((1-rho)(1-lambda),
// lambda*rho) when lambda <= rho, otherwise the image of U under
// ((1+U)^2, (1-U)^2)/4.
struct PsiLimitLaw {
  bool is_point_mass = false;
  std::pair<double, double> atom{0.0, 0.0};
  double u_lo = 0.0, u_hi = 0.0;

  static std::pair<double, double> point_for(double u) {
    return {0.25 * (1.0 + u) * (1.0 + u), 0.25 * (1.0 - u) * (1.0 - u)};
  }
  std::pair<double, double> sample(Rng& rng) const;
};
PsiLimitLaw psi_limit_law(const Params& params);

// Adaptive Simpson quadrature; `breaks` lists interior kink abscissae the
// integrand is split at before refinement.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, const std::vector<double>& breaks = {});

}  // namespace complab

#endif  // COMPLAB_HYDRO_HPP_
