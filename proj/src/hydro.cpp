#include "complab/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace complab {

double burgers_u(const Params& params, double r, double t) {
  params.validate();
  if (!(t > 0.0)) throw std::invalid_argument("burgers_u needs t > 0");
  const double lam = params.lambda, rho = params.rho;
  if (lam < rho) return r <= (1.0 - lam - rho) * t ? lam : rho;  // shock
  if (lam == rho) return lam;
  if (r <= (1.0 - 2.0 * lam) * t) return lam;  // outside the fan, left
  if (r > (1.0 - 2.0 * rho) * t) return rho;   // outside the fan, right
  return 0.5 * (1.0 - r / t);                  // rarefaction fan
}

Characteristic characteristic(const Params& params, double a, double t) {
  params.validate();
  if (!(t >= 0.0)) throw std::invalid_argument("characteristic needs t >= 0");
  const double lam = params.lambda, rho = params.rho;
  if (a < 0.0) return {a + (1.0 - 2.0 * lam) * t, a + (1.0 - 2.0 * lam) * t};
  if (a > 0.0) return {a + (1.0 - 2.0 * rho) * t, a + (1.0 - 2.0 * rho) * t};
  switch (params.regime()) {
    case Regime::rarefaction: return {(1.0 - 2.0 * lam) * t, (1.0 - 2.0 * rho) * t};
    case Regime::shock: {
      double s = (1.0 - lam - rho) * t;
      return {s, s};
    }
    case Regime::stationary: {
      double s = (1.0 - 2.0 * lam) * t;
      return {s, s};
    }
  }
  return {0.0, 0.0};
}

double sector_angle_deg(const Params& params) { return params.theta_degrees(); }

LimitShape::LimitShape(const Params& params) : params_(params) {
  params_.validate();
  const double lam = params_.lambda, rho = params_.rho;
  if (lam > rho) {
    r_lo_ = 1.0 - 2.0 * lam;
    r_hi_ = 1.0 - 2.0 * rho;
  } else {
    r_lo_ = r_hi_ = 1.0 - lam - rho;  // wedge vertex
  }
}

double LimitShape::x(double r) const {
  const double lam = params_.lambda, rho = params_.rho;
  if (r <= r_lo_) {
    double x0 = lam > rho ? 0.25 * (1.0 + r_lo_) * (1.0 + r_lo_) : (1.0 - rho) * (1.0 - lam);
    return x0 + (r - r_lo_) * (1.0 - lam);
  }
  if (r >= r_hi_) {
    double x1 = lam > rho ? 0.25 * (1.0 + r_hi_) * (1.0 + r_hi_) : (1.0 - rho) * (1.0 - lam);
    return x1 + (r - r_hi_) * (1.0 - rho);
  }
  return 0.25 * (1.0 + r) * (1.0 + r);
}

double LimitShape::y(double r) const {
  const double lam = params_.lambda, rho = params_.rho;
  if (r <= r_lo_) {
    double y0 = lam > rho ? 0.25 * (1.0 - r_lo_) * (1.0 - r_lo_) : lam * rho;
    return y0 - (r - r_lo_) * lam;
  }
  if (r >= r_hi_) {
    double y1 = lam > rho ? 0.25 * (1.0 - r_hi_) * (1.0 - r_hi_) : lam * rho;
    return y1 - (r - r_hi_) * rho;
  }
  return 0.25 * (1.0 - r) * (1.0 - r);
}

LimitShape limit_shape(const Params& params) { return LimitShape(params); }

double InclinationLaw::g(double u) {
  double s = (1.0 - u) / (1.0 + u);
  return s * s;
}

double InclinationLaw::g_inverse(double v) {
  double s = std::sqrt(v);
  return (1.0 - s) / (1.0 + s);
}

double InclinationLaw::cdf(double v) const {
  if (is_point_mass) return v >= atom ? 1.0 : 0.0;
  if (v <= 0.0) return 0.0;
  double u = g_inverse(v);  // g is decreasing: {T <= v} = {U >= u}
  double c = (u_hi - u) / (u_hi - u_lo);
  return std::clamp(c, 0.0, 1.0);
}

double InclinationLaw::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile needs p in [0,1]");
  if (is_point_mass) return atom;
  return g(u_lo + (1.0 - p) * (u_hi - u_lo));
}

double InclinationLaw::sample(Rng& rng) const {
  if (is_point_mass) return atom;
  return g(u_lo + rng.uniform01() * (u_hi - u_lo));
}

InclinationLaw inclination_law(const Params& params) {
  params.validate();
  InclinationLaw law;
  if (params.rho >= params.lambda) {
    law.is_point_mass = true;
    law.atom = params.lambda * params.rho / ((1.0 - params.lambda) * (1.0 - params.rho));
  } else {
    law.u_lo = 1.0 - 2.0 * params.lambda;
    law.u_hi = 1.0 - 2.0 * params.rho;
  }
  return law;
}

double SpeedLaw::cdf(double v) const {
  if (is_point_mass) return v >= atom ? 1.0 : 0.0;
  return std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
}

double SpeedLaw::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile needs p in [0,1]");
  return is_point_mass ? atom : lo + p * (hi - lo);
}

double SpeedLaw::sample(Rng& rng) const {
  return is_point_mass ? atom : lo + rng.uniform01() * (hi - lo);
}

SpeedLaw second_class_speed_law(const Params& params) {
  params.validate();
  SpeedLaw law;
  if (params.lambda <= params.rho) {
    law.is_point_mass = true;
    law.atom = 1.0 - params.lambda - params.rho;
  } else {
    law.lo = 1.0 - 2.0 * params.lambda;
    law.hi = 1.0 - 2.0 * params.rho;
  }
  return law;
}

std::pair<double, double> PsiLimitLaw::sample(Rng& rng) const {
  if (is_point_mass) return atom;
  return point_for(u_lo + rng.uniform01() * (u_hi - u_lo));
}

PsiLimitLaw psi_limit_law(const Params& params) {
  params.validate();
  PsiLimitLaw law;
  if (params.lambda <= params.rho) {
    law.is_point_mass = true;
    law.atom = {(1.0 - params.rho) * (1.0 - params.lambda), params.lambda * params.rho};
  } else {
    law.u_lo = 1.0 - 2.0 * params.lambda;
    law.u_hi = 1.0 - 2.0 * params.rho;
  }
  return law;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b, double fb,
               double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b, double fb,
             double m, double fm, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, fa, m, fm, lm, flm);
  double right = simpson(f, m, fm, b, fb, rm, frm);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                          const std::vector<double>& breaks) {
  if (a == b) return 0.0;
  std::vector<double> knots{a};
  for (double c : breaks)
    if (c > a && c < b) knots.push_back(c);
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  double total = 0.0;
  for (size_t k = 0; k + 1 < knots.size(); ++k) {
    double lo = knots[k], hi = knots[k + 1];
    if (lo == hi) continue;
    double m = 0.5 * (lo + hi);
    double flo = f(lo), fhi = f(hi), fm = f(m);
    total += adapt(f, lo, flo, hi, fhi, m, fm, simpson(f, lo, flo, hi, fhi, m, fm), tol, 48);
  }
  return total;
}

}  // namespace complab
