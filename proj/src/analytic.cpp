#include "racetrack/analytic.hpp"

#include <cmath>

#include "racetrack/geometry.hpp"

namespace racetrack::analytic {

double log_mean_decay(double x) {
  if (x < 1e-4) {
    // ln(1 - x/2 + x^2/6 - x^3/24 + ...) = -x/2 + x^2/24 - x^4/2880 + O(x^6)
    const double x2 = x * x;
    return -0.5 * x + x2 / 24.0 - x2 * x2 / 2880.0;
  }
  return std::log(-std::expm1(-x)) - std::log(x);
}

double AgglomerationEquilibrium::price_index(double theta) const {
  return std::exp(tau * geometry::arc_distance(theta, x_star, r));
}

double dispersion_welfare(const ModelParams& p) {
  const double X = p.alpha() * geometry::kPi * p.r;
  return std::exp(p.mu / (p.sigma - 1.0) * log_mean_decay(X));
}

DispersionEquilibrium dispersion(const ModelParams& p) {
  p.validate();
  DispersionEquilibrium d;
  d.X = p.alpha() * geometry::kPi * p.r;
  const double log_ratio = log_mean_decay(d.X);
  d.lambda_bar = 1.0 / (geometry::kTwoPi * p.r);
  d.w_bar = 1.0;
  d.G_bar = std::exp(log_ratio / (1.0 - p.sigma));
  d.omega_bar = std::exp(p.mu / (p.sigma - 1.0) * log_ratio);
  return d;
}

AgglomerationEquilibrium agglomeration(const ModelParams& p, double x_star) {
  p.validate();
  AgglomerationEquilibrium a;
  a.x_star = geometry::wrap_angle(x_star);
  a.tau = p.tau;
  a.r = p.r;
  return a;
}

bool check_theorem1(const ModelParams& p) { return dispersion(p).omega_bar < 1.0; }

}  // namespace racetrack::analytic
