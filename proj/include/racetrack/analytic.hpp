#pragma once

#include "racetrack/model.hpp"

namespace racetrack::analytic {

/// ln((1 - e^{-x}) / x) for x >= 0, with the x -> 0 limit (0) handled by series.
double log_mean_decay(double x);

/// All manufacturing workers at one point x_star.
struct AgglomerationEquilibrium {
  double x_star = 0.0;
  double tau = 0.0;
  double r = 1.0;
  double w_star = 1.0;
  double G_star = 1.0;
  double omega_star = 1.0;

  /// G(theta) = exp(tau * arc distance to the city).
  double price_index(double theta) const;
};

/// Manufacturing workers spread evenly; every field is constant.
struct DispersionEquilibrium {
  double lambda_bar = 0.0;
  double w_bar = 1.0;
  double G_bar = 0.0;
  double omega_bar = 0.0;
  double X = 0.0;  // alpha * pi * r
};

DispersionEquilibrium dispersion(const ModelParams& params);
AgglomerationEquilibrium agglomeration(const ModelParams& params, double x_star = 0.0);

/// Real wage at the dispersion equilibrium, common to both worker types.
/// Accepts tau = 0 (returns the limit 1).
double dispersion_welfare(const ModelParams& params);

/// True when the dispersion real wage is below the agglomeration one (= 1).
bool check_theorem1(const ModelParams& params);

}  // namespace racetrack::analytic
