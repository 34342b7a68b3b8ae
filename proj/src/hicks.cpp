#include <algorithm>
#include <cmath>
#include <string>

#include "racetrack/analytic.hpp"
#include "racetrack/error.hpp"
#include "racetrack/welfare.hpp"

namespace racetrack::welfare {

double balance_gap(const CompensationSchemeD& scheme, const ModelParams& params,
                   const geometry::CircleGrid& grid) {
  const double phi_bar = 1.0 / grid.circumference();
  const double pay = (1.0 - params.mu) * phi_bar * geometry::integrate(scheme.T_D, grid);
  const double comp = params.mu * scheme.C_D_star +
                      (1.0 - params.mu) * phi_bar * geometry::integrate(scheme.C_D, grid);
  return pay - comp;
}

CompensationSchemeD random_scheme_D(const ModelParams& params, const geometry::CircleGrid& grid,
                                    std::mt19937_64& rng) {
  const WelfareReport report = welfare_report(params);
  const std::size_t n = grid.size();
  const double phi_bar = 1.0 / grid.circumference();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> share(0.05, 0.95);

  CompensationSchemeD scheme;
  scheme.C_D.assign(n, 0.0);
  scheme.T_D.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!report.in_gamma(grid.theta(i))) scheme.T_D[i] = unit(rng);
  }
  const double pay = (1.0 - params.mu) * phi_bar * geometry::integrate(scheme.T_D, grid);
  scheme.C_D_star = share(rng) * pay / params.mu;

  for (std::size_t i = 0; i < n; ++i) {
    if (report.in_gamma(grid.theta(i))) scheme.C_D[i] = unit(rng);
  }
  const double raw = (1.0 - params.mu) * phi_bar * geometry::integrate(scheme.C_D, grid);
  const double target = pay - params.mu * scheme.C_D_star;
  for (double& c : scheme.C_D) c *= target / raw;
  return scheme;
}

std::vector<double> hicks_excess_demand(const CompensationSchemeD& scheme, const ModelParams& params,
                                        const geometry::CircleGrid& grid) {
  const WelfareReport report = welfare_report(params);
  const std::size_t n = grid.size();
  if (scheme.C_D.size() != n || scheme.T_D.size() != n) {
    throw ContractViolation("hicks_excess_demand: transfer profiles do not match the grid");
  }
  if (!(scheme.C_D_star >= 0.0)) throw BalanceError("hicks_excess_demand: C_D_star must be >= 0");
  for (std::size_t i = 0; i < n; ++i) {
    const bool inside = report.in_gamma(grid.theta(i));
    if (!(scheme.C_D[i] >= 0.0) || !(scheme.T_D[i] >= 0.0)) {
      throw BalanceError("hicks_excess_demand: negative transfer at node " + std::to_string(i));
    }
    if ((inside && scheme.T_D[i] != 0.0) || (!inside && scheme.C_D[i] != 0.0)) {
      throw BalanceError("hicks_excess_demand: transfer on the wrong side of Gamma at node " +
                         std::to_string(i));
    }
  }
  const double phi_bar = 1.0 / grid.circumference();
  const double pay = (1.0 - params.mu) * phi_bar * geometry::integrate(scheme.T_D, grid);
  const double gap = balance_gap(scheme, params, grid);
  if (!(std::abs(gap) <= 1e-10 * std::max(1.0, pay))) {
    throw BalanceError("hicks_excess_demand: scheme does not balance, gap " + std::to_string(gap));
  }

  const double mu = params.mu;
  const double alpha = params.alpha();
  const double X = alpha * geometry::kPi * params.r;
  const double G_bar_pow = std::exp(-analytic::log_mean_decay(X));  // G_bar^{sigma-1}
  const double base = mu + mu * mu * scheme.C_D_star;

  std::vector<double> net(n);
  for (std::size_t j = 0; j < n; ++j) net[j] = scheme.C_D[j] - scheme.T_D[j];

  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (net[j] == 0.0) continue;
      acc += net[j] * std::exp(-alpha * geometry::arc_distance(grid.theta(i), grid.theta(j), params.r));
    }
    q[i] = base + G_bar_pow * mu * (1.0 - mu) * phi_bar * grid.weight() * acc;
  }
  return q;
}

double hicks_lower_bound(const ModelParams& params, double C_D_star) {
  const WelfareReport report = welfare_report(params);
  const double mu = params.mu;
  return mu - std::expm1(-params.alpha() * params.r * report.delta) * mu * mu * C_D_star;
}

}  // namespace racetrack::welfare
