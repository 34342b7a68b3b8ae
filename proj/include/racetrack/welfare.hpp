#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "racetrack/geometry.hpp"
#include "racetrack/model.hpp"

namespace racetrack::welfare {

/// Welfare of (A) against (D), with the city at theta = 0.
///
/// Agricultural workers within angular half-width `delta` of the city are
/// better off at (A); the rest prefer (D).
struct WelfareReport {
  ModelParams params;
  double omega_A = 1.0;
  double psi_D = 0.0;  // = omega_D
  double delta = 0.0;

  /// Agricultural real wage at (A): exp(-mu tau r |theta|).
  double psi_A(double theta) const;
  /// Boundary nodes belong to Gamma.
  bool in_gamma(double theta) const;
};

WelfareReport welfare_report(const ModelParams& params);

/// chi(tau) = phi_bar * integral of exp(mu tau |x - x*|) over the circle.
/// Accepts tau = 0 (returns 1).
double chi(const ModelParams& params);

/// Transfers under (A): the manufacturing workers and the agricultural
/// workers inside Gamma pay, those outside are compensated up to psi_D.
///
/// The two scale factors multiply the payment profile T_A and the
/// compensation profile C_A; scheme_A() sets both to 1 (the exhaustive scheme).
struct CompensationSchemeA {
  ModelParams params;
  double psi_D = 0.0;
  double delta = 0.0;
  double T_A_star = 0.0;
  double payment_scale = 1.0;
  double compensation_scale = 1.0;

  /// Received per agricultural worker outside Gamma; 0 inside.
  double C_A(double theta) const;
  /// Paid per agricultural worker inside Gamma; 0 outside.
  double T_A(double theta) const;

  /// mu T_A* + (1 - mu) phi_bar * integral of T_A over Gamma (closed form).
  double total_pay() const;
  /// (1 - mu) phi_bar * integral of C_A outside Gamma (closed form).
  double total_comp() const;
};

CompensationSchemeA scheme_A(const ModelParams& params);

/// A scheme with no transfers at all.
CompensationSchemeA zero_scheme_A(const ModelParams& params);

/// Aggregate demand for one variety produced at the city after the (A)
/// transfers are paid. The delta mass at the city enters analytically; the
/// agricultural part is integrated on the grid. Throws BalanceError when the
/// scheme does not balance.
double demand_after_comp_A(const CompensationSchemeA& scheme, const ModelParams& params,
                           const geometry::CircleGrid& grid);

/// F(tau) = 1 - T_A*(tau) - psi_D(tau), evaluated without cancellation near 0.
/// `params.tau` is ignored. Accepts tau = 0 (returns 0).
double F(double tau, const ModelParams& params);

/// dF/dtau by central differences (step 1e-6 max(tau, 1), clamped to tau).
double F_prime(double tau, const ModelParams& params);
/// d2F/dtau2 by central second differences with one Richardson step
/// (step 1e-4 max(tau, 1), clamped to tau).
double F_second(double tau, const ModelParams& params);

/// Critical transport cost: the positive root of F. A geometric scan
/// tau = 1e-4 * 2^k finds the sign change, bisection refines it to `tol`.
/// Throws BracketError if F(1e-4) <= 0 or no sign change is found within
/// `max_doublings` steps.
double tau_K(const ModelParams& params, double tol = 1e-12, int max_doublings = 80);

/// Transfers under (D): agricultural workers outside Gamma pay T_D, the
/// manufacturing workers receive C_D_star, agricultural workers in Gamma
/// receive C_D. Node-sampled on a grid.
struct CompensationSchemeD {
  double C_D_star = 0.0;
  std::vector<double> C_D;  // zero outside Gamma
  std::vector<double> T_D;  // zero inside Gamma
};

/// (1 - mu) phi_bar * integral(T_D) - mu C_D* - (1 - mu) phi_bar * integral(C_D).
double balance_gap(const CompensationSchemeD& scheme, const ModelParams& params,
                   const geometry::CircleGrid& grid);

/// One draw of the randomized balanced family: T_D ~ U(0,1) outside Gamma,
/// C_D_star takes a fraction u ~ U(0.05, 0.95) of the total payment,
/// C_D ~ U(0,1) inside Gamma rescaled to close the balance.
CompensationSchemeD random_scheme_D(const ModelParams& params, const geometry::CircleGrid& grid,
                                    std::mt19937_64& rng);

/// Aggregate demand q(theta) at every node under a balanced (D) scheme,
/// using G_bar^{sigma-1} * integral of exp(-alpha |x - y|) dy = 2 pi r for the
/// untransferred part. Throws BalanceError on an unbalanced or sign-violating
/// scheme.
std::vector<double> hicks_excess_demand(const CompensationSchemeD& scheme, const ModelParams& params,
                                        const geometry::CircleGrid& grid);

/// mu + (1 - e^{-alpha r Delta}) mu^2 C_D*.
double hicks_lower_bound(const ModelParams& params, double C_D_star);

struct LemmaCheck {
  std::string name;
  double tau = 0.0;
  double observed = 0.0;
  double expected = 0.0;  // limit value, or the sign threshold 0
  bool passed = false;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  bool all_passed() const;
};

/// Finite-difference and limit checks of the shape of psi_D, chi and F.
/// At every sampled tau: dpsi_D/dtau < 0, dchi/dtau > 0, F'' < 0. Limits:
/// psi_D(0+) = 1, dpsi_D/dtau(0+) = -mu r pi / 2, dchi/dtau(0+) = mu r pi / 2,
/// F(0+) = 0, chi(0+) = 1, psi_D(inf) = 0, dpsi_D/dtau(inf) = 0, F(inf) < 0.
/// Limit tolerance: 1e-4, relative for nonzero targets, absolute otherwise.
LemmaReport lemma_suite(const ModelParams& params, std::span<const double> taus);

}  // namespace racetrack::welfare
