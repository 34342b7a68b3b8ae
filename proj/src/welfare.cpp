#include "racetrack/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "racetrack/analytic.hpp"
#include "racetrack/error.hpp"

namespace racetrack::welfare {

using geometry::kPi;

namespace {

// ln psi_D, defined for tau >= 0.
double log_psi_D(double tau, const ModelParams& p) {
  const double X = tau * (p.sigma - 1.0) * kPi * p.r;
  return p.mu / (p.sigma - 1.0) * analytic::log_mean_decay(X);
}

// ln chi = a + ln((1 - e^{-a}) / a), a = mu tau r pi; no overflow for large a.
double log_chi(double tau, const ModelParams& p) {
  const double a = p.mu * tau * p.r * kPi;
  return a + analytic::log_mean_decay(a);
}

// expm1(rate * x) / rate, finite as rate -> 0.
double expm1_over_rate(double rate, double x) {
  const double z = rate * x;
  if (std::abs(z) < 1e-8) return x * (1.0 + 0.5 * z);
  return std::expm1(z) / rate;
}

}  // namespace

double WelfareReport::psi_A(double theta) const {
  return std::exp(-params.mu * params.tau * params.r * std::abs(geometry::wrap_angle(theta)));
}

bool WelfareReport::in_gamma(double theta) const {
  return std::abs(geometry::wrap_angle(theta)) <= delta;
}

WelfareReport welfare_report(const ModelParams& params) {
  params.validate();
  WelfareReport report;
  report.params = params;
  const double log_psi = log_psi_D(params.tau, params);
  report.psi_D = std::exp(log_psi);
  report.delta = -log_psi / (params.mu * params.tau * params.r);
  if (!(report.delta > 0.0 && report.delta < kPi)) {
    throw Error("welfare_report: half-width of Gamma left (0, pi): " + std::to_string(report.delta));
  }
  return report;
}

double chi(const ModelParams& params) { return std::exp(log_chi(params.tau, params)); }

double CompensationSchemeA::C_A(double theta) const {
  const double t = std::abs(geometry::wrap_angle(theta));
  if (t <= delta) return 0.0;
  const double rate = params.mu * params.tau * params.r;
  return compensation_scale * std::expm1(std::log(psi_D) + rate * t);
}

double CompensationSchemeA::T_A(double theta) const {
  const double t = std::abs(geometry::wrap_angle(theta));
  if (t > delta) return 0.0;
  const double rate = params.mu * params.tau * params.r;
  return -payment_scale * std::expm1(std::log(psi_D) + rate * t);
}

double CompensationSchemeA::total_pay() const {
  // (1 - mu) / (2 pi r) * 2 r * integral_0^delta (1 - psi e^{a t}) dt
  const double rate = params.mu * params.tau * params.r;
  const double inside = delta - psi_D * expm1_over_rate(rate, delta);
  return params.mu * T_A_star + payment_scale * (1.0 - params.mu) / kPi * inside;
}

double CompensationSchemeA::total_comp() const {
  // (1 - mu) / (2 pi r) * 2 r * integral_delta^pi (psi e^{a t} - 1) dt
  const double rate = params.mu * params.tau * params.r;
  const double at_boundary = std::exp(std::log(psi_D) + rate * delta);
  const double outside = at_boundary * expm1_over_rate(rate, kPi - delta) - (kPi - delta);
  return compensation_scale * (1.0 - params.mu) / kPi * outside;
}

CompensationSchemeA scheme_A(const ModelParams& params) {
  const WelfareReport report = welfare_report(params);
  CompensationSchemeA scheme;
  scheme.params = params;
  scheme.psi_D = report.psi_D;
  scheme.delta = report.delta;
  scheme.T_A_star = (1.0 - params.mu) / params.mu *
                    std::expm1(log_psi_D(params.tau, params) + log_chi(params.tau, params));
  return scheme;
}

CompensationSchemeA zero_scheme_A(const ModelParams& params) {
  CompensationSchemeA scheme = scheme_A(params);
  scheme.T_A_star = 0.0;
  scheme.payment_scale = 0.0;
  scheme.compensation_scale = 0.0;
  return scheme;
}

double demand_after_comp_A(const CompensationSchemeA& scheme, const ModelParams& params,
                           const geometry::CircleGrid& grid) {
  params.validate();
  const double pay = scheme.total_pay();
  const double comp = scheme.total_comp();
  if (!(std::abs(pay - comp) <= 1e-10 * std::max({1.0, std::abs(pay), std::abs(comp)}))) {
    throw BalanceError("demand_after_comp_A: total payment " + std::to_string(pay) +
                       " differs from total compensation " + std::to_string(comp));
  }

  const double mu = params.mu;
  const double phi_bar = 1.0 / grid.circumference();
  const double alpha = params.alpha();

  // Manufacturing income sits entirely at the city, where G = 1 and the
  // kernel is 1.
  const double city = mu * mu * (1.0 - scheme.T_A_star);

  std::vector<double> integrand(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double theta = grid.theta(i);
    const double d = geometry::arc_distance(theta, 0.0, grid.radius());
    const double income = (1.0 - mu) * phi_bar * (1.0 - scheme.T_A(theta) + scheme.C_A(theta));
    const double log_G = params.tau * d;
    integrand[i] = mu * income * std::exp((params.sigma - 1.0) * log_G - alpha * d);
  }
  const std::size_t kinks[] = {grid.origin_node(), grid.antipode_node()};
  return city + geometry::integrate_with_kinks(integrand, grid, kinks);
}

double F(double tau, const ModelParams& params) {
  if (tau == 0.0) return 0.0;
  const double lp = log_psi_D(tau, params);
  const double lc = log_chi(tau, params);
  return -std::expm1(lp) - (1.0 - params.mu) / params.mu * std::expm1(lp + lc);
}

namespace {

template <typename Fn>
double central_first(Fn&& f, double tau, double rel_step) {
  const double h = std::min(rel_step * std::max(tau, 1.0), tau);
  return (f(tau + h) - f(tau - h)) / (2.0 * h);
}

template <typename Fn>
double central_second(Fn&& f, double tau, double rel_step) {
  const double h = std::min(rel_step * std::max(tau, 1.0), tau);
  const double f0 = f(tau);
  auto diff = [&](double step) { return (f(tau + step) - 2.0 * f0 + f(tau - step)) / (step * step); };
  const double coarse = diff(h);
  const double fine = diff(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

double F_prime(double tau, const ModelParams& params) {
  return central_first([&](double t) { return F(t, params); }, tau, 1e-6);
}

double F_second(double tau, const ModelParams& params) {
  return central_second([&](double t) { return F(t, params); }, tau, 1e-4);
}

double tau_K(const ModelParams& params, double tol, int max_doublings) {
  if (!(tol > 0.0)) throw ContractViolation("tau_K: tol must be > 0");
  ModelParams probe = params;
  probe.tau = 1.0;
  probe.validate();

  double lo = 1e-4;
  if (!(F(lo, params) > 0.0)) {
    throw BracketError("tau_K: F(1e-4) is not positive, no lower bracket");
  }
  double hi = lo;
  bool found = false;
  for (int k = 1; k <= max_doublings; ++k) {
    hi = 1e-4 * std::ldexp(1.0, k);
    if (F(hi, params) < 0.0) {
      found = true;
      break;
    }
    lo = hi;
  }
  if (!found) throw BracketError("tau_K: F stays positive up to tau = " + std::to_string(hi));

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (F(mid, params) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool LemmaReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.passed; });
}

LemmaReport lemma_suite(const ModelParams& params, std::span<const double> taus) {
  ModelParams probe = params;
  probe.tau = 1.0;
  probe.validate();

  auto psi = [&](double t) { return std::exp(log_psi_D(t, params)); };
  auto chi_of = [&](double t) { return std::exp(log_chi(t, params)); };
  auto d_psi = [&](double t) { return central_first(psi, t, 1e-6); };
  auto d_chi = [&](double t) { return central_first(chi_of, t, 1e-6); };

  LemmaReport report;
  auto sign_check = [&](std::string name, double tau, double value, bool positive) {
    report.checks.push_back({std::move(name), tau, value, 0.0, positive ? value > 0.0 : value < 0.0});
  };
  auto limit_check = [&](std::string name, double tau, double value, double target) {
    const double err = std::abs(value - target);
    const bool ok = target == 0.0 ? err <= 1e-4 : err <= 1e-4 * std::abs(target);
    report.checks.push_back({std::move(name), tau, value, target, ok});
  };

  for (double tau : taus) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ContractViolation("lemma_suite: sample taus must be positive");
    sign_check("dpsi_D/dtau < 0", tau, d_psi(tau), false);
    sign_check("dchi/dtau > 0", tau, d_chi(tau), true);
    sign_check("F'' < 0", tau, F_second(tau, params), false);
  }

  const double half_arc = params.mu * params.r * kPi / 2.0;
  limit_check("psi_D(0+) = 1", 1e-8, psi(1e-8), 1.0);
  limit_check("dpsi_D/dtau(0+) = -mu r pi / 2", 1e-6, d_psi(1e-6), -half_arc);
  limit_check("chi(0+) = 1", 1e-8, chi_of(1e-8), 1.0);
  limit_check("dchi/dtau(0+) = mu r pi / 2", 1e-6, d_chi(1e-6), half_arc);
  limit_check("F(0+) = 0", 1e-8, F(1e-8, params), 0.0);
  limit_check("psi_D(inf) = 0", 1e300, psi(1e300), 0.0);
  limit_check("dpsi_D/dtau(inf) = 0", 1e3, d_psi(1e3), 0.0);
  sign_check("F(inf) < 0", 1e3, F(1e3, params), false);
  return report;
}

}  // namespace racetrack::welfare
