#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "racetrack/analytic.hpp"
#include "racetrack/error.hpp"
#include "racetrack/welfare.hpp"
#include "support/oracles.hpp"

using namespace racetrack;
using namespace racetrack::welfare;
using geometry::CircleGrid;
using geometry::kPi;

namespace {

ModelParams base(double tau = 0.5) { return ModelParams{0.4, 5.0, tau, 1.0, 1.0}; }

// mpmath, 30 digits, at mu=0.4, sigma=5, r=1.
constexpr double kPsiD = 0.831956914050713507577;
constexpr double kDelta = 0.919873127493040280346;
constexpr double kChi = 1.39174008856005968605;
constexpr double kTAStar = 0.236801683858640972377;
constexpr double kF = -0.0687585979093544799541;
constexpr double kTauK = 0.385053311483645007876;

}  // namespace

TEST_CASE("welfare report at tau = 0.5") {
  const WelfareReport rep = welfare_report(base());
  CHECK(rep.psi_D == doctest::Approx(kPsiD).epsilon(1e-14));
  CHECK(rep.delta == doctest::Approx(kDelta).epsilon(1e-14));
  CHECK(rep.omega_A == 1.0);
  CHECK(rep.psi_A(rep.delta) == doctest::Approx(rep.psi_D).epsilon(1e-14));
  CHECK(rep.psi_A(-rep.delta) == doctest::Approx(rep.psi_D).epsilon(1e-14));
  CHECK(rep.psi_A(0.0) == 1.0);
  CHECK(rep.in_gamma(rep.delta));
  CHECK(rep.in_gamma(0.0));
  CHECK_FALSE(rep.in_gamma(rep.delta + 1e-9));
  CHECK_FALSE(rep.in_gamma(kPi));
  CHECK(rep.psi_A(0.5) > rep.psi_D);
  CHECK(rep.psi_A(2.0) < rep.psi_D);
}

TEST_CASE("Gamma half-width stays in (0, pi) and tends to pi/2") {
  std::mt19937_64 rng(7);
  const oracle::ParamSampler sample;
  for (int k = 0; k < 300; ++k) {
    const ModelParams p = sample(rng);
    const WelfareReport rep = welfare_report(p);
    CHECK(rep.delta > 0.0);
    CHECK(rep.delta < kPi);
    // G_bar^{sigma-1} exp(-alpha r Delta) = 1
    const auto d = analytic::dispersion(p);
    CHECK((p.sigma - 1.0) * std::log(d.G_bar) - p.alpha() * p.r * rep.delta ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  }
  CHECK(welfare_report(base(1e-9)).delta == doctest::Approx(kPi / 2).epsilon(1e-6));
}

TEST_CASE("chi against quadrature") {
  CHECK(chi(base()) == doctest::Approx(kChi).epsilon(1e-14));
  CHECK(chi(base(0.0)) == 1.0);
  std::mt19937_64 rng(3);
  oracle::ParamSampler sample;
  sample.log_tau_hi = std::log(2.0);
  sample.r_hi = 3.0;
  for (int k = 0; k < 20; ++k) {
    const ModelParams p = sample(rng);
    const double ref = static_cast<double>(oracle::chi_quadrature(p.mu, p.tau, p.r));
    CHECK(chi(p) == doctest::Approx(ref).epsilon(1e-11));
  }
}

TEST_CASE("scheme A profiles and totals") {
  const CompensationSchemeA s = scheme_A(base());
  CHECK(s.T_A_star == doctest::Approx(kTAStar).epsilon(1e-13));
  CHECK(s.T_A(0.0) == doctest::Approx(1.0 - kPsiD).epsilon(1e-14));
  CHECK(s.C_A(0.0) == 0.0);
  CHECK(s.T_A(kPi) == 0.0);
  CHECK(s.C_A(kPi) == doctest::Approx(kPsiD * std::exp(0.4 * 0.5 * kPi) - 1.0).epsilon(1e-14));
  CHECK(std::abs(s.T_A(s.delta)) < 1e-15);
  CHECK(std::abs(s.total_pay() - s.total_comp()) < 1e-15);

  // Totals against an independent quadrature of the profiles.
  const long double mu = 0.4L, tau = 0.5L, psi = kPsiD, delta = kDelta;
  auto T = [&](long double s_) {
    const long double t = std::fabs(s_);
    return t <= delta ? 1.0L - psi * std::exp(mu * tau * t) : 0.0L;
  };
  auto C = [&](long double s_) {
    const long double t = std::fabs(s_);
    return t > delta ? psi * std::exp(mu * tau * t) - 1.0L : 0.0L;
  };
  const long double phi = 1.0L / (2.0L * oracle::kPiL);
  const long double pay = mu * kTAStar + (1 - mu) * phi * 2 * oracle::simpson(T, 0.0L, delta);
  const long double comp = (1 - mu) * phi * 2 * oracle::simpson(C, delta, oracle::kPiL);
  CHECK(s.total_pay() == doctest::Approx(static_cast<double>(pay)).epsilon(1e-12));
  CHECK(s.total_comp() == doctest::Approx(static_cast<double>(comp)).epsilon(1e-12));
}

TEST_CASE("demand at the city after scheme A equals mu") {
  const ModelParams p = base();
  const CompensationSchemeA s = scheme_A(p);
  for (std::size_t n : {256u, 1024u, 2048u}) {
    CHECK(std::abs(demand_after_comp_A(s, p, CircleGrid(1.0, n)) - p.mu) < 1e-8);
  }
  CHECK(demand_after_comp_A(zero_scheme_A(p), p, CircleGrid(1.0, 512)) == doctest::Approx(p.mu).epsilon(1e-10));
}

TEST_CASE("unbalanced scheme A is rejected") {
  const ModelParams p = base();
  CompensationSchemeA doubled = scheme_A(p);
  doubled.T_A_star *= 2.0;
  doubled.payment_scale = 2.0;
  CHECK(doubled.total_pay() == doctest::Approx(2.0 * doubled.total_comp()));
  CHECK_THROWS_AS(demand_after_comp_A(doubled, p, CircleGrid(1.0, 256)), BalanceError);

  CompensationSchemeA both = scheme_A(p);
  both.T_A_star *= 2.0;
  both.payment_scale = 2.0;
  both.compensation_scale = 2.0;
  CHECK_NOTHROW(demand_after_comp_A(both, p, CircleGrid(1.0, 256)));
}

TEST_CASE("F against closed-form and quadrature references") {
  const ModelParams p = base();
  CHECK(F(0.5, p) == doctest::Approx(kF).epsilon(1e-12));
  CHECK(F(0.0, p) == 0.0);
  CHECK(F(1e-8, p) > 0.0);
  CHECK(F(1e-8, p) < 1e-7);

  std::mt19937_64 rng(5);
  oracle::ParamSampler sample;
  sample.log_tau_hi = std::log(2.0);
  sample.r_hi = 3.0;
  for (int k = 0; k < 20; ++k) {
    const ModelParams q = sample(rng);
    const double ref = static_cast<double>(oracle::F_quadrature(q.mu, q.sigma, q.tau, q.r));
    CHECK(std::abs(F(q.tau, q) - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("F derivatives") {
  const ModelParams p = base();
  for (double tau : {0.01, 0.3, 1.0, 4.0}) {
    const long double h = 1e-4L;
    auto f = [&](long double t) { return oracle::F_quadrature(0.4L, 5.0L, t, 1.0L); };
    const double d1 = static_cast<double>((f(tau + h) - f(tau - h)) / (2 * h));
    CHECK(F_prime(tau, p) == doctest::Approx(d1).epsilon(1e-5));
    CHECK(F_second(tau, p) < 0.0);
  }
  CHECK(F_prime(1e-6, p) == doctest::Approx(0.4 * kPi / 2).epsilon(1e-4));
  CHECK(F_prime(1e-6, p) > 0.0);
  CHECK(F_prime(1.0, p) < 0.0);
}

TEST_CASE("tau_K") {
  const ModelParams p = base(1.0);
  const double root = tau_K(p);
  CHECK(root == doctest::Approx(kTauK).epsilon(1e-11));
  CHECK(std::abs(F(root, p)) < 1e-10);
  const double ref = oracle::bisect(
      [&](double t) { return static_cast<double>(oracle::F_quadrature(0.4L, 5.0L, t, 1.0L)); }, 0.1, 1.0, 1e-12);
  CHECK(root == doctest::Approx(ref).epsilon(1e-9));
  CHECK(F(0.99 * root, p) > 0.0);
  CHECK(F(1.01 * root, p) < 0.0);
  CHECK_THROWS_AS(tau_K(p, 1e-12, 2), BracketError);
  CHECK_THROWS_AS(tau_K(p, 0.0), ContractViolation);
}

TEST_CASE("tau_K on random parameters") {
  std::mt19937_64 rng(9);
  const oracle::ParamSampler sample;
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = sample(rng);
    const double root = tau_K(p);
    CHECK(root > 0.0);
    CHECK(std::abs(F(root, p)) < 1e-10);
    CHECK(F(0.5 * root, p) > 0.0);
    CHECK(F(2.0 * root, p) < 0.0);
  }
}

TEST_CASE("lemma suite") {
  const std::vector<double> taus{0.01, 0.1, 0.5, 1.0, 10.0};
  const LemmaReport rep = lemma_suite(base(), taus);
  CHECK(rep.checks.size() == 3 * taus.size() + 8);
  for (const auto& c : rep.checks) {
    INFO(c.name << " at tau=" << c.tau << " observed " << c.observed);
    CHECK(c.passed);
  }
  CHECK(rep.all_passed());

  std::mt19937_64 rng(13);
  const oracle::ParamSampler sample;
  // psi_D decays like X^{-mu/(sigma-1)}: for tiny exponents even tau = 1e300
  // leaves it far from 0, so that one probe is only asserted on steeper draws.
  for (int k = 0; k < 30; ++k) {
    const ModelParams q = sample(rng);
    const bool steep = q.mu / (q.sigma - 1.0) >= 0.02;
    for (const auto& c : lemma_suite(q, taus).checks) {
      if (c.name == "psi_D(inf) = 0" && !steep) continue;
      INFO(c.name << " mu=" << q.mu << " sigma=" << q.sigma << " r=" << q.r);
      CHECK(c.passed);
    }
  }

  const std::vector<double> bad{-1.0};
  CHECK_THROWS_AS(lemma_suite(base(), bad), ContractViolation);
}
