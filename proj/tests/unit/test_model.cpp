#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "racetrack/error.hpp"
#include "racetrack/model.hpp"

using namespace racetrack;
using geometry::CircleGrid;
using geometry::kPi;

namespace {

// mpmath, 30 digits: closed forms at mu=0.4, sigma=5, tau=1, r=1.
constexpr double kGbar = 1.8827941690425397211;
constexpr double kOmegaBar = 0.77638808565539472892;

ModelParams base() { return ModelParams{0.4, 5.0, 1.0, 1.0, 1.0}; }

}  // namespace

TEST_CASE("ModelParams validation names the field") {
  auto field_of = [](ModelParams p) {
    try {
      p.validate();
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string{};
  };
  ModelParams p = base();
  CHECK(field_of(p).empty());
  p.mu = 1.0;
  CHECK(field_of(p) == "mu");
  p = base();
  p.sigma = 0.5;
  CHECK(field_of(p) == "sigma");
  p = base();
  p.tau = 0.0;
  CHECK(field_of(p) == "tau");
  p = base();
  p.r = 0.9;
  CHECK(field_of(p) == "r");
  p = base();
  p.v = -1.0;
  CHECK(field_of(p) == "v");
}

TEST_CASE("alpha follows tau and sigma") {
  ModelParams p = base();
  CHECK(p.alpha() == 4.0);
  p.tau = 0.5;
  CHECK(p.alpha() == 2.0);
  CHECK(p.with_tau(3.0).alpha() == 12.0);
}

TEST_CASE("DensityField construction") {
  const CircleGrid grid(2.0, 32);
  const auto u = DensityField::uniform(grid);
  CHECK(geometry::integrate(u.values(), grid) == doctest::Approx(1.0).epsilon(1e-14));
  const auto s = DensityField::spike(grid, 5);
  CHECK(s[5] * grid.weight() == doctest::Approx(1.0));
  CHECK(s[4] == 0.0);
  const auto c = DensityField::cosine_perturbed(grid, 0.3);
  CHECK(std::abs(geometry::integrate(c.values(), grid) - 1.0) < 1e-12);
  CHECK(*std::max_element(c.values().begin(), c.values().end()) == c[grid.origin_node()]);

  CHECK_THROWS_AS(DensityField(grid, std::vector<double>(32, 1.0)), ContractViolation);
  std::vector<double> neg(32, 1.0 / grid.circumference());
  neg[0] = -neg[0];
  neg[1] *= 3.0;
  CHECK_THROWS_AS(DensityField(grid, neg), ContractViolation);
  CHECK_THROWS_AS(DensityField(grid, std::vector<double>(31, 0.0)), ContractViolation);
}

TEST_CASE("real_wage") {
  const std::vector<double> one{1.0};
  CHECK(real_wage(one, one, 0.4)[0] == 1.0);
  const double d = 0.8;
  const std::vector<double> G{std::exp(1.0 * d)};
  CHECK(real_wage(one, G, 0.4)[0] == doctest::Approx(std::exp(-0.4 * d)).epsilon(1e-15));
  CHECK(real_wage(one, std::vector<double>{kGbar}, 0.4)[0] == doctest::Approx(kOmegaBar).epsilon(1e-14));
  CHECK_THROWS_AS(real_wage(std::vector<double>{0.0}, one, 0.4), ContractViolation);
  CHECK_THROWS_AS(real_wage(one, std::vector<double>{-1.0}, 0.4), ContractViolation);
}

TEST_CASE("solve_static on the uniform density reproduces the dispersion closed forms") {
  const ModelParams p = base();
  for (std::size_t n : {16u, 128u, 512u}) {
    const CircleGrid grid(1.0, n);
    const auto u = DensityField::uniform(grid);
    const StaticSolution sol = solve_static(u, u, p, grid);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(sol.fields.w[i] - 1.0) < 1e-12);
      CHECK(std::abs(sol.fields.G[i] - kGbar) < 1e-12);
      CHECK(std::abs(sol.fields.omega[i] - kOmegaBar) < 1e-12);
    }
    CHECK(geometry::integrate(sol.fields.Y, grid) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(sol.residual < 1e-10);
  }
}

TEST_CASE("solve_static on a spike reproduces the agglomeration closed forms") {
  const ModelParams p = base();
  const CircleGrid grid(1.0, 1024);
  const std::size_t city = grid.origin_node();
  const StaticSolution sol =
      solve_static(DensityField::spike(grid, city), DensityField::uniform(grid), p, grid);
  CHECK(sol.fields.w[city] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(sol.fields.omega[city] - 1.0) < 1e-3);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.node_separation(i, city) < 2) continue;
    const double exact = std::exp(p.tau * geometry::arc_distance(grid.theta(i), 0.0, 1.0));
    CHECK(std::abs(sol.fields.G[i] / exact - 1.0) < 1e-3);
  }
  // both analytic equilibria carry unit total income
  CHECK(geometry::integrate(sol.fields.Y, grid) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_static returned fields satisfy the wage equation") {
  ModelParams p = base();
  p.tau = 0.3;
  const CircleGrid grid(1.5, 128);
  const auto lambda = DensityField::cosine_perturbed(grid, 0.4, 1.0);
  const auto phi = DensityField::uniform(grid);
  const StaticSolution sol = solve_static(lambda, phi, p, grid);
  const geometry::ExponentialKernel kernel(grid, p.alpha());
  std::vector<double> src(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) src[j] = sol.fields.Y[j] * std::pow(sol.fields.G[j], p.sigma - 1.0);
  const auto sums = kernel.apply(src);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = std::pow(sums[i], 1.0 / p.sigma);
    CHECK(std::abs(w - sol.fields.w[i]) / sol.fields.w[i] < 1e-9);
    CHECK(sol.fields.Y[i] == doctest::Approx(p.mu * lambda[i] * sol.fields.w[i] + (1 - p.mu) * phi[i]));
    CHECK(sol.fields.omega[i] == doctest::Approx(sol.fields.w[i] * std::pow(sol.fields.G[i], -p.mu)));
  }
}

TEST_CASE("solve_static converges at second order under grid refinement") {
  ModelParams p = base();
  p.tau = 0.5;
  // w at theta = 0 and theta = pi/2, which are nodes of every grid below.
  auto probe = [&](std::size_t n) {
    const CircleGrid grid(1.0, n);
    const auto lambda = DensityField::cosine_perturbed(grid, 0.3);
    const auto sol = solve_static(lambda, DensityField::uniform(grid), p, grid);
    return std::vector<double>{sol.fields.w[n / 2], sol.fields.w[3 * n / 4], sol.fields.G[n / 2]};
  };
  const auto a = probe(64), b = probe(128), c = probe(256);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double coarse = std::abs(a[k] - b[k]);
    const double fine = std::abs(b[k] - c[k]);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.1));
  }
}

TEST_CASE("solve_static failure modes") {
  const ModelParams p = base();
  const CircleGrid grid(1.0, 32);
  const auto lambda = DensityField::cosine_perturbed(grid, 0.5);
  SolverOptions opts;
  opts.max_iter = 2;
  try {
    solve_static(lambda, DensityField::uniform(grid), p, grid, opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.residual() > opts.tol);
    CHECK(e.iterations() == 2);
  }

  // exp(-alpha d) underflows to zero far from a spike: the price index blows up
  ModelParams steep = p;
  steep.tau = 400.0;
  try {
    solve_static(DensityField::spike(grid, 16), DensityField::uniform(grid), steep, grid);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.equation() == "price index");
  }

  CHECK_THROWS_AS(solve_static(DensityField::uniform(grid), DensityField::uniform(CircleGrid(1.0, 16)), p, grid),
                  ContractViolation);
}
