#include "racetrack/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "racetrack/error.hpp"

namespace racetrack {

namespace {

std::string describe(double x) { return std::to_string(x); }

bool all_finite(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void ModelParams::validate() const {
  if (!(mu > 0.0 && mu < 1.0)) throw ConfigError("mu", "mu must lie in (0, 1), got " + describe(mu));
  if (!(sigma > 1.0) || !std::isfinite(sigma)) {
    throw ConfigError("sigma", "sigma must be finite and > 1, got " + describe(sigma));
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ConfigError("tau", "tau must be finite and > 0, got " + describe(tau));
  }
  if (!(r >= 1.0) || !std::isfinite(r)) throw ConfigError("r", "r must be finite and >= 1, got " + describe(r));
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("v", "v must be finite and > 0, got " + describe(v));
}

DensityField::DensityField(const geometry::CircleGrid& grid, std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() != grid.size()) {
    throw ContractViolation("DensityField: " + std::to_string(values_.size()) +
                            " values for a grid of " + std::to_string(grid.size()));
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ContractViolation("DensityField: negative or non-finite value");
  }
  const double mass = geometry::integrate(values_, grid);
  if (std::abs(mass - 1.0) > 1e-12) {
    throw ContractViolation("DensityField: integral is " + describe(mass) + ", expected 1");
  }
}

DensityField DensityField::uniform(const geometry::CircleGrid& grid) {
  DensityField d;
  d.values_.assign(grid.size(), 1.0 / grid.circumference());
  return d;
}

DensityField DensityField::spike(const geometry::CircleGrid& grid, std::size_t node) {
  if (node >= grid.size()) throw ContractViolation("DensityField::spike: node out of range");
  DensityField d;
  d.values_.assign(grid.size(), 0.0);
  d.values_[node] = 1.0 / grid.weight();
  return d;
}

DensityField DensityField::normalized(const geometry::CircleGrid& grid, std::vector<double> raw) {
  if (raw.size() != grid.size()) throw ContractViolation("DensityField::normalized: size mismatch");
  for (double& v : raw) {
    if (!std::isfinite(v)) throw ContractViolation("DensityField::normalized: non-finite value");
    v = std::max(v, 0.0);
  }
  const double mass = geometry::integrate(raw, grid);
  if (!(mass > 0.0)) throw ContractViolation("DensityField::normalized: zero mass");
  DensityField d;
  d.values_ = std::move(raw);
  for (double& v : d.values_) v /= mass;
  return d;
}

DensityField DensityField::cosine_perturbed(const geometry::CircleGrid& grid, double amplitude,
                                            double peak) {
  std::vector<double> raw(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    raw[i] = (1.0 + amplitude * std::cos(grid.theta(i) - peak)) / grid.circumference();
  }
  return normalized(grid, std::move(raw));
}

std::vector<double> real_wage(std::span<const double> w, std::span<const double> G, double mu) {
  if (w.size() != G.size()) throw ContractViolation("real_wage: size mismatch");
  std::vector<double> omega(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0) || !(G[i] > 0.0)) throw ContractViolation("real_wage: w and G must be positive");
    omega[i] = w[i] * std::pow(G[i], -mu);
  }
  return omega;
}

StaticSolution solve_static(const DensityField& lambda, const DensityField& phi,
                            const ModelParams& params, const geometry::CircleGrid& grid,
                            const SolverOptions& options) {
  const geometry::ExponentialKernel kernel(grid, params.alpha());
  return solve_static(lambda, phi, params, kernel, options);
}

StaticSolution solve_static(const DensityField& lambda, const DensityField& phi,
                            const ModelParams& params, const geometry::ExponentialKernel& kernel,
                            const SolverOptions& options) {
  params.validate();
  const std::size_t n = kernel.size();
  if (lambda.size() != n || phi.size() != n) throw ContractViolation("solve_static: density size mismatch");
  if (!(options.tol > 0.0)) throw ContractViolation("solve_static: tol must be > 0");
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    throw ContractViolation("solve_static: damping must lie in (0, 1]");
  }

  const double mu = params.mu;
  const double sigma = params.sigma;
  std::vector<double> w = options.initial_wage.value_or(std::vector<double>(n, 1.0));
  if (w.size() != n) throw ContractViolation("solve_static: initial wage size mismatch");

  std::vector<double> G(n), Y(n), scratch(n), sums(n);

  // G and Y from the current w.
  auto update_price_and_income = [&] {
    for (std::size_t j = 0; j < n; ++j) scratch[j] = lambda[j] * std::pow(w[j], 1.0 - sigma);
    kernel.apply(scratch, sums);
    for (std::size_t i = 0; i < n; ++i) {
      G[i] = std::pow(sums[i], 1.0 / (1.0 - sigma));
      Y[i] = mu * lambda[i] * w[i] + (1.0 - mu) * phi[i];
    }
    if (!all_finite(G) || std::any_of(G.begin(), G.end(), [](double g) { return !(g > 0.0); })) {
      throw NumericalError("price index", "solve_static: price index G is not finite and positive");
    }
  };

  StaticSolution result;
  double residual = std::numeric_limits<double>::infinity();
  int iter = 0;
  for (; iter < options.max_iter; ++iter) {
    update_price_and_income();
    for (std::size_t j = 0; j < n; ++j) scratch[j] = Y[j] * std::pow(G[j], sigma - 1.0);
    kernel.apply(scratch, sums);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double target = std::pow(sums[i], 1.0 / sigma);
      if (!std::isfinite(target) || !(target > 0.0)) {
        throw NumericalError("nominal wage", "solve_static: nominal wage update is not finite and positive");
      }
      residual = std::max(residual, std::abs(target - w[i]) / w[i]);
      w[i] = (1.0 - options.damping) * w[i] + options.damping * target;
    }
    if (residual < options.tol) {
      ++iter;
      break;
    }
  }
  if (!(residual < options.tol)) {
    throw ConvergenceError("solve_static: no convergence after " + std::to_string(options.max_iter) +
                               " iterations, last residual " + describe(residual),
                           residual, options.max_iter);
  }

  update_price_and_income();
  result.fields.omega = real_wage(w, G, mu);
  result.fields.w = std::move(w);
  result.fields.G = std::move(G);
  result.fields.Y = std::move(Y);
  result.iterations = iter;
  result.residual = residual;
  return result;
}

}  // namespace racetrack
