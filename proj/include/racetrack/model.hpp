#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "racetrack/geometry.hpp"

namespace racetrack {

/// Economy primitives.
struct ModelParams {
  double mu = 0.4;     // manufacturing share, in (0, 1)
  double sigma = 5.0;  // elasticity of substitution, > 1
  double tau = 1.0;    // transport-cost rate per unit length, > 0
  double r = 1.0;      // radius of the circle, >= 1
  double v = 1.0;      // adjustment speed, > 0

  /// alpha = tau (sigma - 1); derived on every call.
  double alpha() const noexcept { return tau * (sigma - 1.0); }

  ModelParams with_tau(double new_tau) const {
    ModelParams p = *this;
    p.tau = new_tau;
    return p;
  }

  /// Throws ConfigError naming the first field out of range.
  void validate() const;
};

/// Nonnegative density on the grid with unit integral.
class DensityField {
 public:
  /// Validates nonnegativity and unit mass (1e-12).
  DensityField(const geometry::CircleGrid& grid, std::vector<double> values);

  static DensityField uniform(const geometry::CircleGrid& grid);
  /// Delta at `node`: 1 / weight there, zero elsewhere.
  static DensityField spike(const geometry::CircleGrid& grid, std::size_t node);
  /// Clips negatives and rescales to unit mass.
  static DensityField normalized(const geometry::CircleGrid& grid, std::vector<double> raw);
  /// Uniform density times (1 + amplitude cos(theta - peak)), renormalised.
  static DensityField cosine_perturbed(const geometry::CircleGrid& grid, double amplitude,
                                       double peak = 0.0);

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  DensityField() = default;
  std::vector<double> values_;
};

/// Income, nominal wage, price index and real wage at every node.
struct EquilibriumFields {
  std::vector<double> Y;
  std::vector<double> w;
  std::vector<double> G;
  std::vector<double> omega;
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 10'000;
  double damping = 0.5;
  /// Starting wage; w = 1 everywhere when empty.
  std::optional<std::vector<double>> initial_wage;
};

struct StaticSolution {
  EquilibriumFields fields;
  int iterations = 0;
  double residual = 0.0;  // sup-norm relative change of w at the last sweep
};

/// Solves the income / wage / price-index / real-wage subsystem for a fixed
/// manufacturing density by damped Picard iteration on w.
///
/// Throws ConvergenceError (with the last residual) after max_iter sweeps and
/// NumericalError naming the equation when a kernel sum is not finite.
StaticSolution solve_static(const DensityField& lambda, const DensityField& phi,
                            const ModelParams& params, const geometry::CircleGrid& grid,
                            const SolverOptions& options = {});

/// Same, with a prebuilt kernel for exp(-alpha |x - y|); used by the time stepper.
StaticSolution solve_static(const DensityField& lambda, const DensityField& phi,
                            const ModelParams& params, const geometry::ExponentialKernel& kernel,
                            const SolverOptions& options = {});

/// omega = w G^{-mu}, pointwise.
std::vector<double> real_wage(std::span<const double> w, std::span<const double> G, double mu);

}  // namespace racetrack
