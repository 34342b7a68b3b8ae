#include "racetrack/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "racetrack/error.hpp"

namespace racetrack::dynamics {

std::vector<double> replicator_field(const TrajectoryState& state, const ModelParams& params) {
  const auto lambda = state.lambda.values();
  std::vector<double> field(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    field[i] = params.v * (state.fields.omega[i] - state.mean_omega) * lambda[i];
  }
  return field;
}

double field_norm(const TrajectoryState& state, const ModelParams& params) {
  double norm = 0.0;
  for (double f : replicator_field(state, params)) norm = std::max(norm, std::abs(f));
  return norm;
}

TrajectoryState make_state(const DensityField& lambda, const ModelParams& params,
                           const geometry::ExponentialKernel& kernel, const geometry::CircleGrid& grid,
                           double t, const SolverOptions& options) {
  const DensityField phi = DensityField::uniform(grid);
  StaticSolution solution = solve_static(lambda, phi, params, kernel, options);
  std::vector<double> weighted(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) weighted[i] = solution.fields.omega[i] * lambda[i];
  const double mean = geometry::integrate(weighted, grid);
  return TrajectoryState{t, lambda, std::move(solution.fields), mean};
}

TrajectoryState step(const TrajectoryState& state, double dt, const ModelParams& params,
                     const geometry::ExponentialKernel& kernel, const geometry::CircleGrid& grid,
                     const SolverOptions& options) {
  if (!(dt > 0.0)) throw ContractViolation("step: dt must be > 0");
  const auto lambda = state.lambda.values();
  const std::vector<double> field = replicator_field(state, params);

  std::vector<double> next(lambda.size());
  double old_max = 0.0;
  double new_max = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    next[i] = lambda[i] + dt * field[i];
    old_max = std::max(old_max, lambda[i]);
    new_max = std::max(new_max, next[i]);
  }
  if (!std::isfinite(new_max) || new_max > 10.0 * old_max) {
    throw InstabilityError("step: max lambda grew from " + std::to_string(old_max) + " to " +
                           std::to_string(new_max) + " in one step of dt = " + std::to_string(dt) +
                           "; use a smaller dt");
  }

  SolverOptions warm = options;
  warm.initial_wage = state.fields.w;
  return make_state(DensityField::normalized(grid, std::move(next)), params, kernel, grid,
                    state.t + dt, warm);
}

Trajectory integrate(const DensityField& lambda0, const ModelParams& params,
                     const geometry::CircleGrid& grid, const IntegrateOptions& options) {
  params.validate();
  const double dt = options.dt.value_or(0.01 / params.v);
  if (!(dt > 0.0)) throw ContractViolation("integrate: dt must be > 0");
  if (!(options.t_end >= 0.0)) throw ContractViolation("integrate: t_end must be >= 0");
  const std::size_t every = std::max<std::size_t>(options.snapshot_every, 1);
  const geometry::ExponentialKernel kernel(grid, params.alpha());

  Trajectory trajectory;
  TrajectoryState state = make_state(lambda0, params, kernel, grid, 0.0, options.solver);
  trajectory.snapshots.push_back(state);
  trajectory.final_field_norm = field_norm(state, params);
  if (trajectory.final_field_norm < options.stationary_threshold) {
    trajectory.stationary = true;
    return trajectory;
  }

  const auto total = static_cast<std::size_t>(std::ceil(options.t_end / dt - 1e-9));
  bool last_recorded = true;
  for (std::size_t k = 1; k <= total; ++k) {
    state = step(state, dt, params, kernel, grid, options.solver);
    state.t = static_cast<double>(k) * dt;
    trajectory.steps = k;
    trajectory.final_field_norm = field_norm(state, params);
    const bool stop = trajectory.final_field_norm < options.stationary_threshold;
    last_recorded = false;
    if (k % every == 0 || stop) {
      trajectory.snapshots.push_back(state);
      last_recorded = true;
    }
    if (stop) {
      trajectory.stationary = true;
      break;
    }
  }
  if (!last_recorded) trajectory.snapshots.push_back(state);
  return trajectory;
}

}  // namespace racetrack::dynamics
