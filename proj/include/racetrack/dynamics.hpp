#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "racetrack/geometry.hpp"
#include "racetrack/model.hpp"

namespace racetrack::dynamics {

/// Density of manufacturing workers at time t with the static fields solved for it.
struct TrajectoryState {
  double t = 0.0;
  DensityField lambda;
  EquilibriumFields fields;
  double mean_omega = 0.0;  // integral of omega * lambda
};

/// v (omega - mean_omega) lambda at every node.
std::vector<double> replicator_field(const TrajectoryState& state, const ModelParams& params);

/// Sup norm of replicator_field.
double field_norm(const TrajectoryState& state, const ModelParams& params);

/// Solves the static subsystem for `lambda` and wraps it as a state at time t.
TrajectoryState make_state(const DensityField& lambda, const ModelParams& params,
                           const geometry::ExponentialKernel& kernel, const geometry::CircleGrid& grid,
                           double t = 0.0, const SolverOptions& options = {});

/// One explicit Euler step followed by clipping at zero and renormalisation.
/// Throws InstabilityError when max lambda grows more than tenfold.
TrajectoryState step(const TrajectoryState& state, double dt, const ModelParams& params,
                     const geometry::ExponentialKernel& kernel, const geometry::CircleGrid& grid,
                     const SolverOptions& options = {});

struct Trajectory {
  std::vector<TrajectoryState> snapshots;
  bool stationary = false;   // stopped because the field fell below the threshold
  std::size_t steps = 0;
  double final_field_norm = 0.0;
};

struct IntegrateOptions {
  double t_end = 50.0;
  std::optional<double> dt;  // 0.01 / v when unset
  std::size_t snapshot_every = 10;
  double stationary_threshold = 1e-10;
  SolverOptions solver{};
};

/// Integrates from lambda0 until t_end or until the replicator field's sup
/// norm falls below the threshold. The first and last states are always
/// recorded.
Trajectory integrate(const DensityField& lambda0, const ModelParams& params,
                     const geometry::CircleGrid& grid, const IntegrateOptions& options);

}  // namespace racetrack::dynamics
