#include "cli/config.hpp"

#include <string>

#include "racetrack/error.hpp"
#include "racetrack/geometry.hpp"

namespace racetrack::cli {

namespace {

void check_density_name(const std::string& field, const std::string& name) {
  if (name != "uniform" && name != "spike" && name != "cosine") {
    throw ConfigError(field, field + " must be one of uniform, spike, cosine; got '" + name + "'");
  }
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  geometry::CircleGrid(params.r, n);  // checks n
  if (!(tol > 0.0)) throw ConfigError("tol", "tol must be > 0");
  if (max_iter < 1) throw ConfigError("max_iter", "max_iter must be >= 1");

  check_density_name("equilibrium.density", equilibrium.density);
  if (!(equilibrium.amplitude >= 0.0 && equilibrium.amplitude < 1.0)) {
    throw ConfigError("equilibrium.amplitude", "equilibrium.amplitude must lie in [0, 1)");
  }

  if (!(tauk.tau_min > 0.0)) throw ConfigError("tauk.tau_min", "tauk.tau_min must be > 0");
  if (!(tauk.tau_max > tauk.tau_min)) throw ConfigError("tauk.tau_max", "tauk.tau_max must exceed tau_min");
  if (tauk.points < 2) throw ConfigError("tauk.points", "tauk.points must be >= 2");
  for (double t : tauk.lemma_taus) {
    if (!(t > 0.0)) throw ConfigError("tauk.lemma_taus", "tauk.lemma_taus must be positive");
  }

  check_density_name("dynamics.initial", dynamics.initial);
  if (!(dynamics.amplitude >= 0.0 && dynamics.amplitude < 1.0)) {
    throw ConfigError("dynamics.amplitude", "dynamics.amplitude must lie in [0, 1)");
  }
  if (dynamics.dt && !(*dynamics.dt > 0.0)) throw ConfigError("dynamics.dt", "dynamics.dt must be > 0");
  if (!(dynamics.t_end >= 0.0)) throw ConfigError("dynamics.t_end", "dynamics.t_end must be >= 0");
  if (dynamics.snapshot_every < 1) {
    throw ConfigError("dynamics.snapshot_every", "dynamics.snapshot_every must be >= 1");
  }

  if (hicks.schemes < 1) throw ConfigError("hicks.schemes", "hicks.schemes must be >= 1");
}

}  // namespace racetrack::cli
