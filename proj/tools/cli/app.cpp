#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "racetrack/error.hpp"

namespace racetrack::cli {

int run(int argc, const char* const* argv) {
  RunConfig config;
  double dt = 0.0;

  CLI::App app{"Continuous racetrack core-periphery model: equilibria, welfare and compensation"};
  app.set_config("--config", "", "TOML file with parameters; flags override it");
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--mu", config.params.mu, "manufacturing share, in (0, 1)");
  app.add_option("--sigma", config.params.sigma, "elasticity of substitution, > 1");
  app.add_option("--tau", config.params.tau, "transport-cost rate, > 0");
  app.add_option("--r", config.params.r, "radius of the circle, >= 1");
  app.add_option("--v", config.params.v, "adjustment speed, > 0");
  app.add_option("--n", config.n, "grid nodes (even, >= 8)");
  app.add_option("--tol", config.tol, "fixed-point tolerance");
  app.add_option("--max-iter,--max_iter", config.max_iter, "fixed-point iteration cap");
  app.add_option("--out", config.out, "output directory");
  app.add_option("--seed", config.seed, "seed for randomized transfer schemes");

  auto* eq = app.add_subcommand("equilibrium", "solve the static system for a given density");
  eq->add_option("--density", config.equilibrium.density, "uniform | spike | cosine");
  eq->add_option("--amplitude", config.equilibrium.amplitude, "cosine perturbation amplitude");

  app.add_subcommand("welfare", "welfare comparison and the exhaustive compensation scheme under (A)");

  auto* tk = app.add_subcommand("tauk", "critical transport cost, F sweep and lemma checks");
  tk->add_option("--tau-min,--tau_min", config.tauk.tau_min, "first sweep point");
  tk->add_option("--tau-max,--tau_max", config.tauk.tau_max, "last sweep point");
  tk->add_option("--points", config.tauk.points, "sweep points");
  tk->add_option("--lemma-taus,--lemma_taus", config.tauk.lemma_taus, "tau samples for the lemma checks");

  auto* dy = app.add_subcommand("dynamics", "integrate the replicator adjustment of lambda");
  dy->add_option("--initial", config.dynamics.initial, "uniform | spike | cosine");
  dy->add_option("--amplitude", config.dynamics.amplitude, "cosine perturbation amplitude");
  auto* dt_opt = dy->add_option("--dt", dt, "time step (default 0.01 / v)");
  dy->add_option("--t-end,--t_end", config.dynamics.t_end, "final time");
  dy->add_option("--snapshot-every,--snapshot_every", config.dynamics.snapshot_every, "steps between snapshots");

  auto* hk = app.add_subcommand("hicks", "excess demand under randomized balanced (D) schemes");
  hk->add_option("--schemes", config.hicks.schemes, "number of random schemes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  if (dt_opt->count() > 0) config.dynamics.dt = dt;

  try {
    config.validate();
    if (eq->parsed()) cmd_equilibrium(config);
    if (app.got_subcommand("welfare")) cmd_welfare(config);
    if (tk->parsed()) cmd_tauk(config);
    if (dy->parsed()) cmd_dynamics(config);
    if (hk->parsed()) cmd_hicks(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error (" << e.field() << "): " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const NumericalError& e) {
    std::cerr << "solver error in " << e.equation() << ": " << e.what() << '\n';
    return kExitSolver;
  } catch (const BracketError& e) {
    std::cerr << "bracket error: " << e.what() << '\n';
    return kExitBracket;
  } catch (const InstabilityError& e) {
    std::cerr << "instability: " << e.what() << '\n';
    return kExitInstability;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace racetrack::cli
