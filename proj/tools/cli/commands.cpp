#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cli/output.hpp"
#include "racetrack/analytic.hpp"
#include "racetrack/dynamics.hpp"
#include "racetrack/error.hpp"
#include "racetrack/welfare.hpp"

namespace racetrack::cli {

using nlohmann::json;

namespace {

json params_json(const RunConfig& c) {
  return {{"mu", c.params.mu}, {"sigma", c.params.sigma}, {"tau", c.params.tau},
          {"r", c.params.r},   {"v", c.params.v},         {"alpha", c.params.alpha()},
          {"n", c.n},          {"tol", c.tol}};
}

json header(const std::string& command, const RunConfig& c) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"params", params_json(c)}};
}

DensityField make_density(const std::string& kind, double amplitude, const geometry::CircleGrid& grid) {
  if (kind == "spike") return DensityField::spike(grid, grid.origin_node());
  if (kind == "cosine") return DensityField::cosine_perturbed(grid, amplitude);
  return DensityField::uniform(grid);
}

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions o;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  return o;
}

double max_of(std::span<const double> xs) { return *std::max_element(xs.begin(), xs.end()); }
double min_of(std::span<const double> xs) { return *std::min_element(xs.begin(), xs.end()); }

}  // namespace

void cmd_equilibrium(const RunConfig& c) {
  const geometry::CircleGrid grid(c.params.r, c.n);
  const DensityField lambda = make_density(c.equilibrium.density, c.equilibrium.amplitude, grid);
  const DensityField phi = DensityField::uniform(grid);
  const StaticSolution sol = solve_static(lambda, phi, c.params, grid, solver_options(c));
  const EquilibriumFields& f = sol.fields;

  CsvTable csv{"theta", "lambda", "Y", "w", "G", "omega"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv.add_row({grid.theta(i), lambda[i], f.Y[i], f.w[i], f.G[i], f.omega[i]});
  }

  json doc = header("equilibrium", c);
  doc["density"] = c.equilibrium.density;
  doc["iterations"] = sol.iterations;
  doc["residual"] = sol.residual;
  doc["total_income"] = geometry::integrate(f.Y, grid);

  if (c.equilibrium.density == "uniform") {
    const auto d = analytic::dispersion(c.params);
    double dw = 0.0, dG = 0.0, domega = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      dw = std::max(dw, std::abs(f.w[i] - d.w_bar));
      dG = std::max(dG, std::abs(f.G[i] - d.G_bar));
      domega = std::max(domega, std::abs(f.omega[i] - d.omega_bar));
    }
    doc["oracle"] = {{"kind", "dispersion"},        {"w_bar", d.w_bar},
                     {"G_bar", d.G_bar},            {"omega_bar", d.omega_bar},
                     {"max_abs_dev_w", dw},         {"max_abs_dev_G", dG},
                     {"max_abs_dev_omega", domega}};
  } else if (c.equilibrium.density == "spike") {
    const auto a = analytic::agglomeration(c.params, 0.0);
    const std::size_t city = grid.origin_node();
    double dG = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid.node_separation(i, city) < 2) continue;
      const double exact = a.price_index(grid.theta(i));
      dG = std::max(dG, std::abs(f.G[i] - exact) / exact);
    }
    doc["oracle"] = {{"kind", "agglomeration"},
                     {"w_star", f.w[city]},
                     {"omega_star", f.omega[city]},
                     {"abs_dev_omega_star", std::abs(f.omega[city] - a.omega_star)},
                     {"max_rel_dev_G_off_city", dG}};
  }

  write_atomic(c.out / "equilibrium.csv", csv.text());
  write_json(c.out / "equilibrium.json", doc);
}

void cmd_welfare(const RunConfig& c) {
  const geometry::CircleGrid grid(c.params.r, c.n);
  const welfare::WelfareReport report = welfare::welfare_report(c.params);
  const welfare::CompensationSchemeA scheme = welfare::scheme_A(c.params);
  const double q = welfare::demand_after_comp_A(scheme, c.params, grid);
  const double F = welfare::F(c.params.tau, c.params);

  // Grid nodes plus the two Gamma boundary points, sorted by angle.
  std::vector<double> thetas(grid.thetas().begin(), grid.thetas().end());
  thetas.push_back(-report.delta);
  thetas.push_back(report.delta);
  std::sort(thetas.begin(), thetas.end());

  CsvTable csv{"theta", "psi_A", "psi_D", "C_A", "T_A", "in_gamma"};
  for (double t : thetas) {
    csv.add_row({t, report.psi_A(t), report.psi_D, scheme.C_A(t), scheme.T_A(t), report.in_gamma(t) ? 1.0 : 0.0});
  }

  json doc = header("welfare", c);
  doc["omega_A"] = report.omega_A;
  doc["psi_D"] = report.psi_D;
  doc["delta"] = report.delta;
  doc["chi"] = welfare::chi(c.params);
  doc["T_A_star"] = scheme.T_A_star;
  doc["total_pay"] = scheme.total_pay();
  doc["total_comp"] = scheme.total_comp();
  doc["F"] = F;
  doc["q_x_star"] = q;
  doc["verdict"] = {{"kaldor", F > 0.0}, {"hicks", true}, {"scitovsky", F > 0.0}};

  write_atomic(c.out / "welfare.csv", csv.text());
  write_json(c.out / "welfare.json", doc);
}

void cmd_tauk(const RunConfig& c) {
  const double root = welfare::tau_K(c.params);

  CsvTable csv{"tau", "F", "dF", "d2F"};
  const auto& t = c.tauk;
  for (std::size_t k = 0; k < t.points; ++k) {
    const double tau = t.tau_min + (t.tau_max - t.tau_min) * static_cast<double>(k) / static_cast<double>(t.points - 1);
    csv.add_row({tau, welfare::F(tau, c.params), welfare::F_prime(tau, c.params), welfare::F_second(tau, c.params)});
  }

  const welfare::LemmaReport lemmas = welfare::lemma_suite(c.params, t.lemma_taus);
  json checks = json::array();
  for (const auto& chk : lemmas.checks) {
    checks.push_back({{"name", chk.name}, {"tau", chk.tau}, {"observed", chk.observed},
                      {"expected", chk.expected}, {"passed", chk.passed}});
  }

  json doc = header("tauk", c);
  doc["params"].erase("tau");
  doc["tau_K"] = root;
  doc["F_at_tau_K"] = welfare::F(root, c.params);
  doc["lemma_suite"] = {{"all_passed", lemmas.all_passed()}, {"checks", checks}};

  write_atomic(c.out / "tauk.csv", csv.text());
  write_json(c.out / "tauk.json", doc);
}

void cmd_dynamics(const RunConfig& c) {
  const geometry::CircleGrid grid(c.params.r, c.n);
  dynamics::IntegrateOptions options;
  options.t_end = c.dynamics.t_end;
  options.dt = c.dynamics.dt;
  options.snapshot_every = c.dynamics.snapshot_every;
  options.solver = solver_options(c);
  const DensityField lambda0 = make_density(c.dynamics.initial, c.dynamics.amplitude, grid);
  const dynamics::Trajectory traj = dynamics::integrate(lambda0, c.params, grid, options);

  CsvTable csv{"snapshot", "t", "theta", "lambda"};
  json snaps = json::array();
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    const auto& st = traj.snapshots[s];
    const auto values = st.lambda.values();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      csv.add_row({static_cast<double>(s), st.t, grid.theta(i), values[i]});
    }
    snaps.push_back({{"index", s},
                     {"t", st.t},
                     {"max_lambda", max_of(values)},
                     {"min_lambda", min_of(values)},
                     {"mean_omega", st.mean_omega},
                     {"mass", geometry::integrate(values, grid)}});
  }

  json doc = header("dynamics", c);
  doc["initial"] = c.dynamics.initial;
  doc["dt"] = options.dt.value_or(0.01 / c.params.v);
  doc["t_end"] = c.dynamics.t_end;
  doc["steps"] = traj.steps;
  doc["stationary"] = traj.stationary;
  doc["stationary_at_start"] = traj.stationary && traj.steps == 0;
  doc["final_field_norm"] = traj.final_field_norm;
  doc["initial_max_lambda"] = max_of(traj.snapshots.front().lambda.values());
  doc["final_max_lambda"] = max_of(traj.snapshots.back().lambda.values());
  doc["snapshots"] = snaps;

  write_atomic(c.out / "dynamics.csv", csv.text());
  write_json(c.out / "dynamics.json", doc);
}

void cmd_hicks(const RunConfig& c) {
  const geometry::CircleGrid grid(c.params.r, c.n);
  const std::size_t city = grid.origin_node();
  std::mt19937_64 rng(c.seed);

  json rows = json::array();
  bool all_excess = true;
  bool all_bound = true;
  for (std::size_t k = 0; k < c.hicks.schemes; ++k) {
    const welfare::CompensationSchemeD scheme = welfare::random_scheme_D(c.params, grid, rng);
    const double gap = welfare::balance_gap(scheme, c.params, grid);
    if (!(std::abs(gap) <= 1e-12)) throw BalanceError("random scheme failed to balance");
    const double q = welfare::hicks_excess_demand(scheme, c.params, grid)[city];
    const double bound = welfare::hicks_lower_bound(c.params, scheme.C_D_star);
    const bool excess = q > c.params.mu;
    const bool above = q >= bound;
    all_excess = all_excess && excess;
    all_bound = all_bound && above;
    rows.push_back({{"index", k},     {"C_D_star", scheme.C_D_star}, {"q_x_star", q},
                    {"lower_bound", bound}, {"excess_demand", excess}, {"above_bound", above}});
  }

  welfare::CompensationSchemeD zero;
  zero.C_D.assign(grid.size(), 0.0);
  zero.T_D.assign(grid.size(), 0.0);
  const double q_zero = welfare::hicks_excess_demand(zero, c.params, grid)[city];

  json doc = header("hicks", c);
  doc["seed"] = c.seed;
  doc["schemes"] = rows;
  doc["degenerate"] = {{"C_D_star", 0.0}, {"q_x_star", q_zero}};
  doc["summary"] = {{"count", c.hicks.schemes}, {"all_excess_demand", all_excess}, {"all_above_bound", all_bound}};

  write_json(c.out / "hicks.json", doc);
}

}  // namespace racetrack::cli
