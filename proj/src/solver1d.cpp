#include "kinetra/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kinetra {

namespace {
constexpr double kTimeTol = 1e-12;
}

KineticField make_field(const Mesh1D& mesh, const VelocityGrid& grid) {
  KineticField f;
  f.mesh = mesh;
  f.grid = grid;
  f.values.assign(static_cast<std::size_t>(mesh.n_cells) * static_cast<std::size_t>(grid.n_speeds),
                  0.0);
  return f;
}

KineticField maxwellian_field(const Mesh1D& mesh, const MaxwellianTable& table,
                              const std::function<double(double)>& rho0) {
  KineticField f = make_field(mesh, table.grid);
  const int n = table.grid.n_speeds;
  for (int j = 0; j < mesh.n_cells; ++j) {
    const double rho = rho0(mesh.x_center(j));
    interpolate_maxwellian(table, rho,
                           {f.values.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(n),
                            static_cast<std::size_t>(n)});
  }
  return f;
}

std::vector<double> cell_densities(const KineticField& field) {
  std::vector<double> rho(static_cast<std::size_t>(field.mesh.n_cells));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < field.mesh.n_cells; ++j)
    rho[static_cast<std::size_t>(j)] = field.cell_density(j);
  return rho;
}

std::vector<double> density_gradient(const Mesh1D& mesh, std::span<const double> rho) {
  const int nc = mesh.n_cells;
  std::vector<double> g(static_cast<std::size_t>(nc));
  for (int j = 0; j < nc; ++j) {
    if (mesh.boundary == Boundary::free_outflow && (j == 0 || j == nc - 1)) {
      const int a = j == 0 ? 0 : nc - 2;
      g[static_cast<std::size_t>(j)] =
          (rho[static_cast<std::size_t>(a) + 1] - rho[static_cast<std::size_t>(a)]) / mesh.dx;
    } else {
      g[static_cast<std::size_t>(j)] = (rho[static_cast<std::size_t>(mesh.right(j))] -
                                        rho[static_cast<std::size_t>(mesh.left(j))]) /
                                       (2.0 * mesh.dx);
    }
  }
  return g;
}

std::vector<double> compute_rho_x(const KineticField& field) {
  return density_gradient(field.mesh, cell_densities(field));
}

void enforce_positivity(const KineticField& field, long step) {
  const int n = field.grid.n_speeds;
  for (int j = 0; j < field.mesh.n_cells; ++j)
    for (int k = 0; k < n; ++k) {
      const double v = field.at(j, k);
      if (std::isnan(v))
        throw SolverError("NaN at cell " + std::to_string(j) + ", node " + std::to_string(k) +
                          ", step " + std::to_string(step));
      if (v < 0.0)
        throw SolverError("negative value " + std::to_string(v) + " at cell " + std::to_string(j) +
                          ", node " + std::to_string(k) + ", step " + std::to_string(step));
    }
}

EpsilonModel EpsilonModel::constant(double value) {
  if (!(value > 0.0)) throw ConfigError("constant epsilon must be > 0");
  return {Kind::constant, value, 0.99};
}

EpsilonModel EpsilonModel::variable(double eps0) {
  if (!(eps0 > 0.0) || eps0 >= 1.0)
    throw ConfigError("variable-epsilon cap eps0 must lie in (0, 1)");
  return {Kind::variable, 0.01, eps0};
}

double eval_epsilon(const EpsilonModel& model, double rho, double rho_x) {
  if (model.kind == EpsilonModel::Kind::constant) return model.value;
  const double m = std::min(rho, model.eps0);
  const double g = std::max(rho_x, 0.0);
  return std::min(1.0 - m * m, 1.0 / (1.0 + g * g));
}

void transport_step(KineticField& field, double dt, AlphaMode alpha, double cfl_limit) {
  const double vmax = field.grid.v_max;
  const double dt_max = cfl_limit * field.mesh.dx / vmax;
  if (dt > dt_max * (1.0 + 1e-12))
    throw SolverError("transport step rejected: dt = " + std::to_string(dt) +
                      " exceeds the CFL bound; required dt <= " + std::to_string(dt_max));

  const auto& nodes = field.grid.nodes;
  std::vector<double> out(field.values.size());
  llf_transport_step(
      field.mesh, field.grid.n_speeds, field.values, out, dt,
      [&nodes](int, int k) { return nodes[static_cast<std::size_t>(k)]; }, alpha, vmax);
  field.values.swap(out);
}

namespace {

// Per-cell epsilon values for a collision step, frozen at the pre-step state.
std::vector<double> collision_epsilons(const KineticField& field, const EpsilonModel& eps,
                                       std::span<const double> rho) {
  std::vector<double> out(static_cast<std::size_t>(field.mesh.n_cells));
  if (eps.kind == EpsilonModel::Kind::constant) {
    std::fill(out.begin(), out.end(), eps.value);
    return out;
  }
  const auto grad = density_gradient(field.mesh, rho);
  for (int j = 0; j < field.mesh.n_cells; ++j)
    out[static_cast<std::size_t>(j)] =
        eval_epsilon(eps, rho[static_cast<std::size_t>(j)], grad[static_cast<std::size_t>(j)]);
  return out;
}

}  // namespace

void collision_step_bgk(KineticField& field, double dt, const EpsilonModel& eps,
                        const MaxwellianTable& table, CollisionDiag* diag) {
  const int n = field.grid.n_speeds;
  const int nc = field.mesh.n_cells;
  const auto rho = cell_densities(field);
  const auto epsv = collision_epsilons(field, eps, rho);

  double drift = 0.0;
  std::string first_error;  // exceptions must not unwind through the omp region
#pragma omp parallel
  {
    std::vector<double> m(static_cast<std::size_t>(n));
    double local_drift = 0.0;
#pragma omp for schedule(static)
    for (int j = 0; j < nc; ++j) {
      try {
        interpolate_maxwellian(table, rho[static_cast<std::size_t>(j)], m);
      } catch (const std::exception& e) {
#pragma omp critical
        if (first_error.empty())
          first_error = std::string(e.what()) + " (cell " + std::to_string(j) + ")";
        continue;
      }
      const double decay = std::exp(-dt / epsv[static_cast<std::size_t>(j)]);
      for (int k = 0; k < n; ++k) {
        double& f = field.at(j, k);
        f = m[static_cast<std::size_t>(k)] + (f - m[static_cast<std::size_t>(k)]) * decay;
      }
      if (diag)
        local_drift = std::max(local_drift,
                               std::abs(field.cell_density(j) - rho[static_cast<std::size_t>(j)]));
    }
#pragma omp critical
    drift = std::max(drift, local_drift);
  }
  if (!first_error.empty()) throw SolverError("bgk collision step: " + first_error);
  if (diag) diag->merge(drift);
}

void collision_step_boltzmann(KineticField& field, double dt, const EpsilonModel& eps,
                              const ModelParams& params, const InteractionTables& tables,
                              const MaxwellianTable& table, double beta_min, CollisionDiag* diag) {
  (void)table;  // the penalized update needs no Maxwellian: rho is collision-invariant
  const int n = field.grid.n_speeds;
  const int nc = field.mesh.n_cells;
  const auto rho = cell_densities(field);
  const auto epsv = collision_epsilons(field, eps, rho);

  double drift = 0.0;
  std::string first_error;
#pragma omp parallel
  {
    std::vector<double> q(static_cast<std::size_t>(n));
    double local_drift = 0.0;
#pragma omp for schedule(static)
    for (int j = 0; j < nc; ++j) {
      try {
        collision_operator(field.cell(j), params, tables, q);
      } catch (const std::exception& e) {
#pragma omp critical
        if (first_error.empty())
          first_error = std::string(e.what()) + " (cell " + std::to_string(j) + ")";
        continue;
      }
      const double beta = std::max(rho[static_cast<std::size_t>(j)], beta_min);
      const double c = dt / (epsv[static_cast<std::size_t>(j)] + dt * beta);
      for (int k = 0; k < n; ++k) field.at(j, k) += c * q[static_cast<std::size_t>(k)];
      if (diag)
        local_drift = std::max(local_drift,
                               std::abs(field.cell_density(j) - rho[static_cast<std::size_t>(j)]));
    }
#pragma omp critical
    drift = std::max(drift, local_drift);
  }
  if (!first_error.empty()) throw SolverError("boltzmann collision step: " + first_error);
  if (diag) diag->merge(drift);
}

namespace {

Snapshot make_snapshot(const KineticField& field, const EpsilonModel& eps, double t, long step,
                       bool store_values) {
  Snapshot s;
  s.t = t;
  s.step = step;
  const int nc = field.mesh.n_cells;
  const int n = field.grid.n_speeds;
  s.x.resize(static_cast<std::size_t>(nc));
  s.rho = cell_densities(field);
  s.flux.resize(static_cast<std::size_t>(nc));
  s.u.resize(static_cast<std::size_t>(nc));
  s.eps.resize(static_cast<std::size_t>(nc));
  const auto grad = density_gradient(field.mesh, s.rho);
  for (int j = 0; j < nc; ++j) {
    s.x[static_cast<std::size_t>(j)] = field.mesh.x_center(j);
    double flux = 0.0;
    for (int k = 0; k < n; ++k)
      flux += field.grid.nodes[static_cast<std::size_t>(k)] * field.at(j, k);
    s.flux[static_cast<std::size_t>(j)] = flux;
    const double r = s.rho[static_cast<std::size_t>(j)];
    s.u[static_cast<std::size_t>(j)] = r > 0.0 ? flux / r : 0.0;
    s.eps[static_cast<std::size_t>(j)] = eval_epsilon(eps, r, grad[static_cast<std::size_t>(j)]);
  }
  if (store_values) s.values = field.values;
  return s;
}

}  // namespace

RunResult run(const SolverParams& params, const InteractionTables& tables,
              const MaxwellianTable& table) {
  if (!params.rho0) throw ConfigError("run: initial density profile missing");
  if (!(params.cfl > 0.0) || params.cfl > 1.0) throw ConfigError("run: cfl must lie in (0, 1]");

  KineticField field = maxwellian_field(params.mesh, table, params.rho0);
  enforce_positivity(field, 0);

  std::vector<double> times = params.output_times;
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (times.empty()) times.push_back(params.t_final);
  for (double s : times)
    if (s < 0.0 || s > params.t_final + kTimeTol)
      throw ConfigError("run: output time " + std::to_string(s) + " outside [0, t_final]");

  RunResult res;
  res.diag.initial_mass = fixed_order_sum(field.values);
  const double dt_fixed = params.cfl * params.mesh.dx / params.model.grid.v_max;
  res.diag.dt = dt_fixed;

  CollisionDiag cdiag;
  std::size_t oi = 0;
  while (oi < times.size() && times[oi] <= kTimeTol) {
    res.snapshots.push_back(make_snapshot(field, params.eps, 0.0, 0, params.store_node_values));
    ++oi;
  }

  double t = 0.0;
  long step = 0;
  std::vector<double> prev;
  while (t < params.t_final - kTimeTol || oi < times.size()) {
    const double dt = params.cfl * params.mesh.dx / params.model.grid.v_max;
    const bool need_prev = oi < times.size() && times[oi] <= t + dt + kTimeTol;
    if (need_prev) prev = field.values;

    transport_step(field, dt, params.alpha);
    if (params.collision == CollisionKind::bgk)
      collision_step_bgk(field, dt, params.eps, table, &cdiag);
    else
      collision_step_boltzmann(field, dt, params.eps, params.model, tables, table, params.beta_min,
                               &cdiag);
    ++step;
    const double t_next = t + dt;
    enforce_positivity(field, step);

    const double mass = fixed_order_sum(field.values);
    if (params.mesh.boundary == Boundary::periodic && res.diag.initial_mass > 0.0)
      res.diag.max_rel_mass_drift =
          std::max(res.diag.max_rel_mass_drift,
                   std::abs(mass - res.diag.initial_mass) / res.diag.initial_mass);
    for (int j = 0; j < params.mesh.n_cells; ++j)
      res.diag.max_density = std::max(res.diag.max_density, field.cell_density(j));

    while (oi < times.size() && times[oi] <= t_next + kTimeTol) {
      const bool use_prev = (times[oi] - t) < (t_next - times[oi]);
      if (use_prev) {
        KineticField prev_field = field;
        prev_field.values = prev;
        res.snapshots.push_back(
            make_snapshot(prev_field, params.eps, t, step - 1, params.store_node_values));
      } else {
        res.snapshots.push_back(
            make_snapshot(field, params.eps, t_next, step, params.store_node_values));
      }
      ++oi;
    }
    t = t_next;

    if (step > static_cast<long>(params.t_final / dt_fixed) + 8)
      break;  // safety net; cannot trigger with a fixed positive dt
  }

  res.diag.final_mass = fixed_order_sum(field.values);
  res.diag.steps = step;
  res.diag.max_collision_density_drift = cdiag.max_density_drift;
  return res;
}

std::vector<std::pair<double, std::vector<double>>> solve_equilibrium_law(
    const Mesh1D& mesh, const MaxwellianTable& table, std::vector<double> rho0,
    std::span<const double> output_times, double cfl) {
  const int nc = mesh.n_cells;
  if (static_cast<int>(rho0.size()) != nc)
    throw ConfigError("solve_equilibrium_law: rho0 size does not match the mesh");

  const auto deriv = compute_table_derivatives(table);
  auto char_speed = [&](double r) {
    r = std::clamp(r, 0.0, table.rho_samples.back());
    const double d = table.drho();
    int i = std::min(static_cast<int>(r / d), table.n_rho() - 2);
    const double theta = (r - table.rho_samples[static_cast<std::size_t>(i)]) / d;
    return (1.0 - theta) * deriv.d_flux[static_cast<std::size_t>(i)] +
           theta * deriv.d_flux[static_cast<std::size_t>(i) + 1];
  };
  double alpha_max = 0.0;
  for (double d : deriv.d_flux) alpha_max = std::max(alpha_max, std::abs(d));
  if (alpha_max == 0.0) alpha_max = 1.0;

  std::vector<double> times(output_times.begin(), output_times.end());
  std::sort(times.begin(), times.end());

  std::vector<std::pair<double, std::vector<double>>> out;
  std::vector<double> flux_if(static_cast<std::size_t>(nc) + 1);
  double t = 0.0;
  for (double t_out : times) {
    while (t < t_out - kTimeTol) {
      const double dt = std::min(cfl * mesh.dx / alpha_max, t_out - t);
      for (int j = 0; j <= nc; ++j) {
        // interface j-1/2: left cell j-1, right cell j (boundary handled per BC)
        const int jl = j == 0 ? (mesh.boundary == Boundary::periodic ? nc - 1 : 0) : j - 1;
        const int jr = j == nc ? (mesh.boundary == Boundary::periodic ? 0 : nc - 1) : j;
        const double rl = rho0[static_cast<std::size_t>(jl)];
        const double rr = rho0[static_cast<std::size_t>(jr)];
        const double a = std::max(std::abs(char_speed(rl)), std::abs(char_speed(rr)));
        flux_if[static_cast<std::size_t>(j)] =
            0.5 * (interp_f_eq(table, rl) + interp_f_eq(table, rr)) - 0.5 * a * (rr - rl);
      }
      const double nu = dt / mesh.dx;
      for (int j = 0; j < nc; ++j)
        rho0[static_cast<std::size_t>(j)] -=
            nu * (flux_if[static_cast<std::size_t>(j) + 1] - flux_if[static_cast<std::size_t>(j)]);
      t += dt;
    }
    out.emplace_back(t, rho0);
  }
  return out;
}

}  // namespace kinetra
