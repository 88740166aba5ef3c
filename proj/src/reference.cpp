#include "kinetra/reference.hpp"

#include <algorithm>
#include <cmath>

namespace kinetra::ref {

std::vector<double> collision_operator(std::span<const double> state, const ModelParams& params,
                                       const InteractionTables& tables) {
  const int n = params.grid.n_speeds;
  std::vector<double> q(static_cast<std::size_t>(n), 0.0);
  double rho = 0.0;
  for (double f : state) rho += f;
  const auto [pa, pb] = interaction_weights(params.prob, rho);

  for (int ks = 0; ks < n; ++ks) {
    for (int kl = 0; kl < n; ++kl) {
      const double pair = state[static_cast<std::size_t>(ks)] * state[static_cast<std::size_t>(kl)];
      q[static_cast<std::size_t>(tables.accel_target[static_cast<std::size_t>(ks)])] += pa * pair;
      if (ks <= kl)
        q[static_cast<std::size_t>(tables.brake_target_slower[static_cast<std::size_t>(ks)])] +=
            pb * pair;
      else
        q[static_cast<std::size_t>(tables.brake_target_faster[static_cast<std::size_t>(kl)])] +=
            pb * pair;
    }
  }
  for (int k = 0; k < n; ++k) q[static_cast<std::size_t>(k)] -= state[static_cast<std::size_t>(k)] * rho;
  return q;
}

void transport_step(KineticField& field, double dt, AlphaMode alpha) {
  const Mesh1D& mesh = field.mesh;
  const int nc = mesh.n_cells;
  const int n = field.grid.n_speeds;
  const double nu = dt / mesh.dx;
  std::vector<double> out(field.values.size());
  std::vector<double> flux(static_cast<std::size_t>(nc) + 1);

  for (int k = 0; k < n; ++k) {
    const double v = field.grid.nodes[static_cast<std::size_t>(k)];
    const double a = alpha == AlphaMode::local ? std::abs(v) : field.grid.v_max;
    for (int j = 0; j <= nc; ++j) {
      const int jl = j == 0 ? (mesh.boundary == Boundary::periodic ? nc - 1 : 0) : j - 1;
      const int jr = j == nc ? (mesh.boundary == Boundary::periodic ? 0 : nc - 1) : j;
      const double fl = field.at(jl, k);
      const double fr = field.at(jr, k);
      flux[static_cast<std::size_t>(j)] = 0.5 * (v * fl + v * fr) - 0.5 * a * (fr - fl);
    }
    for (int j = 0; j < nc; ++j)
      out[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] =
          field.at(j, k) -
          nu * (flux[static_cast<std::size_t>(j) + 1] - flux[static_cast<std::size_t>(j)]);
  }
  field.values.swap(out);
}

void collision_step_bgk(KineticField& field, double dt, const EpsilonModel& eps,
                        const MaxwellianTable& table) {
  const int n = field.grid.n_speeds;
  const auto rho = cell_densities(field);
  const auto grad = density_gradient(field.mesh, rho);
  std::vector<double> m(static_cast<std::size_t>(n));
  for (int j = 0; j < field.mesh.n_cells; ++j) {
    interpolate_maxwellian(table, rho[static_cast<std::size_t>(j)], m);
    const double e = eval_epsilon(eps, rho[static_cast<std::size_t>(j)], grad[static_cast<std::size_t>(j)]);
    const double decay = std::exp(-dt / e);
    for (int k = 0; k < n; ++k) {
      double& f = field.at(j, k);
      f = m[static_cast<std::size_t>(k)] + (f - m[static_cast<std::size_t>(k)]) * decay;
    }
  }
}

void collision_step_boltzmann(KineticField& field, double dt, const EpsilonModel& eps,
                              const ModelParams& params, const InteractionTables& tables,
                              double beta_min) {
  const int n = field.grid.n_speeds;
  const auto rho = cell_densities(field);
  const auto grad = density_gradient(field.mesh, rho);
  std::vector<double> q(static_cast<std::size_t>(n));
  for (int j = 0; j < field.mesh.n_cells; ++j) {
    kinetra::collision_operator(field.cell(j), params, tables, q);
    const double e = eval_epsilon(eps, rho[static_cast<std::size_t>(j)], grad[static_cast<std::size_t>(j)]);
    const double beta = std::max(rho[static_cast<std::size_t>(j)], beta_min);
    const double c = dt / (e + dt * beta);
    for (int k = 0; k < n; ++k) field.at(j, k) += c * q[static_cast<std::size_t>(k)];
  }
}

MaxwellianTable build_maxwellian_table(const ModelParams& params, const InteractionTables& tables,
                                       const TableBuildOptions& opts) {
  TableBuildOptions serial = opts;
  serial.parallel = false;
  return kinetra::build_maxwellian_table(params, tables, serial);
}

}  // namespace kinetra::ref
