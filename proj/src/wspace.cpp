#include "kinetra/wspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kinetra {

namespace {
constexpr double kTimeTol = 1e-12;
}

WGrid build_wgrid(const VelocityGrid& vgrid, const PressureLaw& pressure, int refine,
                  int margin_nodes) {
  if (refine < 1) throw ConfigError("w-grid refinement must be >= 1");
  if (margin_nodes < 0) throw ConfigError("w-grid margin must be >= 0");
  WGrid w;
  w.spacing = vgrid.spacing / static_cast<double>(refine);
  w.w_min = vgrid.nodes.front() + pressure.value(0.0);
  if (w.w_min < 0.0) throw ConfigError("w-grid lower bound must be >= 0");
  const double target = vgrid.v_max + pressure.value(kRhoMax);
  const int span = static_cast<int>(std::ceil((target - w.w_min) / w.spacing - 1e-12));
  w.n_nodes = span + margin_nodes + 1;
  w.nodes.resize(static_cast<std::size_t>(w.n_nodes));
  for (int i = 0; i < w.n_nodes; ++i)
    w.nodes[static_cast<std::size_t>(i)] = w.w_min + static_cast<double>(i) * w.spacing;
  w.w_max = w.nodes.back();
  return w;
}

void build_mg(const MaxwellianTable& table, const PressureLaw& pressure, double rho,
              const WGrid& wgrid, std::span<double> out) {
  const int n = table.grid.n_speeds;
  static thread_local std::vector<double> mf;
  mf.assign(static_cast<std::size_t>(n), 0.0);
  interpolate_maxwellian(table, rho, mf);

  std::fill(out.begin(), out.end(), 0.0);
  const double shift = pressure.value(rho);
  for (int k = 0; k < n; ++k) {
    const double m = mf[static_cast<std::size_t>(k)];
    if (m == 0.0) continue;
    const double w = table.grid.nodes[static_cast<std::size_t>(k)] + shift;
    const double r = (w - wgrid.w_min) / wgrid.spacing;
    if (r < -1e-9 || r > static_cast<double>(wgrid.n_nodes - 1) + 1e-9)
      throw ConfigError("w-grid too narrow: deposition target w = " + std::to_string(w) +
                        " outside [" + std::to_string(wgrid.w_min) + ", " +
                        std::to_string(wgrid.w_max) + "]");
    int i0 = static_cast<int>(std::floor(r));
    i0 = std::clamp(i0, 0, wgrid.n_nodes - 1);
    double theta = r - static_cast<double>(i0);
    if (i0 == wgrid.n_nodes - 1) theta = 0.0;
    out[static_cast<std::size_t>(i0)] += m * (1.0 - theta);
    if (theta > 0.0) out[static_cast<std::size_t>(i0) + 1] += m * theta;
  }
}

WMoments w_moments(std::span<const double> weights, const WGrid& wgrid) {
  WMoments m;
  for (int k = 0; k < wgrid.n_nodes; ++k) {
    m.density += weights[static_cast<std::size_t>(k)];
    m.q += wgrid.nodes[static_cast<std::size_t>(k)] * weights[static_cast<std::size_t>(k)];
  }
  return m;
}

namespace {

GField make_gfield(const Mesh1D& mesh, const WGrid& wgrid) {
  GField g;
  g.mesh = mesh;
  g.wgrid = wgrid;
  g.values.assign(static_cast<std::size_t>(mesh.n_cells) * static_cast<std::size_t>(wgrid.n_nodes),
                  0.0);
  return g;
}

std::vector<double> g_densities(const GField& field) {
  std::vector<double> rho(static_cast<std::size_t>(field.mesh.n_cells));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < field.mesh.n_cells; ++j)
    rho[static_cast<std::size_t>(j)] = field.cell_density(j);
  return rho;
}

void enforce_positivity_g(const GField& field, long step) {
  for (int j = 0; j < field.mesh.n_cells; ++j)
    for (int k = 0; k < field.wgrid.n_nodes; ++k) {
      const double v = field.at(j, k);
      if (std::isnan(v))
        throw SolverError("NaN at cell " + std::to_string(j) + ", w-node " + std::to_string(k) +
                          ", step " + std::to_string(step));
      if (v < 0.0)
        throw SolverError("negative value at cell " + std::to_string(j) + ", w-node " +
                          std::to_string(k) + ", step " + std::to_string(step));
    }
}

WSnapshot make_wsnapshot(const GField& field, const PressureLaw& pressure, const EpsilonModel& eps,
                         double t, long step, bool store_values) {
  WSnapshot s;
  s.t = t;
  s.step = step;
  const int nc = field.mesh.n_cells;
  s.x.resize(static_cast<std::size_t>(nc));
  s.rho = g_densities(field);
  s.q.resize(static_cast<std::size_t>(nc));
  s.u.resize(static_cast<std::size_t>(nc));
  s.eps.resize(static_cast<std::size_t>(nc));
  const auto grad = density_gradient(field.mesh, s.rho);
  for (int j = 0; j < nc; ++j) {
    s.x[static_cast<std::size_t>(j)] = field.mesh.x_center(j);
    const auto m = w_moments(field.cell(j), field.wgrid);
    s.q[static_cast<std::size_t>(j)] = m.q;
    const double r = s.rho[static_cast<std::size_t>(j)];
    s.u[static_cast<std::size_t>(j)] = r > 0.0 ? m.q / r - pressure.value(r) : 0.0;
    s.eps[static_cast<std::size_t>(j)] = eval_epsilon(eps, r, grad[static_cast<std::size_t>(j)]);
  }
  if (store_values) s.values = field.values;
  return s;
}

}  // namespace

WRunResult run_wspace(const WRunParams& params, const MaxwellianTable& table) {
  if (!params.rho0) throw ConfigError("run_wspace: initial density profile missing");
  const Mesh1D& mesh = params.mesh;
  const WGrid& wgrid = params.wgrid;
  const int n = wgrid.n_nodes;

  GField field = make_gfield(mesh, wgrid);
  for (int j = 0; j < mesh.n_cells; ++j)
    build_mg(table, params.pressure, params.rho0(mesh.x_center(j)), wgrid,
             {field.values.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(n),
              static_cast<std::size_t>(n)});
  enforce_positivity_g(field, 0);

  // worst-case |w - p(rho)| over the admissible density range
  const double speed_bound =
      std::max(wgrid.w_max - params.pressure.value(0.0),
               params.pressure.value(kRhoMax) - wgrid.w_min);

  std::vector<double> times = params.output_times;
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (times.empty()) times.push_back(params.t_final);

  WRunResult res;
  res.diag.initial_mass = fixed_order_sum(field.values);
  const double dt_fixed = params.cfl * mesh.dx / speed_bound;
  res.diag.dt = dt_fixed;

  std::size_t oi = 0;
  while (oi < times.size() && times[oi] <= kTimeTol) {
    res.snapshots.push_back(
        make_wsnapshot(field, params.pressure, params.eps, 0.0, 0, params.store_node_values));
    ++oi;
  }

  std::vector<double> out(field.values.size());
  std::vector<double> prev;
  double t = 0.0;
  long step = 0;
  CollisionDiag cdiag;
  while (t < params.t_final - kTimeTol || oi < times.size()) {
    const double dt = dt_fixed;
    const bool need_prev = oi < times.size() && times[oi] <= t + dt + kTimeTol;
    if (need_prev) prev = field.values;

    // transport: speed of node k in cell j is w_k - p(rho_j), frozen at t^n
    const auto rho = g_densities(field);
    const auto& nodes = wgrid.nodes;
    const auto& pressure = params.pressure;
    llf_transport_step(
        mesh, n, field.values, out, dt,
        [&](int j, int k) {
          return nodes[static_cast<std::size_t>(k)] - pressure.value(rho[static_cast<std::size_t>(j)]);
        },
        params.alpha, speed_bound);
    field.values.swap(out);

    // relaxation toward M_g(rho_j), exact exponential
    {
      const auto rho_post = g_densities(field);
      const auto epsv = [&] {
        std::vector<double> e(static_cast<std::size_t>(mesh.n_cells));
        if (params.eps.kind == EpsilonModel::Kind::constant) {
          std::fill(e.begin(), e.end(), params.eps.value);
        } else {
          const auto grad = density_gradient(mesh, rho_post);
          for (int j = 0; j < mesh.n_cells; ++j)
            e[static_cast<std::size_t>(j)] = eval_epsilon(params.eps, rho_post[static_cast<std::size_t>(j)],
                                                          grad[static_cast<std::size_t>(j)]);
        }
        return e;
      }();
      double drift = 0.0;
      std::string first_error;
#pragma omp parallel
      {
        std::vector<double> mg(static_cast<std::size_t>(n));
        double local_drift = 0.0;
#pragma omp for schedule(static)
        for (int j = 0; j < mesh.n_cells; ++j) {
          try {
            build_mg(table, params.pressure, rho_post[static_cast<std::size_t>(j)], wgrid, mg);
          } catch (const std::exception& e) {
#pragma omp critical
            if (first_error.empty())
              first_error = std::string(e.what()) + " (cell " + std::to_string(j) + ")";
            continue;
          }
          const double decay = std::exp(-dt / epsv[static_cast<std::size_t>(j)]);
          for (int k = 0; k < n; ++k) {
            double& g = field.at(j, k);
            g = mg[static_cast<std::size_t>(k)] + (g - mg[static_cast<std::size_t>(k)]) * decay;
          }
          local_drift = std::max(
              local_drift, std::abs(field.cell_density(j) - rho_post[static_cast<std::size_t>(j)]));
        }
#pragma omp critical
        drift = std::max(drift, local_drift);
      }
      if (!first_error.empty()) throw SolverError("w-space relaxation: " + first_error);
      cdiag.merge(drift);
    }

    ++step;
    const double t_next = t + dt;
    enforce_positivity_g(field, step);

    const double mass = fixed_order_sum(field.values);
    if (mesh.boundary == Boundary::periodic && res.diag.initial_mass > 0.0)
      res.diag.max_rel_mass_drift =
          std::max(res.diag.max_rel_mass_drift,
                   std::abs(mass - res.diag.initial_mass) / res.diag.initial_mass);
    for (int j = 0; j < mesh.n_cells; ++j)
      res.diag.max_density = std::max(res.diag.max_density, field.cell_density(j));

    while (oi < times.size() && times[oi] <= t_next + kTimeTol) {
      const bool use_prev = (times[oi] - t) < (t_next - times[oi]);
      if (use_prev) {
        GField pf = field;
        pf.values = prev;
        res.snapshots.push_back(
            make_wsnapshot(pf, params.pressure, params.eps, t, step - 1, params.store_node_values));
      } else {
        res.snapshots.push_back(make_wsnapshot(field, params.pressure, params.eps, t_next, step,
                                               params.store_node_values));
      }
      ++oi;
    }
    t = t_next;
    if (step > static_cast<long>(params.t_final / dt_fixed) + 8) break;
  }

  res.diag.final_mass = fixed_order_sum(field.values);
  res.diag.steps = step;
  res.diag.max_collision_density_drift = cdiag.max_density_drift;
  return res;
}

}  // namespace kinetra
