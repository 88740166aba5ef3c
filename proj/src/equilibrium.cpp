#include "kinetra/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kinetra {

RelaxResult relax_to_equilibrium(const ModelParams& params, const InteractionTables& tables,
                                 std::vector<double> init, double tol, long max_steps,
                                 double dt_cap) {
  if (!(tol > 0.0)) throw ConfigError("relaxation tolerance must be > 0");
  RelaxResult res;
  res.state = std::move(init);
  const int n = params.grid.n_speeds;
  std::vector<double> q(static_cast<std::size_t>(n));

  double rho = fixed_order_sum(res.state);
  if (rho == 0.0) {  // vacuum: Q vanishes identically
    res.residual = 0.0;
    res.converged = true;
    return res;
  }
  const double dt = std::min(0.9 / rho, dt_cap);

  for (long step = 0;; ++step) {
    collision_operator(res.state, params, tables, q);
    double r = 0.0;
    for (double v : q) r = std::max(r, std::abs(v));
    res.residual = r;
    res.steps = step;
    if (r <= tol) {
      res.converged = true;
      return res;
    }
    if (step >= max_steps) return res;  // caller decides; residual is attached
    for (int k = 0; k < n; ++k)
      res.state[static_cast<std::size_t>(k)] += dt * q[static_cast<std::size_t>(k)];
  }
}

namespace {

void fill_sample_moments(MaxwellianTable& t, int i) {
  const auto m = moments(t.maxwellians[static_cast<std::size_t>(i)], t.grid);
  t.f_eq[static_cast<std::size_t>(i)] = m.flux;
  t.u_eq[static_cast<std::size_t>(i)] = m.mean_speed;
  t.energy_eq[static_cast<std::size_t>(i)] = m.energy;
  t.variance_eq[static_cast<std::size_t>(i)] = m.variance;
}

}  // namespace

MaxwellianTable build_maxwellian_table(const ModelParams& params, const InteractionTables& tables,
                                       const TableBuildOptions& opts) {
  if (opts.n_rho < 3) throw ConfigError("table requires n_rho >= 3");
  const int n = params.grid.n_speeds;
  const int m = opts.n_rho;

  MaxwellianTable t;
  t.grid = params.grid;
  t.prob = params.prob;
  t.tol = opts.tol;
  t.init_kind = opts.warm_start ? "warm" : "uniform";
  t.rho_samples = linspace(0.0, params.rho_max, m);
  t.maxwellians.assign(static_cast<std::size_t>(m), {});
  t.f_eq.assign(static_cast<std::size_t>(m), 0.0);
  t.u_eq.assign(static_cast<std::size_t>(m), 0.0);
  t.energy_eq.assign(static_cast<std::size_t>(m), 0.0);
  t.variance_eq.assign(static_cast<std::size_t>(m), 0.0);

  auto uniform_init = [&](double rho) {
    return std::vector<double>(static_cast<std::size_t>(n), rho / static_cast<double>(n));
  };

  if (opts.warm_start) {
    std::vector<double> prev;
    for (int i = 0; i < m; ++i) {
      const double rho = t.rho_samples[static_cast<std::size_t>(i)];
      std::vector<double> init;
      if (prev.empty() || rho == 0.0) {
        init = uniform_init(rho);
      } else {
        // rescale the previous Maxwellian to the new density
        init = prev;
        const double prev_rho = fixed_order_sum(init);
        const double s = prev_rho > 0.0 ? rho / prev_rho : 0.0;
        for (double& v : init) v *= s;
        if (prev_rho == 0.0) init = uniform_init(rho);
      }
      auto r = relax_to_equilibrium(params, tables, std::move(init), opts.tol, opts.max_steps);
      if (!r.converged) t.failed_samples.push_back(i);
      prev = r.state;
      t.maxwellians[static_cast<std::size_t>(i)] = std::move(r.state);
      fill_sample_moments(t, i);
    }
  } else {
    std::vector<char> failed(static_cast<std::size_t>(m), 0);
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (int i = 0; i < m; ++i) {
      const double rho = t.rho_samples[static_cast<std::size_t>(i)];
      auto r = relax_to_equilibrium(params, tables, uniform_init(rho), opts.tol, opts.max_steps);
      if (!r.converged) failed[static_cast<std::size_t>(i)] = 1;
      t.maxwellians[static_cast<std::size_t>(i)] = std::move(r.state);
      fill_sample_moments(t, i);
    }
    for (int i = 0; i < m; ++i)
      if (failed[static_cast<std::size_t>(i)]) t.failed_samples.push_back(i);
  }

  // The vacuum sample has no mean speed of its own; extrapolate the free-flow
  // limit so density derivatives of U_eq are usable near rho = 0.
  if (m >= 3 && t.rho_samples[0] == 0.0) t.u_eq[0] = 2.0 * t.u_eq[1] - t.u_eq[2];
  return t;
}

void interpolate_maxwellian(const MaxwellianTable& table, double rho, std::span<double> out) {
  const int m = table.n_rho();
  const double rmax = table.rho_samples[static_cast<std::size_t>(m - 1)];
  if (rho < -1e-12 || rho > rmax + 1e-8)
    throw std::domain_error("interpolate_maxwellian: density " + std::to_string(rho) + " outside table range");
  rho = std::clamp(rho, 0.0, rmax);
  if (rho == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const double d = table.drho();
  int i = std::min(static_cast<int>(rho / d), m - 2);
  const double theta = (rho - table.rho_samples[static_cast<std::size_t>(i)]) / d;
  const auto& lo = table.maxwellians[static_cast<std::size_t>(i)];
  const auto& hi = table.maxwellians[static_cast<std::size_t>(i) + 1];
  const int n = table.grid.n_speeds;
  for (int k = 0; k < n; ++k)
    out[static_cast<std::size_t>(k)] = (1.0 - theta) * lo[static_cast<std::size_t>(k)] +
                                       theta * hi[static_cast<std::size_t>(k)];
  const double mass = fixed_order_sum({out.data(), out.size()});
  if (mass > 0.0) {
    const double s = rho / mass;
    for (double& v : out) v *= s;
  }
}

namespace {

std::vector<double> central_diff(const std::vector<double>& y, double d) {
  const int m = static_cast<int>(y.size());
  std::vector<double> out(static_cast<std::size_t>(m), 0.0);
  if (m < 2) return out;
  out[0] = (y[1] - y[0]) / d;
  out[static_cast<std::size_t>(m - 1)] =
      (y[static_cast<std::size_t>(m - 1)] - y[static_cast<std::size_t>(m - 2)]) / d;
  for (int i = 1; i + 1 < m; ++i)
    out[static_cast<std::size_t>(i)] =
        (y[static_cast<std::size_t>(i) + 1] - y[static_cast<std::size_t>(i) - 1]) / (2.0 * d);
  return out;
}

double interp_linear(const std::vector<double>& rho, const std::vector<double>& y, double r) {
  const int m = static_cast<int>(rho.size());
  const double d = rho[1] - rho[0];
  int i = std::min(static_cast<int>((r - rho[0]) / d), m - 2);
  i = std::max(i, 0);
  const double theta = (r - rho[static_cast<std::size_t>(i)]) / d;
  return (1.0 - theta) * y[static_cast<std::size_t>(i)] + theta * y[static_cast<std::size_t>(i) + 1];
}

}  // namespace

FundamentalDiagram fundamental_diagram(const MaxwellianTable& table) {
  if (table.n_rho() < 3) throw ConfigError("fundamental diagram requires >= 3 samples");
  FundamentalDiagram fd;
  fd.rho_samples = table.rho_samples;
  fd.flux = table.f_eq;
  fd.char_speed = central_diff(table.f_eq, table.drho());

  const int m = table.n_rho();
  int imax = 0;
  for (int i = 1; i < m; ++i)
    if (fd.flux[static_cast<std::size_t>(i)] > fd.flux[static_cast<std::size_t>(imax)]) imax = i;
  fd.rho_c = fd.rho_samples[static_cast<std::size_t>(imax)];
  fd.capacity = fd.flux[static_cast<std::size_t>(imax)];
  if (imax > 0 && imax + 1 < m) {
    // quadratic refinement through the three samples around the discrete argmax
    const double fl = fd.flux[static_cast<std::size_t>(imax) - 1];
    const double fc = fd.flux[static_cast<std::size_t>(imax)];
    const double fr = fd.flux[static_cast<std::size_t>(imax) + 1];
    const double denom = fl - 2.0 * fc + fr;
    if (denom < 0.0) {
      const double delta = 0.5 * (fl - fr) / denom;
      fd.rho_c += delta * table.drho();
      fd.capacity = fc - 0.25 * (fl - fr) * delta;
    }
  }
  return fd;
}

TableDerivatives compute_table_derivatives(const MaxwellianTable& table) {
  TableDerivatives d;
  const double h = table.drho();
  d.d_flux = central_diff(table.f_eq, h);
  d.d_energy = central_diff(table.energy_eq, h);
  d.d_variance = central_diff(table.variance_eq, h);
  d.d_mean_speed = central_diff(table.u_eq, h);
  return d;
}

MomentDerivatives d_rho_moments(const MaxwellianTable& table, double rho) {
  const double rmax = table.rho_samples.back();
  if (rho < -1e-12 || rho > rmax + 1e-12)
    throw std::domain_error("d_rho_moments: density outside [0, rho_max]");
  rho = std::clamp(rho, 0.0, rmax);
  const auto d = compute_table_derivatives(table);
  MomentDerivatives out;
  out.d_flux = interp_linear(table.rho_samples, d.d_flux, rho);
  out.d_energy = interp_linear(table.rho_samples, d.d_energy, rho);
  out.d_variance = interp_linear(table.rho_samples, d.d_variance, rho);
  out.d_mean_speed = interp_linear(table.rho_samples, d.d_mean_speed, rho);
  return out;
}

double interp_f_eq(const MaxwellianTable& table, double rho) {
  rho = std::clamp(rho, 0.0, table.rho_samples.back());
  return interp_linear(table.rho_samples, table.f_eq, rho);
}

double interp_u_eq(const MaxwellianTable& table, double rho) {
  rho = std::clamp(rho, 0.0, table.rho_samples.back());
  return interp_linear(table.rho_samples, table.u_eq, rho);
}

}  // namespace kinetra
