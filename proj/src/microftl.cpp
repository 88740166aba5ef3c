#include "kinetra/microftl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kinetra {

double local_density(const VehicleArray& vehicles, const MicroParams& params, int i) {
  const double h = vehicles.headway(i);
  if (!(h > 0.0))
    throw SolverError("vehicle collision: non-positive headway at index " + std::to_string(i));
  return std::clamp(params.vehicle_length / h, 0.0, kRhoMax);
}

namespace {

struct Derivs {
  std::vector<double> dx;
  std::vector<double> dw;
  std::vector<double> dp;  // classical-K mode only
};

double clamp_speed(double v, StepEvents* events) {
  if (v < 0.0 || v > kVMax) {
    if (events) ++events->speed_clamps;
    return std::clamp(v, 0.0, kVMax);
  }
  return v;
}

Derivs rhs(const VehicleArray& veh, const MicroParams& params, StepEvents* events) {
  const int n = veh.n();
  Derivs d;
  d.dx.resize(static_cast<std::size_t>(n));
  d.dw.resize(static_cast<std::size_t>(n));
  const bool classical = params.interaction == InteractionMode::classical_k;
  if (classical) d.dp.resize(static_cast<std::size_t>(n));

  for (int i = 0; i < n; ++i) {
    const double rho_i = local_density(veh, params, i);
    const double p_i = classical ? veh.p_state[static_cast<std::size_t>(i)]
                                 : params.pressure.value(rho_i);
    d.dx[static_cast<std::size_t>(i)] =
        clamp_speed(veh.w[static_cast<std::size_t>(i)] - p_i, events);
    d.dw[static_cast<std::size_t>(i)] =
        (params.u_eq.value(rho_i) + p_i - veh.w[static_cast<std::size_t>(i)]) / params.eps;
  }
  if (classical) {
    for (int i = 0; i < n; ++i) {
      const int lead = (i + 1) % n;
      const double v_i = d.dx[static_cast<std::size_t>(i)];
      const double v_lead = d.dx[static_cast<std::size_t>(lead)];
      const double h = veh.headway(i);
      d.dp[static_cast<std::size_t>(i)] =
          -params.c_gamma * (v_lead - v_i) / std::pow(h, params.gamma + 1.0);
    }
  }
  return d;
}

void axpy(VehicleArray& out, const VehicleArray& base, const Derivs& d, double a) {
  const int n = base.n();
  for (int i = 0; i < n; ++i) {
    out.x[static_cast<std::size_t>(i)] =
        base.x[static_cast<std::size_t>(i)] + a * d.dx[static_cast<std::size_t>(i)];
    out.w[static_cast<std::size_t>(i)] =
        base.w[static_cast<std::size_t>(i)] + a * d.dw[static_cast<std::size_t>(i)];
  }
  if (!d.dp.empty())
    for (int i = 0; i < n; ++i)
      out.p_state[static_cast<std::size_t>(i)] =
          base.p_state[static_cast<std::size_t>(i)] + a * d.dp[static_cast<std::size_t>(i)];
}

}  // namespace

std::vector<double> vehicle_speeds(const VehicleArray& vehicles, const MicroParams& params,
                                   StepEvents* events) {
  const int n = vehicles.n();
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double p_i = !vehicles.p_state.empty()
                           ? vehicles.p_state[static_cast<std::size_t>(i)]
                           : params.pressure.value(local_density(vehicles, params, i));
    v[static_cast<std::size_t>(i)] =
        clamp_speed(vehicles.w[static_cast<std::size_t>(i)] - p_i, events);
  }
  return v;
}

void step(VehicleArray& vehicles, const MicroParams& params, double dt, StepEvents* events) {
  if (!(dt > 0.0)) throw ConfigError("micro step requires dt > 0");
  if (params.interaction == InteractionMode::classical_k &&
      vehicles.p_state.size() != vehicles.x.size())
    throw ConfigError("classical-K mode requires an initialized per-vehicle pressure state");

  const Derivs k1 = rhs(vehicles, params, events);
  VehicleArray mid = vehicles;
  axpy(mid, vehicles, k1, 0.5 * dt);
  const Derivs k2 = rhs(mid, params, events);
  axpy(vehicles, vehicles, k2, dt);

  for (int i = 0; i < vehicles.n(); ++i)
    if (!(vehicles.headway(i) > 0.0))
      throw SolverError("vehicle collision after step at index " + std::to_string(i) +
                        "; reduce dt below " + std::to_string(dt));
}

double suggested_dt(const VehicleArray& vehicles, const MicroParams& params) {
  double hmin = vehicles.headway(0);
  for (int i = 1; i < vehicles.n(); ++i) hmin = std::min(hmin, vehicles.headway(i));
  return std::min(0.1 * hmin / kVMax, params.eps / 5.0);
}

VehicleArray make_uniform_ring(int n, double rho_bar, const MicroParams& params) {
  if (n < 2) throw ConfigError("ring requires >= 2 vehicles");
  if (!(rho_bar > 0.0) || rho_bar > kRhoMax)
    throw ConfigError("mean ring density must lie in (0, rho_max]");
  VehicleArray v;
  v.ring_length = static_cast<double>(n) * params.vehicle_length / rho_bar;
  const double spacing = v.ring_length / static_cast<double>(n);
  const double w_eq = params.u_eq.value(rho_bar) + params.pressure.value(rho_bar);
  v.x.resize(static_cast<std::size_t>(n));
  v.w.assign(static_cast<std::size_t>(n), w_eq);
  for (int i = 0; i < n; ++i) v.x[static_cast<std::size_t>(i)] = spacing * static_cast<double>(i);
  if (params.interaction == InteractionMode::classical_k)
    v.p_state.assign(static_cast<std::size_t>(n), params.pressure.value(rho_bar));
  return v;
}

VehicleArray sample_from_profile(int n, const Mesh1D& mesh,
                                 const std::vector<double>& rho_profile,
                                 const MicroParams& params) {
  if (static_cast<int>(rho_profile.size()) != mesh.n_cells)
    throw ConfigError("profile size does not match the mesh");
  const int nc = mesh.n_cells;
  std::vector<double> cum(static_cast<std::size_t>(nc) + 1, 0.0);
  for (int j = 0; j < nc; ++j)
    cum[static_cast<std::size_t>(j) + 1] =
        cum[static_cast<std::size_t>(j)] + rho_profile[static_cast<std::size_t>(j)] * mesh.dx;
  const double total = cum.back();
  if (!(total > 0.0)) throw ConfigError("profile carries no mass");

  VehicleArray v;
  v.ring_length = mesh.length();
  v.x.resize(static_cast<std::size_t>(n));
  v.w.resize(static_cast<std::size_t>(n));
  int j = 0;
  for (int i = 0; i < n; ++i) {
    const double target = total * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    while (j + 1 < nc && cum[static_cast<std::size_t>(j) + 1] < target) ++j;
    const double rho_j = rho_profile[static_cast<std::size_t>(j)];
    const double x_left = mesh.x_min + static_cast<double>(j) * mesh.dx;
    const double frac = rho_j > 0.0 ? (target - cum[static_cast<std::size_t>(j)]) / rho_j : 0.0;
    v.x[static_cast<std::size_t>(i)] = x_left + frac;
    v.w[static_cast<std::size_t>(i)] =
        params.u_eq.value(rho_j) + params.pressure.value(rho_j);
  }
  if (params.interaction == InteractionMode::classical_k)
    v.p_state.assign(static_cast<std::size_t>(n), 0.0);
  return v;
}

MacroProfile macro_profile(const VehicleArray& vehicles, const MicroParams& params,
                           const Mesh1D& mesh) {
  if (std::abs(mesh.length() - vehicles.ring_length) > 1e-9 * std::max(1.0, vehicles.ring_length))
    throw ConfigError("macro_profile: mesh extent must equal the ring length");
  const int nc = mesh.n_cells;
  MacroProfile p;
  p.x.resize(static_cast<std::size_t>(nc));
  p.rho.assign(static_cast<std::size_t>(nc), 0.0);
  p.u.assign(static_cast<std::size_t>(nc), 0.0);
  for (int j = 0; j < nc; ++j) p.x[static_cast<std::size_t>(j)] = mesh.x_center(j);

  const auto speeds = vehicle_speeds(vehicles, params);
  std::vector<int> count(static_cast<std::size_t>(nc), 0);
  const double L = vehicles.ring_length;
  for (int i = 0; i < vehicles.n(); ++i) {
    double xw = std::fmod(vehicles.x[static_cast<std::size_t>(i)] - mesh.x_min, L);
    if (xw < 0.0) xw += L;
    int j = std::min(static_cast<int>(xw / mesh.dx), nc - 1);
    ++count[static_cast<std::size_t>(j)];
    p.u[static_cast<std::size_t>(j)] += speeds[static_cast<std::size_t>(i)];
  }
  for (int j = 0; j < nc; ++j) {
    p.rho[static_cast<std::size_t>(j)] =
        params.vehicle_length * static_cast<double>(count[static_cast<std::size_t>(j)]) / mesh.dx;
    if (count[static_cast<std::size_t>(j)] > 0)
      p.u[static_cast<std::size_t>(j)] /= static_cast<double>(count[static_cast<std::size_t>(j)]);
  }
  return p;
}

}  // namespace kinetra
