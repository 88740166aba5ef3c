// Acceptance suite: end-to-end checks of the model properties this toolkit is
// built around, against closed-form oracles on the two-speed model and
// sign/shape properties of the full discrete-velocity runs. Prints one
// pass/fail line per criterion; exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kinetra/analysis.hpp"
#include "kinetra/equilibrium.hpp"
#include "kinetra/microftl.hpp"
#include "kinetra/solver1d.hpp"
#include "kinetra/stability.hpp"
#include "kinetra/wspace.hpp"

using namespace kinetra;

namespace {

struct CheckFailure {
  std::string message;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure{what};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// shared fixtures, built once
// ---------------------------------------------------------------------------

struct Context {
  // two-speed model
  ModelParams p2;
  InteractionTables t2;
  MaxwellianTable table2;

  // 49-speed tables, delta_a = 1/4, delta_b = delta_a / r
  std::map<int, MaxwellianTable> tables49;

  // 5-node bump model (delta_a = delta_b = 1/4)
  ModelParams p5;
  InteractionTables t5;
  MaxwellianTable table5;

  // cached runs for the conservation sweep
  std::vector<std::pair<std::string, RunDiagnostics>> sweep;  // (label+bc, diag)
  std::vector<std::string> periodic_runs;

  void record(const std::string& label, const RunDiagnostics& d, bool periodic) {
    sweep.emplace_back(label, d);
    if (periodic) periodic_runs.push_back(label);
  }
};

Context build_context() {
  Context c;
  c.p2.grid = build_grid(2, 1.0, 1.0);
  c.p2.prob = AccelProbability::linear();
  c.t2 = build_interaction_tables(c.p2.grid);
  {
    TableBuildOptions o;
    o.n_rho = 11;
    o.tol = 1e-10;
    c.table2 = build_maxwellian_table(c.p2, c.t2, o);
  }

  for (int r : {1, 2, 3, 4}) {
    ModelParams p;
    p.grid = build_grid(49, 0.25, 0.25 / r);
    p.prob = AccelProbability::linear();
    const auto t = build_interaction_tables(p.grid);
    TableBuildOptions o;
    o.n_rho = 101;
    o.tol = 1e-10;
    c.tables49.emplace(r, build_maxwellian_table(p, t, o));
  }

  c.p5.grid = build_grid(5, 0.25, 0.25);
  c.p5.prob = AccelProbability::linear();
  c.t5 = build_interaction_tables(c.p5.grid);
  {
    TableBuildOptions o;
    o.n_rho = 101;
    o.tol = 1e-12;
    c.table5 = build_maxwellian_table(c.p5, c.t5, o);
  }
  return c;
}

SolverParams bump_run_params(const Context& c, double a, double b, const EpsilonModel& eps,
                             double t_final, int n_cells = 200) {
  SolverParams sp;
  sp.mesh = make_mesh(-1.0, 1.0, n_cells, Boundary::periodic);
  sp.model = c.p5;
  sp.collision = CollisionKind::boltzmann;
  sp.eps = eps;
  sp.rho0 = [a, b](double x) { return a + b * std::exp(-8.0 * x * x); };
  sp.t_final = t_final;
  for (int i = 0; i <= 5; ++i) sp.output_times.push_back(t_final * i / 5.0);
  return sp;
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

void criterion1_two_speed_oracle(Context& c) {
  // brute-force fixed point vs hand algebra: F_eq(rho) = rho (1 - rho)
  for (int i = 0; i < c.table2.n_rho(); ++i) {
    const double rho = c.table2.rho_samples[static_cast<std::size_t>(i)];
    const double err = std::abs(c.table2.f_eq[static_cast<std::size_t>(i)] - rho * (1.0 - rho));
    require(err <= 1e-8, "F_eq(" + fmt(rho) + ") off by " + fmt(err));
  }
  // mu_bgk = 2 rho (1 - 2 rho) at interior samples (finite-difference error)
  for (int i = 1; i + 1 < c.table2.n_rho(); ++i) {
    const double rho = c.table2.rho_samples[static_cast<std::size_t>(i)];
    const double err = std::abs(mu_bgk(c.table2, rho) - 2.0 * rho * (1.0 - 2.0 * rho));
    require(err <= 1e-4, "mu_bgk(" + fmt(rho) + ") off by " + fmt(err));
  }
  const auto profile = build_profile_bgk(c.table2);
  require(profile.classification == Stability::unstable,
          "two-speed BGK profile should classify unstable");
  require(!profile.negative_intervals.empty() &&
              profile.negative_intervals.back().second == c.table2.rho_samples.back(),
          "negative interval should reach rho_max");
}

void criterion2_fundamental_diagram_shapes(Context& c) {
  double prev_capacity = 0.0;
  for (int r : {1, 2, 3, 4}) {
    const auto& table = c.tables49.at(r);
    require(table.failed_samples.empty(), "table r=" + std::to_string(r) + " has failed samples");
    const auto fd = fundamental_diagram(table);
    const int m = table.n_rho();

    require(fd.rho_c > 0.0 && fd.rho_c < 1.0, "rho_c interior, r=" + std::to_string(r));
    int local_maxima = 0;
    for (int i = 1; i + 1 < m; ++i)
      if (fd.flux[static_cast<std::size_t>(i)] > fd.flux[static_cast<std::size_t>(i) - 1] + 1e-9 &&
          fd.flux[static_cast<std::size_t>(i)] > fd.flux[static_cast<std::size_t>(i) + 1] + 1e-9)
        ++local_maxima;
    require(local_maxima == 1, "r=" + std::to_string(r) + ": expected a single interior maximum, got " +
                                   std::to_string(local_maxima));
    // two-phase shape: rising up to the argmax, falling beyond it
    int imax = 0;
    for (int i = 1; i < m; ++i)
      if (fd.flux[static_cast<std::size_t>(i)] > fd.flux[static_cast<std::size_t>(imax)]) imax = i;
    for (int i = 0; i < imax; ++i)
      require(fd.flux[static_cast<std::size_t>(i) + 1] >= fd.flux[static_cast<std::size_t>(i)] - 1e-9,
              "flux not rising before the maximum, r=" + std::to_string(r));
    for (int i = imax; i + 1 < m; ++i)
      require(fd.flux[static_cast<std::size_t>(i) + 1] <= fd.flux[static_cast<std::size_t>(i)] + 1e-9,
              "flux not falling after the maximum, r=" + std::to_string(r));

    // free-flow linearity: least-squares line through the origin on [0, rho_c/2]
    double num = 0.0, den = 0.0;
    for (int i = 0; i < m; ++i) {
      const double rho = table.rho_samples[static_cast<std::size_t>(i)];
      if (rho > 0.5 * fd.rho_c) break;
      num += rho * fd.flux[static_cast<std::size_t>(i)];
      den += rho * rho;
    }
    const double slope = num / den;
    for (int i = 0; i < m; ++i) {
      const double rho = table.rho_samples[static_cast<std::size_t>(i)];
      if (rho > 0.5 * fd.rho_c) break;
      const double resid = std::abs(fd.flux[static_cast<std::size_t>(i)] - slope * rho);
      require(resid <= 0.02 * fd.capacity,
              "free-flow linearity residual " + fmt(resid) + " at rho=" + fmt(rho) +
                  ", r=" + std::to_string(r));
    }

    require(fd.capacity > prev_capacity,
            "capacity should decrease with delta_b (failed between r=" + std::to_string(r - 1) +
                " and r=" + std::to_string(r) + ")");
    prev_capacity = fd.capacity;
  }
}

void criterion3_sign_pattern(Context& c) {
  for (int r : {1, 2, 3, 4}) {
    const auto& table = c.tables49.at(r);
    const auto fd = fundamental_diagram(table);
    for (int i = 0; i < table.n_rho(); ++i) {
      const double rho = table.rho_samples[static_cast<std::size_t>(i)];
      if (std::abs(rho - fd.rho_c) <= table.drho() + 1e-12) continue;  // skip around rho_c
      const double dflux = fd.char_speed[static_cast<std::size_t>(i)];
      const double mu = mu_bgk(table, rho);
      if (dflux > 0.0)
        require(mu >= -1e-10, "r=" + std::to_string(r) + ": mu=" + fmt(mu) +
                                  " < -1e-10 in the rising phase at rho=" + fmt(rho));
      if (dflux < 0.0)
        require(mu < 0.0, "r=" + std::to_string(r) + ": mu=" + fmt(mu) +
                              " not negative in the falling phase at rho=" + fmt(rho));
      const auto prop = check_proposition1(table, rho);
      if (prop.hypotheses_hold)
        require(prop.mu_negative, "proposition-1 implication violated at rho=" + fmt(rho) +
                                      ", r=" + std::to_string(r));
    }
  }
}

void criterion4_modified_diffusion(Context& c) {
  for (int r : {1, 2, 3, 4}) {
    const auto& table = c.tables49.at(r);
    for (const auto& pressure : {PressureLaw::power(1.5, 2.0), PressureLaw::power(1.0, 3.0)}) {
      const std::string tag = "r=" + std::to_string(r) + ", p=" +
                              fmt(pressure.coeff()) + "*rho^" + fmt(pressure.exponent());
      const auto profile = build_profile_modified(table, pressure);
      require(profile.classification == Stability::weakly_unstable,
              tag + ": expected weakly_unstable, got " + to_string(profile.classification));
      for (const auto& [a, b] : profile.negative_intervals)
        require(a > 0.0 && b < 1.0, tag + ": negative interval touches the boundary");
      for (double rho : table.rho_samples)
        require(mu_modified(table, pressure, rho) >= mu_bgk(table, rho) - 1e-12,
                tag + ": mu_modified < mu_bgk at rho=" + fmt(rho));
    }
  }
}

void criterion5_wave_directions(Context& c) {
  // free flow: rightward drift
  {
    auto sp = bump_run_params(c, 0.2, 0.2, EpsilonModel::constant(0.01), 1.0);
    const auto res = run(sp, c.t5, c.table5);
    require(res.snapshots.size() >= 5, "free-flow run produced too few snapshots");
    for (std::size_t s = 1; s < res.snapshots.size(); ++s) {
      const double prev = peak_location(res.snapshots[s - 1].x, res.snapshots[s - 1].rho);
      const double cur = peak_location(res.snapshots[s].x, res.snapshots[s].rho);
      require(cur > prev, "free-flow peak did not move right between t=" +
                              fmt(res.snapshots[s - 1].t) + " and t=" + fmt(res.snapshots[s].t));
    }
    require(res.diag.max_rel_mass_drift <= 1e-12,
            "free-flow mass drift " + fmt(res.diag.max_rel_mass_drift));
    c.record("bump_free_flow", res.diag, true);
  }
  // congested: leftward drift with growing peak
  {
    auto sp = bump_run_params(c, 0.7, 0.2, EpsilonModel::constant(0.01), 1.0);
    const auto res = run(sp, c.t5, c.table5);
    for (std::size_t s = 1; s < res.snapshots.size(); ++s) {
      const double prev = peak_location(res.snapshots[s - 1].x, res.snapshots[s - 1].rho);
      const double cur = peak_location(res.snapshots[s].x, res.snapshots[s].rho);
      require(cur < prev, "congested peak did not move left between t=" +
                              fmt(res.snapshots[s - 1].t) + " and t=" + fmt(res.snapshots[s].t));
      require(peak_height(res.snapshots[s].rho) > peak_height(res.snapshots[s - 1].rho),
              "congested peak height did not grow at t=" + fmt(res.snapshots[s].t));
    }
    require(res.diag.max_rel_mass_drift <= 1e-12,
            "congested mass drift " + fmt(res.diag.max_rel_mass_drift));
    c.record("bump_congested", res.diag, true);
  }
}

void criterion6_stop_and_go(Context& c) {
  // variable epsilon lets backward waves grow into bounded oscillations
  auto sp_var = bump_run_params(c, 0.7, 0.2, EpsilonModel::variable(0.99), 10.0);
  const auto res_var = run(sp_var, c.t5, c.table5);
  const double tv0 = total_variation(res_var.snapshots.front().rho, true);
  const double tv_var = total_variation(res_var.snapshots.back().rho, true);
  require(tv_var > 3.0 * tv0,
          "variable-eps TV grew only from " + fmt(tv0) + " to " + fmt(tv_var));
  for (const auto& s : res_var.snapshots)
    require(peak_height(s.rho) <= 1.0 + 1e-8,
            "density overshoot " + fmt(peak_height(s.rho)) + " at t=" + fmt(s.t));
  c.record("stopgo_variable_eps", res_var.diag, true);

  auto sp_const = bump_run_params(c, 0.7, 0.2, EpsilonModel::constant(0.01), 10.0);
  const auto res_const = run(sp_const, c.t5, c.table5);
  const double tv_const = total_variation(res_const.snapshots.back().rho, true);
  require(tv_const < 1.5 * tv_var,
          "constant-eps TV " + fmt(tv_const) + " not below 1.5 x " + fmt(tv_var));
  c.record("stopgo_constant_eps", res_const.diag, true);

  // red-light Riemann datum: the variable-eps front sharpens after formation
  {
    SolverParams sp;
    sp.mesh = make_mesh(-1.0, 1.0, 200, Boundary::free_outflow);
    sp.model = c.p5;
    sp.collision = CollisionKind::boltzmann;
    sp.eps = EpsilonModel::variable(0.99);
    sp.rho0 = [](double x) { return x < 0.0 ? 0.2 : 0.9; };
    sp.t_final = 1.0;
    // the t = 0 datum is a one-cell jump, below any resolvable front width;
    // widths are compared once the shock profile has formed
    sp.output_times = {0.2, 0.4, 0.6, 0.8, 1.0};
    const auto res = run(sp, c.t5, c.table5);
    double prev = -1.0;
    for (const auto& s : res.snapshots) {
      const double w = front_width(s.x, s.rho, 0.2, 0.9);
      require(w > 0.0, "front levels not found at t=" + fmt(s.t));
      if (prev >= 0.0)
        require(w <= prev + 1e-12, "front width grew from " + fmt(prev) + " to " + fmt(w) +
                                       " at t=" + fmt(s.t));
      prev = w;
    }
    c.record("riemann_variable_eps", res.diag, false);
  }
}

void criterion7_regime_limits(Context& c) {
  // collisionless limit: the full run degenerates to pure transport
  {
    auto sp = bump_run_params(c, 0.2, 0.2, EpsilonModel::constant(1e12), 1.0);
    sp.output_times = {1.0};
    sp.store_node_values = true;
    const auto res = run(sp, c.t5, c.table5);
    const auto& snap = res.snapshots.back();

    KineticField oracle = maxwellian_field(sp.mesh, c.table5, sp.rho0);
    for (long s = 0; s < snap.step; ++s) transport_step(oracle, res.diag.dt);
    double linf = 0.0;
    for (std::size_t i = 0; i < oracle.values.size(); ++i)
      linf = std::max(linf, std::abs(oracle.values[i] - snap.values[i]));
    require(linf <= 1e-8, "collisionless run differs from pure transport by " + fmt(linf));
    c.record("collisionless_limit", res.diag, true);
  }

  // equilibrium limit: bgk at eps = 1e-6 follows the scalar equilibrium law
  {
    // T is a whole number of steps at both resolutions (dt = 0.9 dx)
    const double T = 111.0 * 0.9 * 0.01;
    auto rho_kin = [&](int n_cells) {
      auto sp = bump_run_params(c, 0.2, 0.2, EpsilonModel::constant(1e-6), T, n_cells);
      sp.collision = CollisionKind::bgk;
      sp.output_times = {T};
      const auto res = run(sp, c.t5, c.table5);
      c.record("equilibrium_limit_bgk_" + std::to_string(n_cells), res.diag, true);
      return res.snapshots.back().rho;
    };
    auto rho_scal = [&](int n_cells) {
      const auto mesh = make_mesh(-1.0, 1.0, n_cells, Boundary::periodic);
      std::vector<double> r0(static_cast<std::size_t>(n_cells));
      for (int j = 0; j < n_cells; ++j)
        r0[static_cast<std::size_t>(j)] = 0.2 + 0.2 * std::exp(-8.0 * std::pow(mesh.x_center(j), 2));
      return solve_equilibrium_law(mesh, c.table5, r0, std::vector<double>{T}).back().second;
    };
    auto restrict2 = [](const std::vector<double>& fine) {
      std::vector<double> out(fine.size() / 2);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] = 0.5 * (fine[2 * j] + fine[2 * j + 1]);
      return out;
    };
    auto l1 = [](const std::vector<double>& a, const std::vector<double>& b, double dx) {
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]) * dx;
      return s;
    };

    const auto k200 = rho_kin(200), k400 = rho_kin(400);
    const auto s200 = rho_scal(200), s400 = rho_scal(400);
    const double dx = 2.0 / 200.0;
    const double self_kin = l1(k200, restrict2(k400), dx);
    const double self_scal = l1(s200, restrict2(s400), dx);
    const double cross = l1(k200, s200, dx);
    const double bound = 2.0 * std::max(self_kin, self_scal);
    require(cross <= bound, "equilibrium-limit L1 gap " + fmt(cross) + " exceeds 2 x max(" +
                                fmt(self_kin) + ", " + fmt(self_scal) + ")");
  }
}

void criterion8_wspace_consistency(Context& c) {
  // imposed moments of M_g on every table sample
  for (const MaxwellianTable* table : {&c.table2, &c.table5}) {
    const auto pressure = PressureLaw::power(1.5, 2.0);
    const auto wgrid = build_wgrid(table->grid, pressure, 4, 1);
    std::vector<double> mg(static_cast<std::size_t>(wgrid.n_nodes));
    for (int i = 0; i < table->n_rho(); ++i) {
      const double rho = table->rho_samples[static_cast<std::size_t>(i)];
      if (rho == 0.0) continue;
      build_mg(*table, pressure, rho, wgrid, mg);
      const auto m = w_moments(mg, wgrid);
      require(std::abs(m.density - rho) <= 1e-12, "M_g mass off at rho=" + fmt(rho));
      const double target = table->u_eq[static_cast<std::size_t>(i)] + pressure.value(rho);
      require(std::abs(m.q / rho - target) <= 1e-12, "M_g first moment off at rho=" + fmt(rho));
    }
  }

  // zero pressure: the w-space run reproduces the bgk run after re-indexing
  {
    const auto mesh = make_mesh(-1.0, 1.0, 200, Boundary::periodic);
    auto rho0 = [](double x) { return 0.2 + 0.2 * std::exp(-8.0 * x * x); };
    const std::vector<double> times{0.5, 1.0};

    SolverParams sp;
    sp.mesh = mesh;
    sp.model = c.p5;
    sp.collision = CollisionKind::bgk;
    sp.eps = EpsilonModel::constant(0.01);
    sp.rho0 = rho0;
    sp.t_final = 1.0;
    sp.output_times = times;
    sp.store_node_values = true;
    const auto vres = run(sp, c.t5, c.table5);

    WRunParams wp;
    wp.mesh = mesh;
    wp.wgrid = build_wgrid(c.table5.grid, PressureLaw::zero(), 1, 0);
    wp.pressure = PressureLaw::zero();
    wp.eps = EpsilonModel::constant(0.01);
    wp.rho0 = rho0;
    wp.t_final = 1.0;
    wp.output_times = times;
    wp.store_node_values = true;
    const auto wres = run_wspace(wp, c.table5);

    require(vres.snapshots.size() == wres.snapshots.size(), "snapshot count mismatch");
    for (std::size_t s = 0; s < vres.snapshots.size(); ++s) {
      double max_diff = 0.0;
      for (std::size_t i = 0; i < vres.snapshots[s].values.size(); ++i)
        max_diff = std::max(max_diff,
                            std::abs(vres.snapshots[s].values[i] - wres.snapshots[s].values[i]));
      require(max_diff <= 1e-13, "zero-pressure w-run differs from bgk run by " + fmt(max_diff));
    }
    c.record("wspace_zero_pressure", wres.diag, true);
  }
}

void criterion9_micro_meso_link(Context& c) {
  MicroParams mp;
  mp.pressure = PressureLaw::power(1.5, 2.0);
  mp.u_eq = SpeedClosure::from_table(c.table5);
  mp.eps = 0.05;
  mp.vehicle_length = 1.0;

  for (double rho_bar : {0.3, 0.7}) {
    auto ring = make_uniform_ring(20, rho_bar, mp);
    mp.ring_length = ring.ring_length;
    const double w_eq = mp.u_eq.value(rho_bar) + mp.pressure.value(rho_bar);
    for (int i = 0; i < ring.n(); ++i)
      ring.w[static_cast<std::size_t>(i)] = w_eq * (1.0 + 0.05 * (i % 2 == 0 ? 1.0 : -1.0));

    const double dt = suggested_dt(ring, mp);
    double t = 0.0;
    while (t < 20.0 * mp.eps - 1e-12) {
      step(ring, mp, dt);
      t += dt;
    }
    const auto speeds = vehicle_speeds(ring, mp);
    const double mean = fixed_order_sum(speeds) / static_cast<double>(speeds.size());
    const double target = mp.u_eq.value(rho_bar);
    require(std::abs(mean - target) <= 0.02 * target,
            "mean speed " + fmt(mean) + " not within 2% of U_eq=" + fmt(target) +
                " at rho_bar=" + fmt(rho_bar));
  }

  // exact steady state over 10^4 steps
  {
    const double rho_bar = 0.5;
    auto ring = make_uniform_ring(20, rho_bar, mp);
    mp.ring_length = ring.ring_length;
    const double w_eq = mp.u_eq.value(rho_bar) + mp.pressure.value(rho_bar);
    const double h0 = ring.headway(0);
    const double dt = suggested_dt(ring, mp);
    for (int s = 0; s < 10000; ++s) step(ring, mp, dt);
    for (int i = 0; i < ring.n(); ++i) {
      require(std::abs(ring.w[static_cast<std::size_t>(i)] - w_eq) <= 1e-10,
              "steady w drifted by " + fmt(std::abs(ring.w[static_cast<std::size_t>(i)] - w_eq)));
      require(std::abs(ring.headway(i) - h0) <= 1e-10,
              "steady headway drifted by " + fmt(std::abs(ring.headway(i) - h0)));
    }
  }
}

void criterion10_conservation_sweep(Context& c) {
  require(!c.sweep.empty(), "no cached runs to sweep");
  for (const auto& [label, diag] : c.sweep) {
    require(diag.max_collision_density_drift <= 1e-13,
            label + ": collision density drift " + fmt(diag.max_collision_density_drift));
    require(diag.negativity_events == 0, label + ": negativity events");
    const bool periodic =
        std::find(c.periodic_runs.begin(), c.periodic_runs.end(), label) != c.periodic_runs.end();
    if (periodic)
      require(diag.max_rel_mass_drift <= 1e-12, label + ": mass drift " + fmt(diag.max_rel_mass_drift));
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* label;
    std::function<void(Context&)> fn;
  };
  const std::vector<Criterion> criteria{
      {1, "two-speed closed-form oracle", criterion1_two_speed_oracle},
      {2, "fundamental-diagram shapes, 49 speeds, r=1..4", criterion2_fundamental_diagram_shapes},
      {3, "diffusion sign pattern and proposition-1 implication", criterion3_sign_pattern},
      {4, "modified model is weakly unstable", criterion4_modified_diffusion},
      {5, "bump wave directions", criterion5_wave_directions},
      {6, "stop-and-go contrast and steepening front", criterion6_stop_and_go},
      {7, "collisionless and equilibrium limits", criterion7_regime_limits},
      {8, "w-space moment identities and zero-pressure equivalence", criterion8_wspace_consistency},
      {9, "micro-meso relaxation link", criterion9_micro_meso_link},
      {10, "conservation and positivity sweep", criterion10_conservation_sweep},
  };

  std::cout << "building shared tables..." << std::endl;
  const auto t0 = std::chrono::steady_clock::now();
  Context ctx = build_context();

  int failures = 0;
  for (const auto& cr : criteria) {
    const auto tc0 = std::chrono::steady_clock::now();
    std::string failure;
    try {
      cr.fn(ctx);
    } catch (const CheckFailure& f) {
      failure = f.message;
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - tc0).count();
    if (failure.empty()) {
      std::printf("[PASS] criterion %2d: %s (%.1fs)\n", cr.id, cr.label, secs);
    } else {
      std::printf("[FAIL] criterion %2d: %s (%.1fs)\n       %s\n", cr.id, cr.label, secs,
                  failure.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/%zu criteria passed (%.1fs total)\n", static_cast<int>(criteria.size()) - failures,
              criteria.size(), total);
  return failures == 0 ? 0 : 1;
}
