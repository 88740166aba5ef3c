#include <doctest.h>

#include <cmath>

#include "kinetra/wspace.hpp"

using namespace kinetra;

namespace {

ModelParams model5() {
  ModelParams p;
  p.grid = build_grid(5, 0.25, 0.25);
  p.prob = AccelProbability::linear();
  return p;
}

MaxwellianTable table5(double tol = 1e-12) {
  const auto p = model5();
  const auto t = build_interaction_tables(p.grid);
  TableBuildOptions opts;
  opts.tol = tol;
  return build_maxwellian_table(p, t, opts);
}

MaxwellianTable table2(double tol = 1e-12) {
  ModelParams p;
  p.grid = build_grid(2, 1.0, 1.0);
  p.prob = AccelProbability::linear();
  const auto t = build_interaction_tables(p.grid);
  TableBuildOptions opts;
  opts.n_rho = 11;
  opts.tol = tol;
  return build_maxwellian_table(p, t, opts);
}

}  // namespace

TEST_SUITE("wspace") {

TEST_CASE("w-grid covers every deposition target") {
  const auto grid = build_grid(5, 0.25, 0.25);
  const auto pressure = PressureLaw::power(1.5, 2.0);
  const auto w = build_wgrid(grid, pressure, 1, 1);
  CHECK(w.spacing == grid.spacing);
  CHECK(w.w_min == 0.0);  // p(0) = 0 for power laws
  CHECK(w.w_max >= grid.v_max + pressure.value(1.0));
  // refinement subdivides the v spacing
  const auto w4 = build_wgrid(grid, pressure, 4, 1);
  CHECK(w4.spacing == doctest::Approx(grid.spacing / 4.0).epsilon(1e-15));
  CHECK_THROWS_AS(build_wgrid(grid, pressure, 0, 1), ConfigError);
}

TEST_CASE("zero-pressure w-grid reproduces the v-grid nodes bitwise") {
  const auto grid = build_grid(5, 0.25, 0.25);
  const auto w = build_wgrid(grid, PressureLaw::zero(), 1, 0);
  REQUIRE(w.n_nodes == grid.n_speeds);
  for (int k = 0; k < w.n_nodes; ++k)
    CHECK(w.nodes[static_cast<std::size_t>(k)] == grid.nodes[static_cast<std::size_t>(k)]);
}

TEST_CASE("two-point deposition preserves mass and first moment") {
  const auto table = table2();
  const auto pressure = PressureLaw::power(1.5, 2.0);  // p(0.6) = 0.54
  // w spacing 0.02: refine the unit v-spacing of the two-speed grid by 50
  const auto wgrid = build_wgrid(table.grid, pressure, 50, 2);
  std::vector<double> mg(static_cast<std::size_t>(wgrid.n_nodes));
  build_mg(table, pressure, 0.6, wgrid, mg);

  // targets 0.54 and 1.54 sit on nodes 27 and 77 of the 0.02-spaced grid
  CHECK(mg[27] == doctest::Approx(0.36).epsilon(1e-9));
  CHECK(mg[77] == doctest::Approx(0.24).epsilon(1e-9));
  double spill = 0.0;
  for (int k = 0; k < wgrid.n_nodes; ++k)
    if (k != 27 && k != 28 && k != 76 && k != 77 && k != 78)
      spill += mg[static_cast<std::size_t>(k)];
  CHECK(spill == 0.0);

  const auto m = w_moments(mg, wgrid);
  CHECK(std::abs(m.density - 0.6) <= 1e-12);
  // first moment: rho (U_eq + p) = 0.6 (0.4 + 0.54)
  CHECK(std::abs(m.q - 0.6 * (0.4 + 0.54)) <= 1e-9);
}

TEST_CASE("vacuum densities deposit nothing") {
  const auto table = table2();
  const auto pressure = PressureLaw::power(1.5, 2.0);
  const auto wgrid = build_wgrid(table.grid, pressure, 10, 1);
  std::vector<double> mg(static_cast<std::size_t>(wgrid.n_nodes), 1.0);
  build_mg(table, pressure, 0.0, wgrid, mg);
  for (double v : mg) CHECK(v == 0.0);
}

TEST_CASE("narrow grids are rejected") {
  const auto table = table2();
  const auto pressure = PressureLaw::power(1.5, 2.0);
  WGrid tight = build_wgrid(table.grid, pressure, 2, 0);
  tight.n_nodes -= 2;  // drop coverage of the top targets
  tight.nodes.resize(static_cast<std::size_t>(tight.n_nodes));
  tight.w_max = tight.nodes.back();
  std::vector<double> mg(static_cast<std::size_t>(tight.n_nodes));
  CHECK_THROWS_AS(build_mg(table, pressure, 1.0, tight, mg), ConfigError);
}

TEST_CASE("moment identity holds on every table sample") {
  for (const auto& table : {table2(), table5()}) {
    for (const auto& pressure : {PressureLaw::power(1.5, 2.0), PressureLaw::power(1.0, 3.0)}) {
      const auto wgrid = build_wgrid(table.grid, pressure, 4, 1);
      std::vector<double> mg(static_cast<std::size_t>(wgrid.n_nodes));
      for (int i = 0; i < table.n_rho(); ++i) {
        const double rho = table.rho_samples[static_cast<std::size_t>(i)];
        if (rho == 0.0) continue;
        build_mg(table, pressure, rho, wgrid, mg);
        const auto m = w_moments(mg, wgrid);
        CHECK(std::abs(m.density - rho) <= 1e-12);
        const double target = table.u_eq[static_cast<std::size_t>(i)] + pressure.value(rho);
        CHECK(std::abs(m.q / rho - target) <= 1e-12);
      }
    }
  }
}

TEST_CASE("equilibrium g-fields are stationary over 100 steps") {
  const auto table = table5(1e-13);
  const auto pressure = PressureLaw::power(1.5, 2.0);

  WRunParams wp;
  wp.mesh = make_mesh(-1.0, 1.0, 32, Boundary::periodic);
  wp.wgrid = build_wgrid(table.grid, pressure, 1, 1);
  wp.pressure = pressure;
  wp.eps = EpsilonModel::constant(0.01);
  wp.rho0 = [](double) { return 0.5; };
  wp.store_node_values = true;

  // 100 steps at the run's own CFL dt
  const double speed_bound = wp.wgrid.w_max;
  wp.t_final = 100.0 * 0.9 * wp.mesh.dx / speed_bound;
  wp.output_times = {0.0, wp.t_final};

  const auto result = run_wspace(wp, table);
  REQUIRE(result.snapshots.size() == 2);
  double err = 0.0;
  for (std::size_t i = 0; i < result.snapshots[0].values.size(); ++i)
    err = std::max(err, std::abs(result.snapshots[1].values[i] - result.snapshots[0].values[i]));
  CHECK(err <= 1e-10);
  CHECK(result.diag.max_collision_density_drift <= 1e-13);
}

TEST_CASE("zero pressure reproduces the v-space bgk run bitwise") {
  const auto table = table5();
  const auto mesh = make_mesh(-1.0, 1.0, 50, Boundary::periodic);
  auto rho0 = [](double x) { return 0.3 + 0.2 * std::exp(-8.0 * x * x); };
  const auto eps = EpsilonModel::constant(0.05);
  const std::vector<double> times{0.1, 0.2};

  const auto params = model5();
  const auto tables = build_interaction_tables(params.grid);
  SolverParams sp;
  sp.mesh = mesh;
  sp.model = params;
  sp.collision = CollisionKind::bgk;
  sp.eps = eps;
  sp.rho0 = rho0;
  sp.t_final = 0.2;
  sp.output_times = times;
  sp.store_node_values = true;
  const auto v_run = run(sp, tables, table);

  WRunParams wp;
  wp.mesh = mesh;
  wp.wgrid = build_wgrid(table.grid, PressureLaw::zero(), 1, 0);
  wp.pressure = PressureLaw::zero();
  wp.eps = eps;
  wp.rho0 = rho0;
  wp.t_final = 0.2;
  wp.output_times = times;
  wp.store_node_values = true;
  const auto w_run = run_wspace(wp, table);

  REQUIRE(v_run.snapshots.size() == w_run.snapshots.size());
  for (std::size_t s = 0; s < v_run.snapshots.size(); ++s) {
    CHECK(v_run.snapshots[s].t == w_run.snapshots[s].t);
    CHECK(v_run.snapshots[s].values == w_run.snapshots[s].values);
    CHECK(v_run.snapshots[s].rho == w_run.snapshots[s].rho);
  }
}

TEST_CASE("negative transport speeds are handled by the two-sided flux") {
  // strong pressure makes w - p(rho) negative for the slowest desired speeds
  const auto table = table5();
  const auto pressure = PressureLaw::power(1.5, 2.0);
  WRunParams wp;
  wp.mesh = make_mesh(-1.0, 1.0, 50, Boundary::periodic);
  wp.wgrid = build_wgrid(table.grid, pressure, 1, 1);
  wp.pressure = pressure;
  wp.eps = EpsilonModel::constant(0.05);
  wp.rho0 = [](double x) { return 0.7 + 0.2 * std::exp(-8.0 * x * x); };
  wp.t_final = 0.3;
  wp.output_times = {0.3};
  const auto result = run_wspace(wp, table);
  CHECK(result.diag.max_rel_mass_drift <= 1e-12);
  CHECK(result.diag.negativity_events == 0);
  for (double r : result.snapshots.back().rho) {
    CHECK(r >= 0.0);
    CHECK(r <= 1.0 + 1e-8);
  }
}

}  // TEST_SUITE
