#include "kinetra/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "kinetra/analysis.hpp"
#include "kinetra/csvio.hpp"
#include "kinetra/microftl.hpp"
#include "kinetra/stability.hpp"
#include "kinetra/wspace.hpp"

namespace kinetra {

namespace {

namespace fs = std::filesystem;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw SolverError("cannot write output file " + p.string());
  return os;
}

struct Emitter {
  fs::path dir;
  std::vector<std::string> files;
  std::vector<std::string> notes;

  std::ofstream file(const std::string& name) {
    files.push_back(name);
    return open_out(dir / name);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string num(double x) { return io::fmt(x); }

std::function<double(double)> initial_profile(const ScenarioConfig& cfg) {
  if (cfg.scenario == ScenarioKind::riemann) {
    const double rl = cfg.rho_l, rr = cfg.rho_r;
    return [rl, rr](double x) { return x < 0.0 ? rl : rr; };
  }
  const double a = cfg.bump_a, b = cfg.bump_b;
  return [a, b](double x) { return a + b * std::exp(-8.0 * x * x); };
}

MaxwellianTable build_table(const ScenarioConfig& cfg, double delta_b) {
  ModelParams params;
  params.grid = build_grid(cfg.n_speeds, cfg.delta_a, delta_b, cfg.rounding);
  params.prob = cfg.prob;
  const auto tables = build_interaction_tables(params.grid);
  TableBuildOptions opts;
  opts.n_rho = cfg.n_rho;
  opts.tol = cfg.table_tol;
  opts.max_steps = cfg.relax_max_steps;
  opts.warm_start = cfg.warm_start;
  return build_maxwellian_table(params, tables, opts);
}

void check_converged(const MaxwellianTable& table, const std::string& what) {
  if (!table.failed_samples.empty()) {
    std::ostringstream ss;
    ss << what << ": relaxation did not converge at " << table.failed_samples.size()
       << " density sample(s), first at rho = "
       << table.rho_samples[static_cast<std::size_t>(table.failed_samples.front())];
    throw SolverError(ss.str());
  }
}

void write_fd_csv(const FundamentalDiagram& fd, std::ostream& os) {
  os << "rho,F_eq,F_prime\n";
  for (std::size_t i = 0; i < fd.rho_samples.size(); ++i)
    os << num(fd.rho_samples[i]) << ',' << num(fd.flux[i]) << ',' << num(fd.char_speed[i]) << '\n';
}

void scenario_fundamental_diagram(const ScenarioConfig& cfg, Emitter& em, std::ostream& summary) {
  struct Row {
    std::string label;
    double delta_b, rho_c, capacity;
  };
  std::vector<Row> rows;
  std::vector<std::pair<std::string, double>> sweep;
  if (cfg.r_values.empty())
    sweep.emplace_back("", cfg.delta_b);
  else
    for (int r : cfg.r_values) sweep.emplace_back("_r" + std::to_string(r), cfg.delta_a / r);

  for (const auto& [suffix, db] : sweep) {
    const auto table = build_table(cfg, db);
    check_converged(table, "fundamental_diagram" + suffix);
    const auto fd = fundamental_diagram(table);
    {
      auto os = em.file("maxwellians" + suffix + ".csv");
      io::write_maxwellian_csv(table, os);
    }
    {
      auto os = em.file("fundamental_diagram" + suffix + ".csv");
      write_fd_csv(fd, os);
    }
    rows.push_back({suffix.empty() ? "delta_b=" + num(db) : suffix.substr(1), db, fd.rho_c,
                    fd.capacity});
  }

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.capacity > b.capacity; });
  summary << "capacities (decreasing):\n";
  for (const auto& r : rows)
    summary << "  " << r.label << ": capacity = " << num(r.capacity) << " at rho_c = " << num(r.rho_c)
            << " (delta_b = " << num(r.delta_b) << ")\n";
}

void scenario_diffusion_profile(const ScenarioConfig& cfg, Emitter& em, std::ostream& summary) {
  std::vector<std::pair<std::string, double>> sweep;
  if (cfg.r_values.empty())
    sweep.emplace_back("", cfg.delta_b);
  else
    for (int r : cfg.r_values) sweep.emplace_back("_r" + std::to_string(r), cfg.delta_a / r);

  for (const auto& [suffix, db] : sweep) {
    const auto table = build_table(cfg, db);
    check_converged(table, "diffusion_profile" + suffix);
    DiffusionProfile profile;
    if (cfg.model == ModelChoice::modified_bgk) {
      const auto pressure = PressureLaw::power(cfg.pressure_c, cfg.pressure_m);
      profile = build_profile_modified(table, pressure);
    } else {
      profile = build_profile_bgk(table);
    }
    {
      auto os = em.file("diffusion" + suffix + ".csv");
      io::write_diffusion_csv(profile, os);
    }
    {
      auto os = em.file("diffusion" + suffix + "_intervals.txt");
      io::write_intervals_summary(profile, os);
    }
    summary << "profile" << (suffix.empty() ? "" : " " + suffix.substr(1))
            << ": classification = " << to_string(profile.classification) << ", negative intervals:";
    for (const auto& [a, b] : profile.negative_intervals)
      summary << " (" << num(a) << "," << num(b) << ")";
    if (profile.negative_intervals.empty()) summary << " none";
    summary << '\n';
  }
}

void scenario_kinetic_run(const ScenarioConfig& cfg, Emitter& em, std::ostream& summary,
                          RunDiagnostics& diag_out) {
  ModelParams params;
  params.grid = build_grid(cfg.n_speeds, cfg.delta_a, cfg.delta_b, cfg.rounding);
  params.prob = cfg.prob;
  const auto tables = build_interaction_tables(params.grid);
  const auto table = build_table(cfg, cfg.delta_b);
  check_converged(table, to_string(cfg.scenario));

  SolverParams sp;
  sp.mesh = make_mesh(cfg.x_min, cfg.x_max, cfg.n_cells, cfg.boundary);
  sp.model = params;
  sp.collision = cfg.model == ModelChoice::bgk ? CollisionKind::bgk : CollisionKind::boltzmann;
  sp.eps = cfg.eps;
  sp.alpha = cfg.alpha;
  sp.cfl = cfg.cfl;
  sp.rho0 = initial_profile(cfg);
  sp.t_final = cfg.t_final;
  sp.output_times = cfg.output_times;
  sp.store_node_values = cfg.store_nodes;

  const auto result = run(sp, tables, table);
  diag_out = result.diag;

  for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "snapshot_%02zu.csv", i);
    auto os = em.file(name);
    io::write_snapshot_csv(result.snapshots[i], params.grid.n_speeds, os);
  }

  // equilibrium-law reference at the same output times
  {
    std::vector<double> rho0(static_cast<std::size_t>(sp.mesh.n_cells));
    for (int j = 0; j < sp.mesh.n_cells; ++j)
      rho0[static_cast<std::size_t>(j)] = sp.rho0(sp.mesh.x_center(j));
    std::vector<double> times;
    for (const auto& s : result.snapshots) times.push_back(s.t);
    const auto eq = solve_equilibrium_law(sp.mesh, table, rho0, times, cfg.cfl);
    for (std::size_t i = 0; i < eq.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "equilibrium_%02zu.csv", i);
      auto os = em.file(name);
      os << "x,rho\n";
      for (int j = 0; j < sp.mesh.n_cells; ++j)
        os << num(sp.mesh.x_center(j)) << ',' << num(eq[i].second[static_cast<std::size_t>(j)]) << '\n';
    }
  }

  const bool periodic = cfg.boundary == Boundary::periodic;
  summary << "snapshots: t, peak_x, peak_rho, total_variation, front_width\n";
  for (const auto& s : result.snapshots) {
    summary << "  " << num(s.t) << ", " << num(peak_location(s.x, s.rho)) << ", "
            << num(peak_height(s.rho)) << ", " << num(total_variation(s.rho, periodic)) << ", "
            << num(front_width(s.x, s.rho, std::min(cfg.rho_l, cfg.rho_r),
                               std::max(cfg.rho_l, cfg.rho_r)))
            << '\n';
  }
  if (result.snapshots.size() >= 2) {
    const auto& first = result.snapshots.front();
    const auto& last = result.snapshots.back();
    const double drift = peak_location(last.x, last.rho) - peak_location(first.x, first.rho);
    summary << "peak_drift_sign = " << (drift > 0 ? "positive" : drift < 0 ? "negative" : "zero")
            << '\n';
    summary << "peak_height_trend = "
            << (peak_height(last.rho) > peak_height(first.rho) ? "increasing" : "non-increasing")
            << '\n';
    summary << "tv_ratio_final_over_initial = "
            << num(total_variation(last.rho, periodic) / total_variation(first.rho, periodic))
            << '\n';
    double rho_max_seen = 0.0;
    for (const auto& s : result.snapshots) rho_max_seen = std::max(rho_max_seen, peak_height(s.rho));
    summary << "max_rho = " << num(rho_max_seen) << '\n';
  }
}

void scenario_micro(const ScenarioConfig& cfg, Emitter& em, std::ostream& summary) {
  MicroParams mp;
  mp.pressure = PressureLaw::power(cfg.pressure_c, cfg.pressure_m);
  mp.eps = cfg.micro_eps;
  mp.vehicle_length = cfg.vehicle_length;

  MaxwellianTable table;  // keep alive for the table-backed closure
  if (cfg.ueq_from_table) {
    table = build_table(cfg, cfg.delta_b);
    check_converged(table, "micro_compare");
    mp.u_eq = SpeedClosure::from_table(table);
  } else {
    mp.u_eq = SpeedClosure::linear();
  }

  VehicleArray veh = make_uniform_ring(cfg.n_vehicles, cfg.rho_bar, mp);
  mp.ring_length = veh.ring_length;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (double& w : veh.w) w *= 1.0 + cfg.perturb * unit(rng);

  const double dt = suggested_dt(veh, mp);
  StepEvents events;
  auto traj = em.file("trajectory.csv");
  io::write_trajectory_header(traj);
  io::write_trajectory_rows(0.0, veh, mp, traj);

  std::vector<double> times = cfg.output_times;
  std::sort(times.begin(), times.end());
  double t = 0.0;
  std::size_t oi = 0;
  while (oi < times.size() && times[oi] <= 1e-12) ++oi;
  while (t < cfg.t_final - 1e-12) {
    step(veh, mp, dt, &events);
    t += dt;
    while (oi < times.size() && times[oi] <= t + 1e-12) {
      io::write_trajectory_rows(t, veh, mp, traj);
      ++oi;
    }
  }

  {
    const auto mesh = make_mesh(0.0, veh.ring_length, cfg.n_cells, Boundary::periodic);
    const auto mac = macro_profile(veh, mp, mesh);
    auto os = em.file("macro_profile.csv");
    io::write_macro_profile_csv(mac, os);
  }

  const auto speeds = vehicle_speeds(veh, mp);
  const double mean_v = fixed_order_sum(speeds) / static_cast<double>(speeds.size());
  const double u_target = mp.u_eq.value(cfg.rho_bar);
  summary << "t_final = " << num(t) << ", dt = " << num(dt) << '\n';
  summary << "mean_speed = " << num(mean_v) << ", U_eq(rho_bar) = " << num(u_target) << '\n';
  summary << "relative_speed_error = "
          << num(u_target != 0.0 ? std::abs(mean_v - u_target) / u_target : 0.0) << '\n';
  summary << "speed_clamp_events = " << events.speed_clamps << '\n';
}

void scenario_wspace(const ScenarioConfig& cfg, Emitter& em, std::ostream& summary,
                     RunDiagnostics& diag_out) {
  const auto table = build_table(cfg, cfg.delta_b);
  check_converged(table, "wspace_bump");
  const auto pressure = PressureLaw::power(cfg.pressure_c, cfg.pressure_m);

  WRunParams wp;
  wp.mesh = make_mesh(cfg.x_min, cfg.x_max, cfg.n_cells, cfg.boundary);
  wp.wgrid = build_wgrid(table.grid, pressure, cfg.w_refine, cfg.w_margin);
  wp.pressure = pressure;
  wp.eps = cfg.eps;
  wp.alpha = cfg.alpha;
  wp.cfl = cfg.cfl;
  wp.rho0 = initial_profile(cfg);
  wp.t_final = cfg.t_final;
  wp.output_times = cfg.output_times;
  wp.store_node_values = cfg.store_nodes;

  const auto result = run_wspace(wp, table);
  diag_out = result.diag;

  for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "wsnapshot_%02zu.csv", i);
    auto os = em.file(name);
    io::write_wsnapshot_csv(result.snapshots[i], wp.wgrid.n_nodes, os);
  }

  // residual of the imposed first-moment identity over the table samples
  double max_moment_residual = 0.0;
  std::vector<double> mg(static_cast<std::size_t>(wp.wgrid.n_nodes));
  for (int i = 0; i < table.n_rho(); ++i) {
    const double rho = table.rho_samples[static_cast<std::size_t>(i)];
    if (rho == 0.0) continue;
    build_mg(table, pressure, rho, wp.wgrid, mg);
    const auto m = w_moments(mg, wp.wgrid);
    const double target = table.u_eq[static_cast<std::size_t>(i)] + pressure.value(rho);
    max_moment_residual = std::max(max_moment_residual, std::abs(m.q / rho - target));
  }
  summary << "max_mg_moment_residual = " << num(max_moment_residual) << '\n';

  const bool periodic = cfg.boundary == Boundary::periodic;
  summary << "snapshots: t, peak_x, peak_rho, total_variation\n";
  for (const auto& s : result.snapshots)
    summary << "  " << num(s.t) << ", " << num(peak_location(s.x, s.rho)) << ", "
            << num(peak_height(s.rho)) << ", " << num(total_variation(s.rho, periodic)) << '\n';
}

}  // namespace

ScenarioOutcome run_scenario(const ScenarioConfig& config, const std::string& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  Emitter em;
  em.dir = out_dir;
  std::error_code ec;
  fs::create_directories(em.dir, ec);
  if (ec) return {2, "cannot create output directory " + out_dir + ": " + ec.message()};

  std::ostringstream summary;
  RunDiagnostics diag;
  bool has_diag = false;
  ScenarioOutcome outcome;

  try {
    switch (config.scenario) {
      case ScenarioKind::fundamental_diagram:
        scenario_fundamental_diagram(config, em, summary);
        break;
      case ScenarioKind::diffusion_profile:
        scenario_diffusion_profile(config, em, summary);
        break;
      case ScenarioKind::bump:
      case ScenarioKind::riemann:
      case ScenarioKind::stopgo:
        scenario_kinetic_run(config, em, summary, diag);
        has_diag = true;
        break;
      case ScenarioKind::micro_compare:
        scenario_micro(config, em, summary);
        break;
      case ScenarioKind::wspace_bump:
        scenario_wspace(config, em, summary, diag);
        has_diag = true;
        break;
    }
  } catch (const std::exception& e) {
    outcome.exit_code = 2;
    outcome.message = e.what();
    auto os = open_out(em.dir / "error.txt");
    os << e.what() << '\n';
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  {
    auto os = open_out(em.dir / "manifest.txt");
    os << "kinetra " << kVersion << '\n';
    const auto entries = config.effective_entries();
    std::string all;
    for (const auto& e : entries) all += e + '\n';
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a(all)));
    os << "config_hash = " << hash << "\n\n";
    os << "# effective configuration\n" << all;
    os << "\n# defaults applied by the parser\n";
    if (config.defaults_applied.empty()) os << "(none)\n";
    for (const auto& d : config.defaults_applied) os << d << '\n';
    os << "\n# diagnostics\n";
    os << "wall_time_s = " << wall << '\n';
    os << "exit_code = " << outcome.exit_code << '\n';
    if (has_diag) {
      os << "steps = " << diag.steps << '\n';
      os << "dt = " << num(diag.dt) << '\n';
      os << "initial_mass = " << num(diag.initial_mass) << '\n';
      os << "final_mass = " << num(diag.final_mass) << '\n';
      os << "max_rel_mass_drift = " << num(diag.max_rel_mass_drift) << '\n';
      os << "max_collision_density_drift = " << num(diag.max_collision_density_drift) << '\n';
      os << "negativity_events = " << diag.negativity_events << '\n';
    }
    os << "\n# files\n";
    for (const auto& f : em.files) os << f << '\n';
  }

  if (outcome.exit_code == 0) {
    auto os = open_out(em.dir / "summary.txt");
    os << "scenario: " << to_string(config.scenario) << '\n' << summary.str();
  }
  return outcome;
}

}  // namespace kinetra
