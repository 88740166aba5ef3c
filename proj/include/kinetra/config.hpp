#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kinetra/kinetic.hpp"
#include "kinetra/mesh.hpp"
#include "kinetra/solver1d.hpp"

namespace kinetra {

enum class ScenarioKind {
  fundamental_diagram,
  diffusion_profile,
  bump,
  riemann,
  stopgo,
  micro_compare,
  wspace_bump,
};

enum class ModelChoice { boltzmann, bgk, modified_bgk };

std::string to_string(ScenarioKind s);
std::string to_string(ModelChoice m);

/// Fully resolved run description. Every field is populated after a successful
/// parse; defaults the parser filled in are listed in `defaults_applied` and
/// echoed by the manifest.
struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::bump;
  ModelChoice model = ModelChoice::boltzmann;

  // velocity grid
  int n_speeds = 5;
  double delta_a = 0.25;
  double delta_b = 0.25;
  std::vector<int> r_values;  // sweep delta_b = delta_a / r when non-empty
  JumpRounding rounding = JumpRounding::strict;

  // acceleration probability
  AccelProbability prob = AccelProbability::linear();

  // mesh
  int n_cells = 200;
  double x_min = -1.0;
  double x_max = 1.0;
  Boundary boundary = Boundary::periodic;

  // interaction rate
  EpsilonModel eps = EpsilonModel::constant(0.01);

  // initial data
  double bump_a = 0.2;
  double bump_b = 0.2;
  double rho_l = 0.2;
  double rho_r = 0.9;

  // pressure law (modified model / micro / w-space)
  double pressure_c = 1.5;
  double pressure_m = 2.0;
  bool has_pressure = false;

  // equilibrium table
  int n_rho = 101;
  double table_tol = 1e-10;
  long relax_max_steps = 1'000'000;
  bool warm_start = false;

  // run control
  double t_final = 1.0;
  std::vector<double> output_times;
  double cfl = 0.9;
  AlphaMode alpha = AlphaMode::local;
  bool store_nodes = false;

  // w-space
  int w_refine = 1;
  int w_margin = 1;

  // microscopic scenario
  int n_vehicles = 20;
  double vehicle_length = 1.0;
  double rho_bar = 0.5;
  double micro_eps = 0.05;
  double perturb = 0.05;
  bool ueq_from_table = true;
  unsigned long seed = 0;

  std::vector<std::string> defaults_applied;
  /// Every effective key=value pair, defaults included, for the manifest.
  std::vector<std::string> effective_entries() const;
};

struct ConfigIssue {
  int line = 0;  // 0 when not tied to a specific line
  bool is_error = true;
  std::string message;
};

struct ParseResult {
  std::optional<ScenarioConfig> config;  // set iff no errors
  std::vector<ConfigIssue> issues;       // errors and warnings, all of them

  bool ok() const { return config.has_value(); }
};

/// Parse a flat key = value config ('#' comments, comma-separated lists).
/// Collects every error instead of stopping at the first one.
ParseResult parse_config(const std::string& text);
ParseResult parse_config_file(const std::string& path);

}  // namespace kinetra
