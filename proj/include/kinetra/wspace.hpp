#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kinetra/closures.hpp"
#include "kinetra/equilibrium.hpp"
#include "kinetra/solver1d.hpp"

namespace kinetra {

// ---------------------------------------------------------------------------
// Desired-speed grid
// ---------------------------------------------------------------------------

/// Equidistant nodes on [w_min, w_max]; the spacing divides the v-grid spacing
/// so aligned pressure shifts land exactly on nodes.
struct WGrid {
  double w_min = 0.0;
  double w_max = 0.0;
  double spacing = 0.0;
  int n_nodes = 0;
  std::vector<double> nodes;
};

/// Covers every deposition target v_k + p(rho) over rho in [0, rho_max]:
/// w_min = v_0 + p(0), w_max >= v_max + p(rho_max), plus `margin_nodes` slack.
/// `refine` subdivides the v spacing.
WGrid build_wgrid(const VelocityGrid& vgrid, const PressureLaw& pressure, int refine = 1,
                  int margin_nodes = 1);

/// g(x_j, w_k), cell-major like KineticField.
struct GField {
  Mesh1D mesh;
  WGrid wgrid;
  std::vector<double> values;

  double& at(int j, int k) {
    return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(wgrid.n_nodes) +
                  static_cast<std::size_t>(k)];
  }
  double at(int j, int k) const {
    return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(wgrid.n_nodes) +
                  static_cast<std::size_t>(k)];
  }
  std::span<const double> cell(int j) const {
    return {values.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(wgrid.n_nodes),
            static_cast<std::size_t>(wgrid.n_nodes)};
  }
  double cell_density(int j) const { return fixed_order_sum(cell(j)); }
};

// ---------------------------------------------------------------------------
// Equilibrium in w: M_g(w; rho) = M_f(w - p(rho); rho)
// ---------------------------------------------------------------------------

/// Deposits each Maxwellian weight at w = v_k + p(rho) onto the two bracketing
/// w-nodes with linear weights, which preserves the zeroth and first moments
/// exactly. Throws ConfigError when a target falls outside the grid.
void build_mg(const MaxwellianTable& table, const PressureLaw& pressure, double rho,
              const WGrid& wgrid, std::span<double> out);

struct WMoments {
  double density = 0.0;
  double q = 0.0;  // first moment in w
};

WMoments w_moments(std::span<const double> weights, const WGrid& wgrid);

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

struct WRunParams {
  Mesh1D mesh;
  WGrid wgrid;
  PressureLaw pressure = PressureLaw::zero();
  EpsilonModel eps;
  AlphaMode alpha = AlphaMode::local;
  double cfl = 0.9;
  std::function<double(double)> rho0;
  double t_final = 1.0;
  std::vector<double> output_times;
  bool store_node_values = false;
};

struct WSnapshot {
  double t = 0.0;
  long step = 0;
  std::vector<double> x;
  std::vector<double> rho;
  std::vector<double> q;
  std::vector<double> u;  // q/rho - p(rho), 0 at vacuum
  std::vector<double> eps;
  std::vector<double> values;
};

struct WRunResult {
  std::vector<WSnapshot> snapshots;
  RunDiagnostics diag;
};

/// Same transport/relaxation splitting as the v-space solver; the transport
/// speed of node k in cell j is w_k - p(rho_j), frozen at t^n, so the LLF
/// dissipation varies per interface.
WRunResult run_wspace(const WRunParams& params, const MaxwellianTable& table);

}  // namespace kinetra
