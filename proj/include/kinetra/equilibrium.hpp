#pragma once

#include <span>
#include <string>
#include <vector>

#include "kinetra/kinetic.hpp"

namespace kinetra {

// ---------------------------------------------------------------------------
// Space-homogeneous relaxation to equilibrium
// ---------------------------------------------------------------------------

struct RelaxResult {
  std::vector<double> state;
  double residual = 0.0;  // final max-norm of Q
  long steps = 0;
  bool converged = false;
};

/// Explicit Euler on df/dt = Q[f,f] with dt = min(0.9/rho, dt_cap), which keeps
/// all weights nonnegative (the loss coefficient is rho). Stops when
/// ||Q||_inf <= tol; a non-converged result carries the final residual.
RelaxResult relax_to_equilibrium(const ModelParams& params, const InteractionTables& tables,
                                 std::vector<double> init, double tol, long max_steps,
                                 double dt_cap = 1e6);

// ---------------------------------------------------------------------------
// Maxwellian table over a density sweep
// ---------------------------------------------------------------------------

struct MaxwellianTable {
  VelocityGrid grid;
  AccelProbability prob;
  std::vector<double> rho_samples;
  std::vector<std::vector<double>> maxwellians;
  std::vector<double> f_eq;
  std::vector<double> u_eq;  // vacuum sample extrapolated from the neighbors
  std::vector<double> energy_eq;
  std::vector<double> variance_eq;
  std::vector<int> failed_samples;  // indices where relaxation did not converge
  double tol = 0.0;
  std::string init_kind;  // initial-state provenance ("uniform" or "warm")

  int n_rho() const { return static_cast<int>(rho_samples.size()); }
  double drho() const { return rho_samples.size() > 1 ? rho_samples[1] - rho_samples[0] : 0.0; }
};

struct TableBuildOptions {
  int n_rho = 101;
  double tol = 1e-10;
  long max_steps = 1'000'000;
  bool warm_start = false;  // reuse the previous sample's Maxwellian (sequential)
  bool parallel = true;     // cold start may run samples concurrently
};

MaxwellianTable build_maxwellian_table(const ModelParams& params, const InteractionTables& tables,
                                       const TableBuildOptions& opts = {});

/// Linear-in-rho interpolation of the tabulated Maxwellians, rescaled so the
/// result carries exactly the requested density. Throws std::domain_error for
/// rho outside [0, rho_max].
void interpolate_maxwellian(const MaxwellianTable& table, double rho, std::span<double> out);

// ---------------------------------------------------------------------------
// Fundamental diagram and density derivatives
// ---------------------------------------------------------------------------

struct FundamentalDiagram {
  std::vector<double> rho_samples;
  std::vector<double> flux;        // F_eq per sample
  std::vector<double> char_speed;  // F'_eq, central differences (one-sided ends)
  double rho_c = 0.0;              // argmax of the flux, quadratic refinement
  double capacity = 0.0;           // max flux
};

FundamentalDiagram fundamental_diagram(const MaxwellianTable& table);

/// Per-sample density derivatives of the tabulated equilibrium moments.
struct TableDerivatives {
  std::vector<double> d_flux;
  std::vector<double> d_energy;
  std::vector<double> d_variance;
  std::vector<double> d_mean_speed;
};

TableDerivatives compute_table_derivatives(const MaxwellianTable& table);

struct MomentDerivatives {
  double d_flux = 0.0;
  double d_energy = 0.0;
  double d_variance = 0.0;
  double d_mean_speed = 0.0;
};

/// Derivatives at an arbitrary density: central differences on the table,
/// linearly interpolated between samples (exact at the samples themselves).
MomentDerivatives d_rho_moments(const MaxwellianTable& table, double rho);

/// Piecewise-linear interpolants of the tabulated flux and its derivative.
double interp_f_eq(const MaxwellianTable& table, double rho);
double interp_u_eq(const MaxwellianTable& table, double rho);

}  // namespace kinetra
