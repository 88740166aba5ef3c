#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kinetra/equilibrium.hpp"
#include "kinetra/kinetic.hpp"
#include "kinetra/mesh.hpp"
#include "kinetra/transport.hpp"

namespace kinetra {

// ---------------------------------------------------------------------------
// State
// ---------------------------------------------------------------------------

/// f(x_j, v_k) stored cell-major: values[j * n_speeds + k].
struct KineticField {
  Mesh1D mesh;
  VelocityGrid grid;
  std::vector<double> values;

  double& at(int j, int k) {
    return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(grid.n_speeds) +
                  static_cast<std::size_t>(k)];
  }
  double at(int j, int k) const {
    return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(grid.n_speeds) +
                  static_cast<std::size_t>(k)];
  }
  std::span<const double> cell(int j) const {
    return {values.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(grid.n_speeds),
            static_cast<std::size_t>(grid.n_speeds)};
  }
  double cell_density(int j) const { return fixed_order_sum(cell(j)); }
};

KineticField make_field(const Mesh1D& mesh, const VelocityGrid& grid);

/// Field initialized with table-interpolated Maxwellians at rho0(x_j).
KineticField maxwellian_field(const Mesh1D& mesh, const MaxwellianTable& table,
                              const std::function<double(double)>& rho0);

/// Per-cell densities in a fixed summation order.
std::vector<double> cell_densities(const KineticField& field);

/// Central-difference density gradient; periodic wrap or one-sided at walls.
std::vector<double> compute_rho_x(const KineticField& field);
std::vector<double> density_gradient(const Mesh1D& mesh, std::span<const double> rho);

/// Hard positivity/NaN check; throws SolverError naming cell, node and step.
void enforce_positivity(const KineticField& field, long step);

// ---------------------------------------------------------------------------
// Interaction rate epsilon
// ---------------------------------------------------------------------------

struct EpsilonModel {
  enum class Kind { constant, variable };
  Kind kind = Kind::constant;
  double value = 0.01;  // constant rate
  double eps0 = 0.99;   // density cap of the variable law

  static EpsilonModel constant(double value);
  static EpsilonModel variable(double eps0 = 0.99);
};

/// epsilon(rho, rho_x) = min{ 1 - min(rho, eps0)^2, 1 / (1 + max(rho_x, 0)^2) }
/// for the variable law; the constant law ignores its arguments.
double eval_epsilon(const EpsilonModel& model, double rho, double rho_x);

// ---------------------------------------------------------------------------
// Split steps
// ---------------------------------------------------------------------------

/// LLF transport of every node slice at its node speed. Rejects dt above the
/// CFL bound (cfl_limit * dx / v_max) with the required dt in the message.
void transport_step(KineticField& field, double dt, AlphaMode alpha = AlphaMode::local,
                    double cfl_limit = 1.0);

struct CollisionDiag {
  double max_density_drift = 0.0;  // max over cells/steps of the per-cell density change
  void merge(double drift) { max_density_drift = std::max(max_density_drift, drift); }
};

/// Exact relaxation f <- M + (f - M) exp(-dt/eps) toward the interpolated
/// Maxwellian; the cell density is invariant.
void collision_step_bgk(KineticField& field, double dt, const EpsilonModel& eps,
                        const MaxwellianTable& table, CollisionDiag* diag = nullptr);

/// Penalized update for the full collision kernel: the stiff loss part is
/// damped implicitly through beta >= rho, giving
///   f <- f + dt / (eps + dt beta) * Q[f, f],
/// unconditionally positivity-preserving and density-invariant.
void collision_step_boltzmann(KineticField& field, double dt, const EpsilonModel& eps,
                              const ModelParams& params, const InteractionTables& tables,
                              const MaxwellianTable& table, double beta_min = 0.1,
                              CollisionDiag* diag = nullptr);

// ---------------------------------------------------------------------------
// Full runs
// ---------------------------------------------------------------------------

enum class CollisionKind { boltzmann, bgk };

struct SolverParams {
  Mesh1D mesh;
  ModelParams model;
  CollisionKind collision = CollisionKind::boltzmann;
  EpsilonModel eps;
  AlphaMode alpha = AlphaMode::local;
  double cfl = 0.9;
  double beta_min = 0.1;
  std::function<double(double)> rho0;
  double t_final = 1.0;
  std::vector<double> output_times;  // empty -> final time only
  bool store_node_values = false;    // keep full f in snapshots
};

struct Snapshot {
  double t = 0.0;
  long step = 0;
  std::vector<double> x;
  std::vector<double> rho;
  std::vector<double> flux;
  std::vector<double> u;
  std::vector<double> eps;
  std::vector<double> values;  // optional full field
};

struct RunDiagnostics {
  double initial_mass = 0.0;
  double final_mass = 0.0;
  double max_rel_mass_drift = 0.0;  // vs initial mass, per completed step
  double max_collision_density_drift = 0.0;
  double max_density = 0.0;  // over all cells and completed steps
  long steps = 0;
  double dt = 0.0;
  long negativity_events = 0;  // always 0: violations abort the run
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  RunDiagnostics diag;
};

/// First-order splitting: transport then collision, dt from the transport CFL
/// recomputed every step; snapshots at the completed step nearest each
/// requested output time, stamped with the actual time.
RunResult run(const SolverParams& params, const InteractionTables& tables,
              const MaxwellianTable& table);

// ---------------------------------------------------------------------------
// Scalar equilibrium law (relaxation-limit reference)
// ---------------------------------------------------------------------------

/// First-order LLF solve of d/dt rho + d/dx F_eq(rho) = 0 with the tabulated
/// flux. Lands exactly on each requested output time (dt clamped), so results
/// are directly comparable against kinetic snapshots.
std::vector<std::pair<double, std::vector<double>>> solve_equilibrium_law(
    const Mesh1D& mesh, const MaxwellianTable& table, std::vector<double> rho0,
    std::span<const double> output_times, double cfl = 0.9);

}  // namespace kinetra
