#pragma once

#include <span>
#include <vector>

#include "kinetra/equilibrium.hpp"
#include "kinetra/kinetic.hpp"
#include "kinetra/solver1d.hpp"

// Serial reference implementations. These stay deliberately close to the
// defining formulas (explicit pair loops, interface flux arrays) and carry no
// OpenMP pragmas; the test suites check the production kernels against them,
// and the benchmark target compares wall time.
namespace kinetra::ref {

/// Literal double loop over interacting pairs (k_*, k^*) of the gain/loss
/// collision kernel. O(n^2) versus the suffix-sum production kernel.
std::vector<double> collision_operator(std::span<const double> state, const ModelParams& params,
                                       const InteractionTables& tables);

/// LLF transport assembled from an explicit interface-flux array
/// (flux-difference form), serial.
void transport_step(KineticField& field, double dt, AlphaMode alpha = AlphaMode::local);

/// Serial twin of the production BGK relaxation step (same per-cell formula,
/// plain loop). Bitwise-equal results are expected.
void collision_step_bgk(KineticField& field, double dt, const EpsilonModel& eps,
                        const MaxwellianTable& table);

/// Serial twin of the penalized Boltzmann step.
void collision_step_boltzmann(KineticField& field, double dt, const EpsilonModel& eps,
                              const ModelParams& params, const InteractionTables& tables,
                              double beta_min = 0.1);

/// Sequential table build (cold start), for checking the parallel build.
MaxwellianTable build_maxwellian_table(const ModelParams& params, const InteractionTables& tables,
                                       const TableBuildOptions& opts = {});

}  // namespace kinetra::ref
