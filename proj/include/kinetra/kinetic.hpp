#pragma once

#include <span>
#include <vector>

#include "kinetra/common.hpp"

namespace kinetra {

// ---------------------------------------------------------------------------
// Discrete velocity space
// ---------------------------------------------------------------------------

enum class JumpRounding {
  strict,   // delta_a/delta_b must be integer multiples of the node spacing
  nearest,  // round jumps to the nearest whole number of node steps (recorded)
};

/// Equidistant speed nodes v_k = k/(n_speeds-1) on [0, 1], with acceleration
/// and braking jumps stored as whole node offsets so that every interaction
/// outcome lands exactly on a node.
struct VelocityGrid {
  int n_speeds = 0;
  double v_max = kVMax;
  std::vector<double> nodes;
  double spacing = 0.0;  // 1/(n_speeds-1)
  double delta_a = 0.0;  // canonical values: jump_a * spacing, jump_b * spacing
  double delta_b = 0.0;
  int jump_a = 0;
  int jump_b = 0;
  bool rounded = false;  // true when JumpRounding::nearest adjusted a jump
};

VelocityGrid build_grid(int n_speeds, double delta_a, double delta_b,
                        JumpRounding rounding = JumpRounding::strict);

// ---------------------------------------------------------------------------
// Acceleration probability P(rho)
// ---------------------------------------------------------------------------

/// Probability of accelerating in a binary interaction. Non-increasing in rho,
/// with values in [0, 1].
struct AccelProbability {
  enum class Kind { linear, power, one_minus_pow, constant };

  Kind kind = Kind::linear;
  double gamma = 1.0;  // exponent of (1 - rho)^gamma or of 1 - rho^m
  double value = 1.0;  // constant law (used to freeze P in bilinearity checks)

  static AccelProbability linear() { return {Kind::linear, 1.0, 1.0}; }
  static AccelProbability power(double gamma);
  /// P = 1 - rho^m: quasi-free acceleration at low density, bounded slope at
  /// the maximum density.
  static AccelProbability one_minus_pow(double m);
  static AccelProbability constant(double value);

  double operator()(double rho) const;
};

struct ModelParams {
  VelocityGrid grid;
  double rho_max = kRhoMax;
  AccelProbability prob;
};

/// The pair (P, 1-P) applied to the two interaction outcomes. Computed so that
/// accel + brake == 1 holds exactly in floating point.
struct InteractionWeights {
  double accel;
  double brake;
};

InteractionWeights interaction_weights(const AccelProbability& prob, double rho);

// ---------------------------------------------------------------------------
// Interaction tables
// ---------------------------------------------------------------------------

/// Post-interaction node indices. accel_target and brake_target_slower are
/// indexed by the candidate's node k_*, brake_target_faster by the leader's
/// node k^* (the candidate over-brakes below a slower leader's speed).
struct InteractionTables {
  std::vector<int> accel_target;         // min{v_k + delta_a, v_max}
  std::vector<int> brake_target_slower;  // max{v_k - delta_b, 0}
  std::vector<int> brake_target_faster;  // max{v_k - delta_b, 0}
};

InteractionTables build_interaction_tables(const VelocityGrid& grid);

// ---------------------------------------------------------------------------
// Collision operator and moments
// ---------------------------------------------------------------------------

/// Q[f,f] for one spatial point. `state` holds one Dirac weight per node,
/// `out` receives the per-node rates. Throws std::domain_error on negative
/// weights or density above rho_max.
///
/// Gain assembly runs in O(n) via suffix sums over leader weights; the
/// pair-loop reference lives in kinetra::ref.
void collision_operator(std::span<const double> state, const ModelParams& params,
                        const InteractionTables& tables, std::span<double> out);

std::vector<double> collision_operator(std::span<const double> state, const ModelParams& params,
                                       const InteractionTables& tables);

struct Moments {
  double density = 0.0;
  double flux = 0.0;
  double mean_speed = 0.0;  // 0 at vacuum by convention
  double variance = 0.0;
  double energy = 0.0;
};

Moments moments(std::span<const double> state, const VelocityGrid& grid);

}  // namespace kinetra
