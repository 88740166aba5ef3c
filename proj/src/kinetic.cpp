#include "kinetra/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kinetra {

namespace {

// Relative tolerance for checking that a jump is a whole number of node steps.
constexpr double kJumpTol = 1e-12;

int jump_steps(double delta, double spacing, int n_steps_max, const char* name,
               JumpRounding rounding, bool& rounded) {
  const double q = delta * static_cast<double>(n_steps_max);  // delta / spacing
  const double nearest = std::round(q);
  const double err = std::abs(q - nearest);
  if (rounding == JumpRounding::strict && err > kJumpTol * std::max(1.0, std::abs(q))) {
    throw ConfigError(std::string(name) + " = " + std::to_string(delta) +
                      " is not an integer multiple of the node spacing " +
                      std::to_string(spacing) + "; pick a compatible n_speeds or enable jump rounding");
  }
  if (err > kJumpTol * std::max(1.0, std::abs(q))) rounded = true;
  return static_cast<int>(nearest);
}

}  // namespace

VelocityGrid build_grid(int n_speeds, double delta_a, double delta_b, JumpRounding rounding) {
  if (n_speeds < 2) throw ConfigError("n_speeds must be >= 2, got " + std::to_string(n_speeds));
  if (!(delta_a > 0.0)) throw ConfigError("delta_a must be > 0, got " + std::to_string(delta_a));
  if (delta_b < 0.0) throw ConfigError("delta_b must be >= 0, got " + std::to_string(delta_b));

  VelocityGrid g;
  g.n_speeds = n_speeds;
  g.spacing = 1.0 / static_cast<double>(n_speeds - 1);
  g.nodes.resize(static_cast<std::size_t>(n_speeds));
  for (int k = 0; k < n_speeds; ++k)
    g.nodes[static_cast<std::size_t>(k)] = static_cast<double>(k) / static_cast<double>(n_speeds - 1);

  g.jump_a = jump_steps(delta_a, g.spacing, n_speeds - 1, "delta_a", rounding, g.rounded);
  g.jump_b = jump_steps(delta_b, g.spacing, n_speeds - 1, "delta_b", rounding, g.rounded);
  if (g.jump_a < 1)
    throw ConfigError("delta_a = " + std::to_string(delta_a) + " rounds below one node step");
  if (g.jump_b < 0) g.jump_b = 0;

  g.delta_a = g.nodes[static_cast<std::size_t>(std::min(g.jump_a, n_speeds - 1))];
  g.delta_b = g.nodes[static_cast<std::size_t>(std::min(g.jump_b, n_speeds - 1))];
  return g;
}

AccelProbability AccelProbability::power(double gamma) {
  if (!(gamma > 0.0)) throw ConfigError("P(rho) exponent must be > 0");
  return {Kind::power, gamma, 1.0};
}

AccelProbability AccelProbability::one_minus_pow(double m) {
  if (!(m >= 1.0)) throw ConfigError("P(rho) = 1 - rho^m requires m >= 1");
  return {Kind::one_minus_pow, m, 1.0};
}

AccelProbability AccelProbability::constant(double value) {
  if (value < 0.0 || value > 1.0) throw ConfigError("constant P must lie in [0, 1]");
  return {Kind::constant, 1.0, value};
}

double AccelProbability::operator()(double rho) const {
  const double r = std::clamp(rho, 0.0, kRhoMax);
  switch (kind) {
    case Kind::linear:
      return 1.0 - r;
    case Kind::power:
      return std::pow(1.0 - r, gamma);
    case Kind::one_minus_pow:
      return 1.0 - std::pow(r, gamma);
    case Kind::constant:
      return value;
  }
  return 0.0;
}

InteractionWeights interaction_weights(const AccelProbability& prob, double rho) {
  const double pa = prob(rho);
  return {pa, 1.0 - pa};
}

InteractionTables build_interaction_tables(const VelocityGrid& grid) {
  const int n = grid.n_speeds;
  InteractionTables t;
  t.accel_target.resize(static_cast<std::size_t>(n));
  t.brake_target_slower.resize(static_cast<std::size_t>(n));
  t.brake_target_faster.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    t.accel_target[static_cast<std::size_t>(k)] = std::min(k + grid.jump_a, n - 1);
    const int down = std::max(k - grid.jump_b, 0);
    t.brake_target_slower[static_cast<std::size_t>(k)] = down;
    t.brake_target_faster[static_cast<std::size_t>(k)] = down;
  }
  return t;
}

void collision_operator(std::span<const double> state, const ModelParams& params,
                        const InteractionTables& tables, std::span<double> out) {
  const int n = params.grid.n_speeds;
  if (static_cast<int>(state.size()) != n || static_cast<int>(out.size()) != n)
    throw std::domain_error("collision_operator: state size does not match the velocity grid");

  // Suffix sums over leader weights: S[k] = sum_{j>=k} f_j.
  static thread_local std::vector<double> suffix;
  suffix.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = n - 1; k >= 0; --k) {
    const double fk = state[static_cast<std::size_t>(k)];
    if (fk < 0.0) throw std::domain_error("collision_operator: negative weight at node " + std::to_string(k));
    suffix[static_cast<std::size_t>(k)] = fk + suffix[static_cast<std::size_t>(k) + 1];
  }
  // Transient density overshoot above rho_max is tolerated (P clamps to 0);
  // runs record it in their diagnostics.
  const double rho = suffix[0];
  const auto [pa, pb] = interaction_weights(params.prob, rho);

  std::fill(out.begin(), out.end(), 0.0);
  // Acceleration: any leader, weight P(rho); the leader integral contributes rho.
  for (int k = 0; k < n; ++k)
    out[static_cast<std::size_t>(tables.accel_target[static_cast<std::size_t>(k)])] +=
        pa * (state[static_cast<std::size_t>(k)] * rho);
  // Braking from the candidate's own speed (leader at least as fast: S[k]),
  // and over-braking from the leader's speed (faster candidates: S[k+1]).
  for (int k = 0; k < n; ++k) {
    const double fk = state[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(tables.brake_target_slower[static_cast<std::size_t>(k)])] +=
        pb * (fk * suffix[static_cast<std::size_t>(k)]);
    out[static_cast<std::size_t>(tables.brake_target_faster[static_cast<std::size_t>(k)])] +=
        pb * (fk * suffix[static_cast<std::size_t>(k) + 1]);
  }
  for (int k = 0; k < n; ++k)
    out[static_cast<std::size_t>(k)] -= state[static_cast<std::size_t>(k)] * rho;
}

std::vector<double> collision_operator(std::span<const double> state, const ModelParams& params,
                                       const InteractionTables& tables) {
  std::vector<double> out(state.size());
  collision_operator(state, params, tables, out);
  return out;
}

Moments moments(std::span<const double> state, const VelocityGrid& grid) {
  Moments m;
  const int n = grid.n_speeds;
  for (int k = 0; k < n; ++k) {
    const double fk = state[static_cast<std::size_t>(k)];
    const double vk = grid.nodes[static_cast<std::size_t>(k)];
    m.density += fk;
    m.flux += vk * fk;
    m.energy += vk * vk * fk;
  }
  m.mean_speed = m.density > 0.0 ? m.flux / m.density : 0.0;
  for (int k = 0; k < n; ++k) {
    const double d = grid.nodes[static_cast<std::size_t>(k)] - m.mean_speed;
    m.variance += d * d * state[static_cast<std::size_t>(k)];
  }
  return m;
}

}  // namespace kinetra
