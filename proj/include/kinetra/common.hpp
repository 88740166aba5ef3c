#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kinetra {

inline constexpr const char* kVersion = "0.1.0";

// Normalized units used throughout: speeds in [0, kVMax], densities in [0, kRhoMax].
inline constexpr double kVMax = 1.0;
inline constexpr double kRhoMax = 1.0;

/// Invalid parameters or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Runtime failure inside a solver (NaN, negativity, collision of vehicles, CFL rejection).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Sum in fixed (index) order. Used for all conserved-mass diagnostics so that
/// results do not depend on the parallel schedule.
inline double fixed_order_sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

}  // namespace kinetra
