#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "kinetra/mesh.hpp"

namespace kinetra {

enum class AlphaMode {
  local,   // interface dissipation = max frozen speed of the two adjacent cells
  global,  // one dissipation coefficient for the whole field
};

/// One forward-Euler step of d/dt f + d/dx (s f) = 0 per node slice with the
/// local Lax-Friedrichs flux
///   F_{j+1/2} = 1/2 [s_j f_j + s_{j+1} f_{j+1}] - 1/2 alpha_{j+1/2} (f_{j+1} - f_j).
///
/// The update is assembled in convex-combination form
///   f'_j = f_j [1 - nu/2 (aL + aR)] + nu/2 (aR - s_R) f_{j+1} + nu/2 (aL + s_L) f_{j-1},
/// algebraically identical to the flux-difference form; every coefficient is
/// nonnegative under the CFL bound, so nonnegative data stay nonnegative in
/// floating point. Cells are independent, so the result does not depend on
/// the parallel schedule.
///
/// `speed(j, k)` is the frozen transport speed of node k in cell j at t^n.
template <class SpeedFn>
void llf_transport_step(const Mesh1D& mesh, int n_nodes, std::span<const double> in,
                        std::span<double> out, double dt, SpeedFn&& speed, AlphaMode mode,
                        double global_alpha) {
  const int nc = mesh.n_cells;
  const double nu = dt / mesh.dx;

#pragma omp parallel for schedule(static)
  for (int j = 0; j < nc; ++j) {
    const int jm = mesh.left(j);
    const int jp = mesh.right(j);
    const std::size_t row = static_cast<std::size_t>(j) * static_cast<std::size_t>(n_nodes);
    const std::size_t rowm = static_cast<std::size_t>(jm) * static_cast<std::size_t>(n_nodes);
    const std::size_t rowp = static_cast<std::size_t>(jp) * static_cast<std::size_t>(n_nodes);
    for (int k = 0; k < n_nodes; ++k) {
      const double sl = speed(jm, k);
      const double sc = speed(j, k);
      const double sr = speed(jp, k);
      const double al = mode == AlphaMode::local ? std::max(std::abs(sl), std::abs(sc)) : global_alpha;
      const double ar = mode == AlphaMode::local ? std::max(std::abs(sc), std::abs(sr)) : global_alpha;
      out[row + static_cast<std::size_t>(k)] =
          in[row + static_cast<std::size_t>(k)] * (1.0 - 0.5 * nu * (al + ar)) +
          0.5 * nu * (ar - sr) * in[rowp + static_cast<std::size_t>(k)] +
          0.5 * nu * (al + sl) * in[rowm + static_cast<std::size_t>(k)];
    }
  }
}

}  // namespace kinetra
