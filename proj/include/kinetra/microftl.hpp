#pragma once

#include <span>
#include <vector>

#include "kinetra/closures.hpp"
#include "kinetra/mesh.hpp"

namespace kinetra {

// ---------------------------------------------------------------------------
// Vehicles on a ring road
// ---------------------------------------------------------------------------

/// Positions are kept unwrapped (strictly increasing along the chain); the
/// leader of the last vehicle is vehicle 0 shifted by the ring length, so the
/// headways always sum to L. Wrapping happens only on output.
struct VehicleArray {
  std::vector<double> x;  // increasing
  std::vector<double> w;  // desired speed, w_i = v_i + p(rho_i)
  std::vector<double> p_state;  // per-vehicle pressure, classical-K mode only
  double ring_length = 0.0;

  int n() const { return static_cast<int>(x.size()); }
  double headway(int i) const {
    return i + 1 < n() ? x[static_cast<std::size_t>(i) + 1] - x[static_cast<std::size_t>(i)]
                       : x[0] + ring_length - x[static_cast<std::size_t>(i)];
  }
};

enum class InteractionMode {
  headway_closure,  // rho_i = ell / headway closes the system through motion
  classical_k,      // pressure per vehicle evolves by dp/dt = -C (v_{i+1}-v_i)/headway^{gamma+1}
};

struct MicroParams {
  PressureLaw pressure = PressureLaw::zero();
  SpeedClosure u_eq = SpeedClosure::linear();
  double eps = 0.05;
  InteractionMode interaction = InteractionMode::headway_closure;
  double c_gamma = 1.0;  // classical-K constants
  double gamma = 1.0;
  double vehicle_length = 1.0;
  double ring_length = 0.0;
};

struct StepEvents {
  long speed_clamps = 0;  // v = w - p fell outside [0, v_max] for a position update
};

/// rho_i = ell / headway, clipped to [0, rho_max]; bumper-to-bumper gives
/// rho_max. Throws SolverError on non-positive headway (collision).
double local_density(const VehicleArray& vehicles, const MicroParams& params, int i);

/// Actual speed used for the position update: w - p(rho) clamped to [0, v_max].
std::vector<double> vehicle_speeds(const VehicleArray& vehicles, const MicroParams& params,
                                   StepEvents* events = nullptr);

/// One RK2 (midpoint) step of the position / desired-speed system. Detects
/// collisions after the update and aborts with the offending index.
void step(VehicleArray& vehicles, const MicroParams& params, double dt,
          StepEvents* events = nullptr);

/// dt that resolves both the kinematics and the relaxation:
/// min(0.1 * min headway / v_max, eps / 5).
double suggested_dt(const VehicleArray& vehicles, const MicroParams& params);

// ---------------------------------------------------------------------------
// Construction and macroscopic sampling
// ---------------------------------------------------------------------------

/// Equidistant ring with every vehicle at the equilibrium desired speed
/// w = U_eq(rho_bar) + p(rho_bar). Ring length is n * ell / rho_bar.
VehicleArray make_uniform_ring(int n, double rho_bar, const MicroParams& params);

/// Positions drawn by inverse-CDF placement from a density profile on
/// [x_min, x_max] (deterministic: quantiles (i + 1/2)/n of the profile mass).
VehicleArray sample_from_profile(int n, const Mesh1D& mesh,
                                 const std::vector<double>& rho_profile,
                                 const MicroParams& params);

struct MacroProfile {
  std::vector<double> x;
  std::vector<double> rho;  // ell * vehicles-per-cell / dx
  std::vector<double> u;    // mean vehicle speed per cell, 0 when empty
};

MacroProfile macro_profile(const VehicleArray& vehicles, const MicroParams& params,
                           const Mesh1D& mesh);

}  // namespace kinetra
