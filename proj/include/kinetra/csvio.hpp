#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kinetra/equilibrium.hpp"
#include "kinetra/microftl.hpp"
#include "kinetra/solver1d.hpp"
#include "kinetra/stability.hpp"
#include "kinetra/wspace.hpp"

namespace kinetra::io {

/// Scientific notation with 17 significant digits (round-trip exact doubles).
std::string fmt(double x);

// rho,v_0,...,v_{n-1},F_eq,U_eq,energy,variance — one row per density sample
void write_maxwellian_csv(const MaxwellianTable& table, std::ostream& os);
MaxwellianTable read_maxwellian_csv(std::istream& is, const VelocityGrid& grid);

// rho,mu,model,classification
void write_diffusion_csv(const DiffusionProfile& profile, std::ostream& os);
// plain-text sidecar listing the negative-mu intervals
void write_intervals_summary(const DiffusionProfile& profile, std::ostream& os);

// x,rho,flux,u,eps[,f_0..f_{n-1}]
void write_snapshot_csv(const Snapshot& snap, int n_speeds, std::ostream& os);
// x,rho,q,u,eps[,g_0..g_{n-1}]
void write_wsnapshot_csv(const WSnapshot& snap, int n_nodes, std::ostream& os);

// t,i,x,v,w — appended per output time
void write_trajectory_header(std::ostream& os);
void write_trajectory_rows(double t, const VehicleArray& vehicles, const MicroParams& params,
                           std::ostream& os);

// macro profile in the snapshot schema (flux = rho u, eps column zero)
void write_macro_profile_csv(const MacroProfile& profile, std::ostream& os);

}  // namespace kinetra::io
