#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kinetra/closures.hpp"
#include "kinetra/equilibrium.hpp"

namespace kinetra {

enum class DiffusionModel { bgk, arz, modified };
enum class Stability { stable, weakly_unstable, unstable };

std::string to_string(DiffusionModel m);
std::string to_string(Stability s);

// ---------------------------------------------------------------------------
// Chapman-Enskog diffusion coefficients
// ---------------------------------------------------------------------------

/// mu_BGK(rho) = d/drho [second moment of M_f] - F'_eq(rho)^2.
double mu_bgk(const MaxwellianTable& table, double rho);

struct Proposition1Check {
  bool hypotheses_hold = false;  // F'_eq < 0 and d/drho Var(v) < 0
  bool mu_negative = false;
};

Proposition1Check check_proposition1(const MaxwellianTable& table, double rho);

struct ArzDiffusion {
  double mu = 0.0;
  bool subcharacteristic = false;  // 0 > U'_eq > -h'
};

/// mu_ARZ(rho) = -rho^2 U'_eq (U'_eq + h').
ArzDiffusion mu_arz(const ArzClosure& closure, double rho);

/// mu(rho) = mu_BGK(rho) - rho^2 p'(rho) U'_eq(rho), the speed-form route.
double mu_modified(const MaxwellianTable& table, const PressureLaw& pressure, double rho);

/// Same coefficient via the flux-form route -rho p' F'_eq + F_eq p'; agrees
/// with mu_modified up to the discretization error of the table derivatives.
double mu_modified_flux_form(const MaxwellianTable& table, const PressureLaw& pressure, double rho);

// ---------------------------------------------------------------------------
// Sign-pattern classification
// ---------------------------------------------------------------------------

struct SignClassification {
  std::vector<std::pair<double, double>> negative_intervals;  // disjoint, sorted
  Stability stability = Stability::stable;
};

/// Classify a sampled mu(rho) profile. Samples with |mu| <= atol count as
/// zero; interval endpoints are located by linear interpolation between
/// samples. An interval touching either end of the density range makes the
/// model unstable; strictly interior intervals make it weakly unstable.
SignClassification classify(std::span<const double> rho_samples, std::span<const double> mu,
                            double atol = 1e-12);

struct DiffusionProfile {
  DiffusionModel model = DiffusionModel::bgk;
  std::vector<double> rho_samples;
  std::vector<double> mu;
  std::vector<std::pair<double, double>> negative_intervals;
  Stability classification = Stability::stable;
};

DiffusionProfile build_profile_bgk(const MaxwellianTable& table);
DiffusionProfile build_profile_modified(const MaxwellianTable& table, const PressureLaw& pressure);
DiffusionProfile build_profile_arz(const ArzClosure& closure, int n_rho = 101);

}  // namespace kinetra
