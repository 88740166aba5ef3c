#include "kinetra/stability.hpp"

#include <cmath>
#include <stdexcept>

namespace kinetra {

std::string to_string(DiffusionModel m) {
  switch (m) {
    case DiffusionModel::bgk:
      return "bgk";
    case DiffusionModel::arz:
      return "arz";
    case DiffusionModel::modified:
      return "modified";
  }
  return "?";
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable:
      return "stable";
    case Stability::weakly_unstable:
      return "weakly_unstable";
    case Stability::unstable:
      return "unstable";
  }
  return "?";
}

double mu_bgk(const MaxwellianTable& table, double rho) {
  const auto d = d_rho_moments(table, rho);
  return d.d_energy - d.d_flux * d.d_flux;
}

Proposition1Check check_proposition1(const MaxwellianTable& table, double rho) {
  const auto d = d_rho_moments(table, rho);
  Proposition1Check c;
  c.hypotheses_hold = d.d_flux < 0.0 && d.d_variance < 0.0;
  c.mu_negative = mu_bgk(table, rho) < 0.0;
  return c;
}

ArzDiffusion mu_arz(const ArzClosure& closure, double rho) {
  const double du = closure.u_eq.deriv(rho);
  const double dh = closure.hesitation.deriv(rho);
  if (!(dh > 0.0) && rho > 0.0 && rho < kRhoMax)
    throw ConfigError("ARZ hesitation function is not strictly increasing at rho = " +
                      std::to_string(rho));
  ArzDiffusion out;
  out.mu = -rho * rho * du * (du + dh);
  out.subcharacteristic = 0.0 > du && du > -dh;
  return out;
}

double mu_modified(const MaxwellianTable& table, const PressureLaw& pressure, double rho) {
  const double du = d_rho_moments(table, rho).d_mean_speed;
  return mu_bgk(table, rho) - rho * rho * pressure.deriv(rho) * du;
}

double mu_modified_flux_form(const MaxwellianTable& table, const PressureLaw& pressure, double rho) {
  const auto d = d_rho_moments(table, rho);
  const double dp = pressure.deriv(rho);
  return d.d_energy - d.d_flux * d.d_flux - rho * dp * d.d_flux + interp_f_eq(table, rho) * dp;
}

SignClassification classify(std::span<const double> rho_samples, std::span<const double> mu,
                            double atol) {
  const int m = static_cast<int>(rho_samples.size());
  if (m < 3 || mu.size() != rho_samples.size())
    throw ConfigError("classify requires >= 3 matching (rho, mu) samples");

  auto negative = [&](int i) { return mu[static_cast<std::size_t>(i)] < -atol; };
  auto cross = [&](int a, int b) {
    // zero crossing between samples a (non-negative) and b (negative), or vice versa
    const double ya = mu[static_cast<std::size_t>(a)];
    const double yb = mu[static_cast<std::size_t>(b)];
    if (std::abs(ya) <= atol) return rho_samples[static_cast<std::size_t>(a)];
    if (std::abs(yb) <= atol) return rho_samples[static_cast<std::size_t>(b)];
    const double t = ya / (ya - yb);
    return rho_samples[static_cast<std::size_t>(a)] +
           t * (rho_samples[static_cast<std::size_t>(b)] - rho_samples[static_cast<std::size_t>(a)]);
  };

  SignClassification out;
  bool touches_boundary = false;
  int i = 0;
  while (i < m) {
    if (!negative(i)) {
      ++i;
      continue;
    }
    const double start = (i == 0) ? rho_samples[0] : cross(i - 1, i);
    int j = i;
    while (j + 1 < m && negative(j + 1)) ++j;
    const double end = (j == m - 1) ? rho_samples[static_cast<std::size_t>(m - 1)] : cross(j + 1, j);
    out.negative_intervals.emplace_back(start, end);
    if (i == 0 || j == m - 1) touches_boundary = true;
    i = j + 1;
  }

  if (out.negative_intervals.empty())
    out.stability = Stability::stable;
  else
    out.stability = touches_boundary ? Stability::unstable : Stability::weakly_unstable;
  return out;
}

namespace {

DiffusionProfile finish_profile(DiffusionProfile p, double atol = 1e-12) {
  const auto c = classify(p.rho_samples, p.mu, atol);
  p.negative_intervals = c.negative_intervals;
  p.classification = c.stability;
  return p;
}

}  // namespace

DiffusionProfile build_profile_bgk(const MaxwellianTable& table) {
  DiffusionProfile p;
  p.model = DiffusionModel::bgk;
  p.rho_samples = table.rho_samples;
  p.mu.reserve(p.rho_samples.size());
  for (double r : p.rho_samples) p.mu.push_back(mu_bgk(table, r));
  return finish_profile(std::move(p));
}

DiffusionProfile build_profile_modified(const MaxwellianTable& table, const PressureLaw& pressure) {
  DiffusionProfile p;
  p.model = DiffusionModel::modified;
  p.rho_samples = table.rho_samples;
  p.mu.reserve(p.rho_samples.size());
  for (double r : p.rho_samples) p.mu.push_back(mu_modified(table, pressure, r));
  return finish_profile(std::move(p));
}

DiffusionProfile build_profile_arz(const ArzClosure& closure, int n_rho) {
  if (n_rho < 3) throw ConfigError("ARZ profile requires n_rho >= 3");
  DiffusionProfile p;
  p.model = DiffusionModel::arz;
  p.rho_samples = linspace(0.0, kRhoMax, n_rho);
  p.mu.reserve(p.rho_samples.size());
  for (double r : p.rho_samples) p.mu.push_back(mu_arz(closure, r).mu);
  return finish_profile(std::move(p));
}

}  // namespace kinetra
