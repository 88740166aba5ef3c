#include "kinetra/closures.hpp"

#include <cmath>

#include "kinetra/equilibrium.hpp"

namespace kinetra {

namespace {

double central_fd(const std::function<double(double)>& f, double rho) {
  const double h = kClosureFdStep;
  const double lo = std::max(rho - h, 0.0);
  const double hi = std::min(rho + h, kRhoMax);
  return (f(hi) - f(lo)) / (hi - lo);
}

}  // namespace

PressureLaw PressureLaw::power(double c, double m) {
  if (!(c > 0.0)) throw ConfigError("pressure coefficient must be > 0");
  if (!(m >= 1.0)) throw ConfigError("pressure exponent must be >= 1");
  PressureLaw p;
  p.kind_ = Kind::power;
  p.c_ = c;
  p.m_ = m;
  return p;
}

PressureLaw PressureLaw::custom(std::function<double(double)> value,
                                std::function<double(double)> deriv) {
  if (!value) throw ConfigError("custom pressure requires a value function");
  PressureLaw p;
  p.kind_ = Kind::custom;
  p.fn_ = std::move(value);
  p.dfn_ = std::move(deriv);
  for (int i = 0; i <= 20; ++i) {
    const double rho = 0.05 * static_cast<double>(i) * kRhoMax;
    if (p.value(rho) < 0.0) throw ConfigError("pressure must be nonnegative");
    if (rho > 0.0 && !(p.deriv(rho) > 0.0))
      throw ConfigError("pressure must be strictly increasing on (0, rho_max]");
  }
  return p;
}

PressureLaw PressureLaw::zero() { return PressureLaw{}; }

double PressureLaw::value(double rho) const {
  switch (kind_) {
    case Kind::power:
      return c_ * std::pow(rho, m_);
    case Kind::custom:
      return fn_(rho);
    case Kind::zero:
      return 0.0;
  }
  return 0.0;
}

double PressureLaw::deriv(double rho) const {
  switch (kind_) {
    case Kind::power:
      return c_ * m_ * std::pow(rho, m_ - 1.0);
    case Kind::custom:
      return dfn_ ? dfn_(rho) : central_fd(fn_, rho);
    case Kind::zero:
      return 0.0;
  }
  return 0.0;
}

SpeedClosure SpeedClosure::linear() {
  SpeedClosure s;
  s.kind_ = Kind::linear;
  return s;
}

SpeedClosure SpeedClosure::from_table(const MaxwellianTable& table) {
  SpeedClosure s;
  s.kind_ = Kind::table;
  s.table_ = &table;
  return s;
}

SpeedClosure SpeedClosure::custom(std::function<double(double)> value,
                                  std::function<double(double)> deriv) {
  if (!value) throw ConfigError("custom speed closure requires a value function");
  SpeedClosure s;
  s.kind_ = Kind::custom;
  s.fn_ = std::move(value);
  s.dfn_ = std::move(deriv);
  return s;
}

double SpeedClosure::value(double rho) const {
  switch (kind_) {
    case Kind::linear:
      return 1.0 - rho;
    case Kind::table:
      return interp_u_eq(*table_, rho);
    case Kind::custom:
      return fn_(rho);
  }
  return 0.0;
}

double SpeedClosure::deriv(double rho) const {
  switch (kind_) {
    case Kind::linear:
      return -1.0;
    case Kind::table:
      return d_rho_moments(*table_, rho).d_mean_speed;
    case Kind::custom:
      return dfn_ ? dfn_(rho) : central_fd(fn_, rho);
  }
  return 0.0;
}

HesitationLaw HesitationLaw::power(double c, double m) {
  if (!(c > 0.0) || !(m > 0.0)) throw ConfigError("hesitation law requires c > 0 and m > 0");
  HesitationLaw h;
  h.c_ = c;
  h.m_ = m;
  return h;
}

HesitationLaw HesitationLaw::custom(std::function<double(double)> value,
                                    std::function<double(double)> deriv) {
  if (!value) throw ConfigError("custom hesitation requires a value function");
  HesitationLaw h;
  h.fn_ = std::move(value);
  h.dfn_ = std::move(deriv);
  for (int i = 1; i < 20; ++i) {
    const double rho = 0.05 * static_cast<double>(i) * kRhoMax;
    if (!(h.deriv(rho) > 0.0))
      throw ConfigError("hesitation function must be strictly increasing on (0, rho_max)");
  }
  return h;
}

double HesitationLaw::value(double rho) const {
  return fn_ ? fn_(rho) : c_ * std::pow(rho, m_);
}

double HesitationLaw::deriv(double rho) const {
  if (fn_) return dfn_ ? dfn_(rho) : central_fd(fn_, rho);
  return c_ * m_ * std::pow(rho, m_ - 1.0);
}

}  // namespace kinetra
