#pragma once

#include <functional>
#include <optional>

#include "kinetra/common.hpp"

namespace kinetra {

struct MaxwellianTable;  // equilibrium.hpp

// ---------------------------------------------------------------------------
// Traffic pressure p(rho): p >= 0 and p' > 0 on (0, rho_max].
// ---------------------------------------------------------------------------

class PressureLaw {
 public:
  /// p(rho) = c * rho^m with c > 0 and m >= 1.
  static PressureLaw power(double c, double m);

  /// Arbitrary law; p' > 0 is spot-checked on a density sweep. An analytic
  /// derivative may be supplied, otherwise central differences are used.
  static PressureLaw custom(std::function<double(double)> value,
                            std::function<double(double)> deriv = {});

  /// Degenerate identically-zero law. Not admissible as a model pressure;
  /// kept for consistency checks against the plain BGK pathway.
  static PressureLaw zero();

  double value(double rho) const;
  double deriv(double rho) const;
  bool is_zero() const { return kind_ == Kind::zero; }
  double coeff() const { return c_; }
  double exponent() const { return m_; }

 private:
  enum class Kind { power, custom, zero };
  PressureLaw() = default;
  Kind kind_ = Kind::zero;
  double c_ = 0.0, m_ = 1.0;
  std::function<double(double)> fn_, dfn_;
};

// ---------------------------------------------------------------------------
// Equilibrium speed U_eq(rho)
// ---------------------------------------------------------------------------

class SpeedClosure {
 public:
  /// U_eq(rho) = 1 - rho.
  static SpeedClosure linear();
  /// Mean equilibrium speed interpolated from a Maxwellian table. The table
  /// must outlive the closure.
  static SpeedClosure from_table(const MaxwellianTable& table);
  static SpeedClosure custom(std::function<double(double)> value,
                             std::function<double(double)> deriv = {});

  double value(double rho) const;
  double deriv(double rho) const;

 private:
  SpeedClosure() = default;
  enum class Kind { linear, table, custom };
  Kind kind_ = Kind::linear;
  const MaxwellianTable* table_ = nullptr;
  std::function<double(double)> fn_, dfn_;
};

// ---------------------------------------------------------------------------
// Hesitation function h(rho), strictly increasing on (0, rho_max)
// ---------------------------------------------------------------------------

class HesitationLaw {
 public:
  /// h(rho) = c * rho^m with c > 0 and m > 0.
  static HesitationLaw power(double c, double m);
  static HesitationLaw custom(std::function<double(double)> value,
                              std::function<double(double)> deriv = {});

  double value(double rho) const;
  double deriv(double rho) const;

 private:
  HesitationLaw() = default;
  double c_ = 1.0, m_ = 1.0;
  std::function<double(double)> fn_, dfn_;
};

struct ArzClosure {
  SpeedClosure u_eq;
  HesitationLaw hesitation;
};

/// Central-difference step for closures without analytic derivatives.
inline constexpr double kClosureFdStep = 1e-6 * kRhoMax;

}  // namespace kinetra
