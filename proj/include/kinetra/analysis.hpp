#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "kinetra/common.hpp"

namespace kinetra {

/// Location of the profile maximum, refined by a parabola through the three
/// samples around the discrete argmax (continuous in time, unlike the raw
/// cell index).
inline double peak_location(std::span<const double> x, std::span<const double> rho) {
  const int n = static_cast<int>(rho.size());
  int imax = 0;
  for (int i = 1; i < n; ++i)
    if (rho[static_cast<std::size_t>(i)] > rho[static_cast<std::size_t>(imax)]) imax = i;
  if (imax == 0 || imax == n - 1) return x[static_cast<std::size_t>(imax)];
  const double fl = rho[static_cast<std::size_t>(imax) - 1];
  const double fc = rho[static_cast<std::size_t>(imax)];
  const double fr = rho[static_cast<std::size_t>(imax) + 1];
  const double denom = fl - 2.0 * fc + fr;
  if (!(denom < 0.0)) return x[static_cast<std::size_t>(imax)];
  const double dx = x[1] - x[0];
  return x[static_cast<std::size_t>(imax)] + 0.5 * (fl - fr) / denom * dx;
}

inline double peak_height(std::span<const double> rho) {
  double m = rho[0];
  for (double v : rho) m = std::max(m, v);
  return m;
}

/// Total variation of a sampled profile; includes the wrap-around jump when
/// `periodic` is set.
inline double total_variation(std::span<const double> rho, bool periodic) {
  double tv = 0.0;
  for (std::size_t i = 1; i < rho.size(); ++i) tv += std::abs(rho[i] - rho[i - 1]);
  if (periodic && rho.size() > 1) tv += std::abs(rho.front() - rho.back());
  return tv;
}

/// Width of a left-to-right increasing front: distance between the first
/// upcrossings of the 10% and 90% levels of the jump [lo, hi], with linear
/// interpolation between samples. Returns a negative value when a level is
/// never reached.
inline double front_width(std::span<const double> x, std::span<const double> rho, double lo,
                          double hi) {
  const double level_lo = lo + 0.1 * (hi - lo);
  const double level_hi = lo + 0.9 * (hi - lo);
  auto first_crossing = [&](double level) {
    for (std::size_t i = 1; i < rho.size(); ++i) {
      if (rho[i - 1] < level && rho[i] >= level) {
        const double t = (level - rho[i - 1]) / (rho[i] - rho[i - 1]);
        return x[i - 1] + t * (x[i] - x[i - 1]);
      }
    }
    return std::nan("");
  };
  const double x_lo = first_crossing(level_lo);
  const double x_hi = first_crossing(level_hi);
  if (std::isnan(x_lo) || std::isnan(x_hi)) return -1.0;
  return x_hi - x_lo;
}

}  // namespace kinetra
