#pragma once

#include <string>

#include "kinetra/common.hpp"

namespace kinetra {

enum class Boundary { periodic, free_outflow };

struct Mesh1D {
  double x_min = -1.0;
  double x_max = 1.0;
  int n_cells = 200;
  double dx = 0.0;
  Boundary boundary = Boundary::periodic;

  double x_center(int j) const { return x_min + (static_cast<double>(j) + 0.5) * dx; }
  double length() const { return x_max - x_min; }

  int left(int j) const {
    if (j > 0) return j - 1;
    return boundary == Boundary::periodic ? n_cells - 1 : 0;
  }
  int right(int j) const {
    if (j + 1 < n_cells) return j + 1;
    return boundary == Boundary::periodic ? 0 : n_cells - 1;
  }
};

inline Mesh1D make_mesh(double x_min, double x_max, int n_cells, Boundary boundary) {
  if (n_cells < 4) throw ConfigError("mesh requires n_cells >= 4");
  if (!(x_max > x_min)) throw ConfigError("mesh requires x_max > x_min");
  Mesh1D m;
  m.x_min = x_min;
  m.x_max = x_max;
  m.n_cells = n_cells;
  m.dx = (x_max - x_min) / static_cast<double>(n_cells);
  m.boundary = boundary;
  return m;
}

inline std::string to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "free_outflow";
}

}  // namespace kinetra
