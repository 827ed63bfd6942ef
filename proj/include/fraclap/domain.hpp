#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace fraclap {

/// Axis-aligned box (0,L_0) x ... with a tensor grid of interior nodes.
/// Only dim 1 and 2 are supported; unused axes carry length 1 and one node.
struct Domain {
  int dim = 1;
  std::array<double, 2> length{1.0, 1.0};
  std::array<int, 2> nodes{1, 1};

  static Domain interval(double length, int nodes);
  static Domain rectangle(double lx, double ly, int nx, int ny);

  void validate() const;
};

/// Equispaced interior tensor grid x_k = (k+1) L/(n+1), k = 0..n-1, matching
/// DST-I collocation. Flat index is i0 * n1 + i1 (axis 0 slowest).
struct Grid {
  int dim = 1;
  std::array<double, 2> length{1.0, 1.0};
  std::array<int, 2> n{1, 1};

  static Grid of(const Domain& d) { return {d.dim, d.length, d.nodes}; }

  std::size_t size() const {
    return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(dim == 2 ? n[1] : 1);
  }
  double spacing(int axis) const { return length[axis] / (n[axis] + 1); }
  double coord(int axis, int k) const { return (k + 1) * spacing(axis); }
  /// Trapezoid weight of one node (boundary values vanish).
  double cell_volume() const { return dim == 2 ? spacing(0) * spacing(1) : spacing(0); }
  std::array<double, 2> point(std::size_t flat) const;
};

}  // namespace fraclap
