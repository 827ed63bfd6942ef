#include "fraclap/domain.hpp"

#include <stdexcept>
#include <string>

namespace fraclap {

Domain Domain::interval(double length, int nodes) {
  Domain d;
  d.dim = 1;
  d.length = {length, 1.0};
  d.nodes = {nodes, 1};
  d.validate();
  return d;
}

Domain Domain::rectangle(double lx, double ly, int nx, int ny) {
  Domain d;
  d.dim = 2;
  d.length = {lx, ly};
  d.nodes = {nx, ny};
  d.validate();
  return d;
}

void Domain::validate() const {
  if (dim != 1 && dim != 2) throw std::invalid_argument("domain dimension must be 1 or 2, got " + std::to_string(dim));
  for (int i = 0; i < dim; ++i) {
    if (!(length[i] > 0.0)) throw std::invalid_argument("domain lengths must be positive");
    if (nodes[i] < 1) throw std::invalid_argument("grid needs at least one interior node per axis");
  }
}

std::array<double, 2> Grid::point(std::size_t flat) const {
  if (dim == 1) return {coord(0, static_cast<int>(flat)), 0.0};
  const auto n1 = static_cast<std::size_t>(n[1]);
  return {coord(0, static_cast<int>(flat / n1)), coord(1, static_cast<int>(flat % n1))};
}

}  // namespace fraclap
