#pragma once

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "fraclap/domain.hpp"

namespace fraclap {

/// One Dirichlet eigenpair of -Laplace on the box: phi = prod_i sqrt(2/L_i) sin(k_i pi x_i / L_i).
struct Mode {
  std::array<int, 2> k{1, 1};  // wavenumbers, 1-based
  double rho = 0.0;             // sum_i (k_i pi / L_i)^2
};

/// Truncated L2-orthonormal sine basis, sorted by ascending eigenvalue with
/// ties broken lexicographically in the wavenumbers. Immutable once built.
class SpectralBasis {
 public:
  SpectralBasis(Domain domain, std::array<int, 2> modes);

  const Domain& domain() const { return domain_; }
  int dim() const { return domain_.dim; }
  const std::array<int, 2>& modes_per_axis() const { return modes_; }
  int size() const { return static_cast<int>(sorted_.size()); }

  const Mode& mode(int j) const { return sorted_[j]; }
  const Eigen::VectorXd& rho() const { return rho_; }

  /// Position of sorted mode j inside the per-axis coefficient matrix
  /// (row = k_0 - 1, column = k_1 - 1, row-major).
  int lex_index(int j) const { return lex_[j]; }
  /// Inverse of lex_index.
  int sorted_index(int lex) const { return sorted_of_lex_[lex]; }

  /// phi_j at an arbitrary point of the box.
  double eval_mode(int j, const std::array<double, 2>& x) const;

  /// Eigenvalues of the fractional operator, rho_j^{alpha/2}.
  Eigen::VectorXd frac_symbol(double alpha) const;

  /// Same domain, new per-axis mode counts; grid grown if needed to keep n_i >= m_i.
  std::shared_ptr<const SpectralBasis> with_modes(std::array<int, 2> modes) const;

 private:
  Domain domain_;
  std::array<int, 2> modes_;
  std::vector<Mode> sorted_;
  std::vector<int> lex_;
  std::vector<int> sorted_of_lex_;
  Eigen::VectorXd rho_;
};

using BasisPtr = std::shared_ptr<const SpectralBasis>;

/// Throws std::invalid_argument when a mode count exceeds the grid (aliasing)
/// or is non-positive.
BasisPtr build_basis(const Domain& domain, std::array<int, 2> modes);
BasisPtr build_basis(const Domain& domain, int modes_each_axis);

}  // namespace fraclap
