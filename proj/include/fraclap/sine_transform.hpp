#pragma once

#include <Eigen/Dense>

#include "fraclap/domain.hpp"
#include "fraclap/spectral_basis.hpp"

namespace fraclap {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Separable type-I sine transform between coefficients (sorted basis order)
/// and nodal values on a tensor grid. Axis loops are OpenMP-parallel.
///
/// analyze() is the discrete L2 projection with the trapezoid rule; it is
/// exact for products of basis functions whenever the grid resolves them,
/// i.e. analyze(synthesize(a)) == a when n_i >= m_i.
class SineTransform {
 public:
  SineTransform(BasisPtr basis, Grid grid);

  const SpectralBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Grid& grid() const { return grid_; }

  Eigen::VectorXd synthesize(const Eigen::VectorXd& coeffs) const;
  Eigen::VectorXd analyze(const Eigen::VectorXd& nodal) const;

  /// Quadrature of a nodal function: sum_x vol * v(x).
  double integrate(const Eigen::VectorXd& nodal) const;

  /// Weighted Gram matrix G_jk = int v phi_j phi_k (trapezoid), sorted order.
  Eigen::MatrixXd weighted_gram(const Eigen::VectorXd& nodal_weight) const;

  /// Sampled sine table of one axis, n_i x m_i.
  const RowMatrix& axis_table(int axis) const { return table_[axis]; }

 private:
  Eigen::MatrixXd lex_to_matrix(const Eigen::VectorXd& coeffs) const;

  BasisPtr basis_;
  Grid grid_;
  RowMatrix table_[2];
};

/// Oversampled quadrature grid for nonlinear terms: n_i = factor * (m_i + 1) - 1.
Grid quadrature_grid(const SpectralBasis& basis, int oversample);

/// Direct tensor sums, O(grid x modes). Kept as the serial reference for tests
/// and the benchmark.
namespace reference {
Eigen::VectorXd synthesize(const SpectralBasis& basis, const Grid& grid, const Eigen::VectorXd& coeffs);
Eigen::VectorXd analyze(const SpectralBasis& basis, const Grid& grid, const Eigen::VectorXd& nodal);
Eigen::MatrixXd weighted_gram(const SpectralBasis& basis, const Grid& grid, const Eigen::VectorXd& nodal_weight);
}  // namespace reference

}  // namespace fraclap
