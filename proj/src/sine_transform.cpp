#include "fraclap/sine_transform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fraclap {

namespace {

// Parallel loops only pay off above a few thousand grid points.
constexpr std::size_t kParallelThreshold = 4096;

RowMatrix sine_table(int nodes, int modes, double length) {
  RowMatrix t(nodes, modes);
  const double scale = std::sqrt(2.0 / length);
  const double pi = std::numbers::pi;
  for (int x = 0; x < nodes; ++x)
    for (int k = 0; k < modes; ++k) t(x, k) = scale * std::sin(pi * (k + 1.0) * (x + 1.0) / (nodes + 1.0));
  return t;
}

}  // namespace

SineTransform::SineTransform(BasisPtr basis, Grid grid) : basis_(std::move(basis)), grid_(grid) {
  if (!basis_) throw std::invalid_argument("null basis");
  if (grid_.dim != basis_->dim()) throw std::invalid_argument("grid and basis dimensions differ");
  for (int i = 0; i < grid_.dim; ++i) {
    if (grid_.length[i] != basis_->domain().length[i]) throw std::invalid_argument("grid and basis lengths differ");
    if (grid_.n[i] < basis_->modes_per_axis()[i]) throw std::invalid_argument("aliasing: grid coarser than basis");
  }
  table_[0] = sine_table(grid_.n[0], basis_->modes_per_axis()[0], grid_.length[0]);
  if (grid_.dim == 2) table_[1] = sine_table(grid_.n[1], basis_->modes_per_axis()[1], grid_.length[1]);
}

Eigen::MatrixXd SineTransform::lex_to_matrix(const Eigen::VectorXd& coeffs) const {
  const auto& m = basis_->modes_per_axis();
  Eigen::MatrixXd c(m[0], grid_.dim == 2 ? m[1] : 1);
  for (int j = 0; j < basis_->size(); ++j) {
    const int lex = basis_->lex_index(j);
    const int cols = static_cast<int>(c.cols());
    c(lex / cols, lex % cols) = coeffs[j];
  }
  return c;
}

Eigen::VectorXd SineTransform::synthesize(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != basis_->size()) throw std::invalid_argument("coefficient vector does not match basis");
  const Eigen::MatrixXd c = lex_to_matrix(coeffs);
  const RowMatrix& s0 = table_[0];
  const int n0 = grid_.n[0];
  const int m0 = static_cast<int>(c.rows());
  Eigen::VectorXd out(static_cast<Eigen::Index>(grid_.size()));
  const bool par = grid_.size() >= kParallelThreshold;

  if (grid_.dim == 1) {
#pragma omp parallel for if (par) schedule(static)
    for (int x = 0; x < n0; ++x) {
      double acc = 0.0;
      for (int k = 0; k < m0; ++k) acc += s0(x, k) * c(k, 0);
      out[x] = acc;
    }
    return out;
  }

  const RowMatrix& s1 = table_[1];
  const int n1 = grid_.n[1];
  const int m1 = static_cast<int>(c.cols());
  // t(k0, x1) = sum_k1 c(k0, k1) s1(x1, k1)
  RowMatrix t(m0, n1);
#pragma omp parallel for if (par) schedule(static)
  for (int k0 = 0; k0 < m0; ++k0) {
    for (int x1 = 0; x1 < n1; ++x1) {
      double acc = 0.0;
      for (int k1 = 0; k1 < m1; ++k1) acc += c(k0, k1) * s1(x1, k1);
      t(k0, x1) = acc;
    }
  }
#pragma omp parallel for if (par) schedule(static)
  for (int x0 = 0; x0 < n0; ++x0) {
    double* row = out.data() + static_cast<std::ptrdiff_t>(x0) * n1;
    for (int x1 = 0; x1 < n1; ++x1) row[x1] = 0.0;
    for (int k0 = 0; k0 < m0; ++k0) {
      const double w = s0(x0, k0);
      const double* trow = t.data() + static_cast<std::ptrdiff_t>(k0) * n1;
      for (int x1 = 0; x1 < n1; ++x1) row[x1] += w * trow[x1];
    }
  }
  return out;
}

Eigen::VectorXd SineTransform::analyze(const Eigen::VectorXd& nodal) const {
  if (static_cast<std::size_t>(nodal.size()) != grid_.size()) throw std::invalid_argument("nodal data does not match grid shape");
  const auto& m = basis_->modes_per_axis();
  const RowMatrix& s0 = table_[0];
  const int n0 = grid_.n[0];
  const int m0 = m[0];
  const double vol = grid_.cell_volume();
  const bool par = grid_.size() >= kParallelThreshold;
  Eigen::VectorXd coeffs(basis_->size());

  if (grid_.dim == 1) {
#pragma omp parallel for if (par) schedule(static)
    for (int k = 0; k < m0; ++k) {
      double acc = 0.0;
      for (int x = 0; x < n0; ++x) acc += s0(x, k) * nodal[x];
      coeffs[basis_->sorted_index(k)] = vol * acc;
    }
    return coeffs;
  }

  const RowMatrix& s1 = table_[1];
  const int n1 = grid_.n[1];
  const int m1 = m[1];
  // t(x0, k1) = sum_x1 u(x0, x1) s1(x1, k1)
  RowMatrix t(n0, m1);
#pragma omp parallel for if (par) schedule(static)
  for (int x0 = 0; x0 < n0; ++x0) {
    const double* urow = nodal.data() + static_cast<std::ptrdiff_t>(x0) * n1;
    double* trow = t.data() + static_cast<std::ptrdiff_t>(x0) * m1;
    for (int k1 = 0; k1 < m1; ++k1) trow[k1] = 0.0;
    for (int x1 = 0; x1 < n1; ++x1) {
      const double u = urow[x1];
      const double* srow = s1.data() + static_cast<std::ptrdiff_t>(x1) * m1;
      for (int k1 = 0; k1 < m1; ++k1) trow[k1] += u * srow[k1];
    }
  }
#pragma omp parallel for if (par) schedule(static)
  for (int k0 = 0; k0 < m0; ++k0) {
    for (int k1 = 0; k1 < m1; ++k1) {
      double acc = 0.0;
      for (int x0 = 0; x0 < n0; ++x0) acc += s0(x0, k0) * t(x0, k1);
      coeffs[basis_->sorted_index(k0 * m1 + k1)] = vol * acc;
    }
  }
  return coeffs;
}

double SineTransform::integrate(const Eigen::VectorXd& nodal) const {
  return grid_.cell_volume() * nodal.sum();
}

Eigen::MatrixXd SineTransform::weighted_gram(const Eigen::VectorXd& w) const {
  if (static_cast<std::size_t>(w.size()) != grid_.size()) throw std::invalid_argument("weight does not match grid shape");
  const int msz = basis_->size();
  const auto& m = basis_->modes_per_axis();
  const RowMatrix& s0 = table_[0];
  const int n0 = grid_.n[0];
  const int m0 = m[0];
  const double vol = grid_.cell_volume();
  Eigen::MatrixXd out(msz, msz);

  if (grid_.dim == 1) {
    const Eigen::MatrixXd g = s0.transpose() * w.asDiagonal() * s0;
    for (int j = 0; j < msz; ++j)
      for (int k = 0; k < msz; ++k) out(basis_->sorted_index(j), basis_->sorted_index(k)) = vol * g(j, k);
    return out;
  }

  const RowMatrix& s1 = table_[1];
  const int n1 = grid_.n[1];
  const int m1 = m[1];
  // b[x1](j0, k0) = sum_x0 w(x0, x1) s0(x0, j0) s0(x0, k0), stored with x1 fastest.
  const int pairs0 = m0 * m0;
  Eigen::MatrixXd b(n1, pairs0);
  const bool par = grid_.size() >= kParallelThreshold;
#pragma omp parallel for if (par) schedule(static)
  for (int x1 = 0; x1 < n1; ++x1) {
    for (int p = 0; p < pairs0; ++p) b(x1, p) = 0.0;
    for (int x0 = 0; x0 < n0; ++x0) {
      const double wx = w[static_cast<Eigen::Index>(x0) * n1 + x1];
      if (wx == 0.0) continue;
      for (int j0 = 0; j0 < m0; ++j0) {
        const double a = wx * s0(x0, j0);
        for (int k0 = j0; k0 < m0; ++k0) b(x1, j0 * m0 + k0) += a * s0(x0, k0);
      }
    }
  }
#pragma omp parallel for if (par) schedule(dynamic)
  for (int j0 = 0; j0 < m0; ++j0) {
    for (int k0 = j0; k0 < m0; ++k0) {
      const Eigen::MatrixXd e = s1.transpose() * b.col(j0 * m0 + k0).asDiagonal() * s1;
      for (int j1 = 0; j1 < m1; ++j1) {
        for (int k1 = 0; k1 < m1; ++k1) {
          const int r = basis_->sorted_index(j0 * m1 + j1);
          const int c = basis_->sorted_index(k0 * m1 + k1);
          out(r, c) = vol * e(j1, k1);
          out(c, r) = vol * e(j1, k1);
        }
      }
    }
  }
  return out;
}

Grid quadrature_grid(const SpectralBasis& basis, int oversample) {
  if (oversample < 1) throw std::invalid_argument("oversample factor must be >= 1");
  Grid g = Grid::of(basis.domain());
  for (int i = 0; i < g.dim; ++i) g.n[i] = oversample * (basis.modes_per_axis()[i] + 1) - 1;
  return g;
}

namespace reference {

Eigen::VectorXd synthesize(const SpectralBasis& basis, const Grid& grid, const Eigen::VectorXd& coeffs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto x = grid.point(p);
    double acc = 0.0;
    for (int j = 0; j < basis.size(); ++j) acc += coeffs[j] * basis.eval_mode(j, x);
    out[static_cast<Eigen::Index>(p)] = acc;
  }
  return out;
}

Eigen::VectorXd analyze(const SpectralBasis& basis, const Grid& grid, const Eigen::VectorXd& nodal) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(basis.size());
  const double vol = grid.cell_volume();
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto x = grid.point(p);
    for (int j = 0; j < basis.size(); ++j) out[j] += vol * nodal[static_cast<Eigen::Index>(p)] * basis.eval_mode(j, x);
  }
  return out;
}

Eigen::MatrixXd weighted_gram(const SpectralBasis& basis, const Grid& grid, const Eigen::VectorXd& w) {
  const int m = basis.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  const double vol = grid.cell_volume();
  Eigen::VectorXd phi(m);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto x = grid.point(p);
    for (int j = 0; j < m; ++j) phi[j] = basis.eval_mode(j, x);
    out.noalias() += (vol * w[static_cast<Eigen::Index>(p)]) * phi * phi.transpose();
  }
  return out;
}

}  // namespace reference

}  // namespace fraclap
