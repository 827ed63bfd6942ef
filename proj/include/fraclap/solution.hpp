#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fraclap/problem.hpp"

namespace fraclap {

// Coefficient-space variational machinery. All nonlinear integrals use the
// problem's oversampled quadrature grid.

/// I(u) = 1/2 ||u||^2 - int F(u)
double energy(const SpectralFunction& u, const Problem& p);
double energy(const Eigen::VectorXd& coeffs, const Problem& p);

/// Gradient of I in coefficients: rho_j^{alpha/2} a_j - <f(u), phi_j>.
SpectralFunction energy_gradient(const SpectralFunction& u, const Problem& p);
Eigen::VectorXd energy_gradient(const Eigen::VectorXd& coeffs, const Problem& p);

/// Hessian of I: diag(rho^{alpha/2}) - <f'(u) phi_j, phi_k>.
Eigen::MatrixXd energy_hessian(const Eigen::VectorXd& coeffs, const Problem& p);

/// sqrt(sum g_j^2 / rho_j^{alpha/2}), the H^{-alpha/2} norm of a gradient.
double dual_norm(const Eigen::VectorXd& grad, const Problem& p);

/// Max over the quadrature grid of |sum_j g_j phi_j|, where g is the Galerkin residual.
double residual_sup(const Eigen::VectorXd& grad, const Problem& p);

enum class SolutionKind { Minimal, Rayleigh, MountainPass, Other };
const char* to_string(SolutionKind k);

struct Solution {
  SpectralFunction u;
  double lambda = 0.0;
  double residual = 0.0;
  double energy = 0.0;
  SolutionKind kind = SolutionKind::Other;
  double linf = 0.0;
  double min_nodal = 0.0;
  /// int f(u) phi_1 - lambda_1 int u phi_1
  double eigen_identity_gap = 0.0;
  int iterations = 0;
  /// Residual after each iteration of the last solver that touched it.
  std::vector<double> history;
};

/// Fills every diagnostic field of a Solution for u.
Solution make_solution(const SpectralFunction& u, const Problem& p, SolutionKind kind);

struct NewtonOptions {
  double tol = 1e-10;
  int max_iters = 60;
  /// Accepted negative nodal part, relative to linf.
  double positivity_tol = 2e-2;
  /// Refuse iterates whose linf exceeds this.
  double blowup = 1e8;
  double min_rcond = 1e-15;
};

/// Damped Newton on the gradient system with backtracking on the dual residual norm.
/// Throws SolverError on divergence, a singular Jacobian or a nonpositive limit.
Solution newton_solve(const Problem& p, const SpectralFunction& init, const NewtonOptions& opts = {});

}  // namespace fraclap
