#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "fraclap/sine_transform.hpp"
#include "fraclap/spectral_function.hpp"

namespace fraclap {

/// f(s) = lambda s^q + s^p for s > 0, extended by zero for s <= 0; p = 2*_alpha - 1.
struct Nonlinearity {
  double lambda = 0.0;
  double q = 1.0;
  double p = 3.0;

  double f(double s) const;
  /// Primitive F(s) = int_0^s f.
  double F(double s) const;
  /// One-sided derivative; zero for s <= 0.
  double df(double s) const;
};

/// (-Delta)^{alpha/2} u = lambda u^q + u^{2*-1} on a box, zero Dirichlet data.
/// Nonlinear terms are evaluated on a grid oversampled by `oversample`.
class Problem {
 public:
  Problem(BasisPtr basis, double alpha, double q, double lambda, int oversample = 4);

  const BasisPtr& basis() const { return basis_; }
  double alpha() const { return alpha_; }
  double q() const { return q_; }
  double lambda() const { return lambda_; }
  int oversample() const { return oversample_; }
  int dim() const { return basis_->dim(); }
  int size() const { return basis_->size(); }

  /// 2*_alpha = 2N/(N - alpha)
  double crit_exp() const { return crit_exp_; }
  double top_power() const { return crit_exp_ - 1.0; }
  /// rho_j^{alpha/2}
  const Eigen::VectorXd& symbol() const { return symbol_; }
  double lambda_1() const { return symbol_[0]; }
  const SineTransform& quad() const { return *quad_; }
  Nonlinearity nonlinearity() const { return {lambda_, q_, top_power()}; }

  Problem with_lambda(double lambda) const;
  Problem with_basis(BasisPtr basis) const;

  SpectralFunction function(Eigen::VectorXd coeffs) const { return {basis_, std::move(coeffs)}; }
  Eigen::VectorXd nodal(const Eigen::VectorXd& coeffs) const { return quad_->synthesize(coeffs); }

 private:
  BasisPtr basis_;
  double alpha_;
  double q_;
  double lambda_;
  int oversample_;
  double crit_exp_;
  Eigen::VectorXd symbol_;
  std::shared_ptr<const SineTransform> quad_;
};

/// Pointwise nonlinear kernels on nodal vectors, OpenMP-parallel.
namespace pointwise {
Eigen::VectorXd f(const Nonlinearity& nl, const Eigen::VectorXd& u);
Eigen::VectorXd df(const Nonlinearity& nl, const Eigen::VectorXd& u);
/// sum_x F(u(x)), without the cell volume.
double sum_F(const Nonlinearity& nl, const Eigen::VectorXd& u);
/// sum_x |u(x)|^r
double sum_abs_pow(const Eigen::VectorXd& u, double r);
}  // namespace pointwise

namespace reference {
Eigen::VectorXd pointwise_f(const Nonlinearity& nl, const Eigen::VectorXd& u);
double pointwise_sum_F(const Nonlinearity& nl, const Eigen::VectorXd& u);
}  // namespace reference

enum class Failure {
  Divergence,
  NonPositive,
  SingularJacobian,
  NoConvergence,
  BarrierInfeasible,
  OrderingViolation,
  Blowup,
  PathCollapse,
  Refused,
};

const char* to_string(Failure f);

class SolverError : public std::runtime_error {
 public:
  SolverError(Failure kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Failure kind() const { return kind_; }

 private:
  Failure kind_;
};

}  // namespace fraclap
