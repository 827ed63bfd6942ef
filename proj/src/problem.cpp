#include "fraclap/problem.hpp"

#include <cmath>

namespace fraclap {

namespace {
constexpr Eigen::Index kParallelThreshold = 4096;
}

double Nonlinearity::f(double s) const {
  if (s <= 0.0) return 0.0;
  return lambda * std::pow(s, q) + std::pow(s, p);
}

double Nonlinearity::F(double s) const {
  if (s <= 0.0) return 0.0;
  return lambda * std::pow(s, q + 1.0) / (q + 1.0) + std::pow(s, p + 1.0) / (p + 1.0);
}

double Nonlinearity::df(double s) const {
  if (s <= 0.0) return 0.0;
  return lambda * q * std::pow(s, q - 1.0) + p * std::pow(s, p - 1.0);
}

Problem::Problem(BasisPtr basis, double alpha, double q, double lambda, int oversample)
    : basis_(std::move(basis)), alpha_(alpha), q_(q), lambda_(lambda), oversample_(oversample) {
  if (!basis_) throw std::invalid_argument("problem needs a basis");
  check_alpha(alpha_);
  const int n = basis_->dim();
  if (!(n > alpha_)) throw std::invalid_argument("critical exponent needs N > alpha (N = 1 allows alpha < 1 only)");
  crit_exp_ = 2.0 * n / (n - alpha_);
  if (!(q_ > 0.0 && q_ < crit_exp_ - 1.0)) throw std::invalid_argument("q must lie in (0, 2*_alpha - 1)");
  if (!(lambda_ >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  if (oversample_ < 1) throw std::invalid_argument("oversample must be >= 1");
  symbol_ = basis_->frac_symbol(alpha_);
  quad_ = std::make_shared<const SineTransform>(basis_, quadrature_grid(*basis_, oversample_));
}

Problem Problem::with_lambda(double lambda) const {
  Problem p = *this;
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  p.lambda_ = lambda;
  return p;
}

Problem Problem::with_basis(BasisPtr basis) const { return Problem(std::move(basis), alpha_, q_, lambda_, oversample_); }

namespace pointwise {

Eigen::VectorXd f(const Nonlinearity& nl, const Eigen::VectorXd& u) {
  Eigen::VectorXd out(u.size());
#pragma omp parallel for if (u.size() >= kParallelThreshold) schedule(static)
  for (Eigen::Index i = 0; i < u.size(); ++i) out[i] = nl.f(u[i]);
  return out;
}

Eigen::VectorXd df(const Nonlinearity& nl, const Eigen::VectorXd& u) {
  Eigen::VectorXd out(u.size());
#pragma omp parallel for if (u.size() >= kParallelThreshold) schedule(static)
  for (Eigen::Index i = 0; i < u.size(); ++i) out[i] = nl.df(u[i]);
  return out;
}

double sum_F(const Nonlinearity& nl, const Eigen::VectorXd& u) {
  double acc = 0.0;
#pragma omp parallel for if (u.size() >= kParallelThreshold) reduction(+ : acc) schedule(static)
  for (Eigen::Index i = 0; i < u.size(); ++i) acc += nl.F(u[i]);
  return acc;
}

double sum_abs_pow(const Eigen::VectorXd& u, double r) {
  double acc = 0.0;
#pragma omp parallel for if (u.size() >= kParallelThreshold) reduction(+ : acc) schedule(static)
  for (Eigen::Index i = 0; i < u.size(); ++i) acc += std::pow(std::abs(u[i]), r);
  return acc;
}

}  // namespace pointwise

namespace reference {

Eigen::VectorXd pointwise_f(const Nonlinearity& nl, const Eigen::VectorXd& u) {
  Eigen::VectorXd out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) out[i] = nl.f(u[i]);
  return out;
}

double pointwise_sum_F(const Nonlinearity& nl, const Eigen::VectorXd& u) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) acc += nl.F(u[i]);
  return acc;
}

}  // namespace reference

const char* to_string(Failure f) {
  switch (f) {
    case Failure::Divergence: return "divergence";
    case Failure::NonPositive: return "nonpositive";
    case Failure::SingularJacobian: return "singular_jacobian";
    case Failure::NoConvergence: return "no_convergence";
    case Failure::BarrierInfeasible: return "barrier_infeasible";
    case Failure::OrderingViolation: return "ordering_violation";
    case Failure::Blowup: return "blowup";
    case Failure::PathCollapse: return "path_collapse";
    case Failure::Refused: return "refused";
  }
  return "unknown";
}

}  // namespace fraclap
