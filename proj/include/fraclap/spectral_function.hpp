#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fraclap/sine_transform.hpp"
#include "fraclap/spectral_basis.hpp"

namespace fraclap {

/// u = sum_j a_j phi_j, stored by coefficients in sorted-basis order.
struct SpectralFunction {
  BasisPtr basis;
  Eigen::VectorXd coeffs;

  static SpectralFunction zero(BasisPtr b);
  static SpectralFunction unit(BasisPtr b, int j);

  double eval(const std::array<double, 2>& x) const;

  SpectralFunction& operator+=(const SpectralFunction& o);
  SpectralFunction& operator-=(const SpectralFunction& o);
  SpectralFunction& operator*=(double s);
};

SpectralFunction operator+(SpectralFunction a, const SpectralFunction& b);
SpectralFunction operator-(SpectralFunction a, const SpectralFunction& b);
SpectralFunction operator*(double s, SpectralFunction a);

/// Coefficients from nodal values on the basis grid (throws on shape mismatch).
SpectralFunction analyze(const Eigen::VectorXd& nodal, BasisPtr basis);

/// Nodal values on the basis grid, or on `grid` when given (exact trigonometric sums).
Eigen::VectorXd synthesize(const SpectralFunction& u, std::optional<Grid> grid = std::nullopt);

/// (-Delta)^{alpha/2} u; alpha must lie in (0,2).
SpectralFunction apply_frac(const SpectralFunction& u, double alpha);

/// ((-Delta)^{alpha/2} + shift)^{-1} rhs, shift >= 0.
SpectralFunction solve_shifted(const SpectralFunction& rhs, double alpha, double shift);

/// (sum a_j^2 rho_j^{alpha/2})^{1/2}; alpha = 0 gives the L2 norm.
double norm_hs(const SpectralFunction& u, double alpha);

/// H^{alpha/2} inner product.
double inner_hs(const SpectralFunction& u, const SpectralFunction& v, double alpha);

/// lambda_1 = rho_1^{alpha/2} and the positive first eigenfunction.
std::pair<double, SpectralFunction> first_eigenpair(const BasisPtr& basis, double alpha);

/// Embed u into a (larger or smaller) basis on the same domain by matching wavenumbers.
SpectralFunction transfer(const SpectralFunction& u, const BasisPtr& target);

void check_alpha(double alpha);

}  // namespace fraclap
