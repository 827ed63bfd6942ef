#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fraclap/spectral_function.hpp"

namespace fraclap {

/// Decaying solution of theta'' + ((1-alpha)/s) theta' - theta = 0 with
/// theta(0) = 1, i.e. the y-profile of one separated mode of the
/// alpha-harmonic extension. Evaluated through the closed form
/// theta(s) = 2^{1-a/2}/Gamma(a/2) s^{a/2} K_{a/2}(s).
struct ThetaProfile {
  double alpha = 1.0;
  double s_max = 40.0;
  /// int_0^inf s^{1-alpha} (theta'^2 + theta^2) ds
  double energy = 1.0;
  /// -lim_{s->0+} s^{1-alpha} theta'(s), extrapolated from the small-s expansion.
  double neumann_limit = 1.0;

  double operator()(double s) const;
  double derivative(double s) const;
  /// s^{1-alpha} theta'(s), finite as s -> 0.
  double weighted_derivative(double s) const;
};

/// Throws std::invalid_argument if exp(-s_max) >= tol or alpha is outside (0,2).
ThetaProfile theta_profile(double alpha, double s_max = 40.0, double tol = 1e-12);

/// Profile computed independently of Bessel functions: integrate the ODE
/// inward from s_max (where the decaying branch dominates) and normalise
/// against the Frobenius expansion theta = A y_0(s) + B s^alpha y_1(s) at
/// a small s0. Values returned at the requested points (all >= s0).
struct OdeProfile {
  std::vector<double> s;
  std::vector<double> theta;
  std::vector<double> dtheta;
  double regular_coeff = 1.0;   // A before normalisation
  double singular_coeff = 0.0;  // B/A after normalisation; neumann limit = -alpha * B
};
OdeProfile theta_profile_ode(double alpha, std::vector<double> points, double s_max = 40.0, double tol = 1e-12);

struct Constants {
  double alpha = 1.0;
  double kappa_alpha = 1.0;                  // makes the extension an isometry
  double s_alpha_N = 0.0;                    // best trace constant (0 when no dim given)
  int dim = 0;
};

/// kappa_alpha = 1 / profile energy, so ||E(u)||_X = ||u||_{H^{alpha/2}}.
Constants kappa(double alpha, std::optional<int> dim = std::nullopt);

/// w(x,y) = sum_j a_j phi_j(x) theta(sqrt(rho_j) y)
struct ExtensionField {
  SpectralFunction base;
  ThetaProfile profile;
  double kappa_alpha = 1.0;

  double eval(const std::array<double, 2>& x, double y) const;
  /// Coefficients of w(., y) in the base basis.
  Eigen::VectorXd slice(double y) const;
};

ExtensionField extend(const SpectralFunction& u, double alpha);

/// -kappa lim_{y->0+} y^{1-alpha} dw/dy, mode by mode (Richardson in y).
SpectralFunction neumann_trace(const ExtensionField& w);

/// z = w + sum_j b_j phi_j(x) chi(y); chi(0) must vanish.
struct SeparablePerturbation {
  Eigen::VectorXd coeffs;
  std::function<double(double)> chi;
  std::function<double(double)> dchi;
};

/// kappa int_C y^{1-alpha} |grad z|^2 by per-mode quadrature in y
/// (the x-integrals reduce to orthonormality).
double extension_energy(const ExtensionField& w, const SeparablePerturbation* perturbation = nullptr);

}  // namespace fraclap
