#pragma once

#include <optional>
#include <vector>

#include "fraclap/solution.hpp"

namespace fraclap {

/// Q_lambda(u) = (||u||^2 - lambda ||u||_2^2) / ||u||_{2*}^2
double rayleigh_quotient(const Eigen::VectorXd& coeffs, const Problem& p);

struct RayleighOptions {
  double grad_tol = 1e-10;  // preconditioned gradient norm
  double rel_tol = 1e-14;   // relative decrease treated as stagnation
  int max_iters = 20000;
  bool refine = true;       // Newton refinement of the rescaled minimizer (lambda > 0)
  std::optional<SpectralFunction> init;
  NewtonOptions newton{};
};

struct RayleighResult {
  double s_lambda = 0.0;
  /// Minimizer normalized to ||w||_{2*} = 1, positive first coefficient.
  SpectralFunction direction;
  /// S^{1/(2*-2)} w, Newton-refined when lambda > 0.
  Solution minimizer;
  std::vector<double> history;  // quotient per accepted step
  int iterations = 0;
  /// Quotient did not drop below kappa_alpha S(alpha,N).
  bool stalled = false;
};

/// Preconditioned gradient descent on the 2*-sphere with Barzilai-Borwein steps
/// and Armijo backtracking. Requires q = 1, 0 <= lambda < lambda_1, N >= 2 alpha.
RayleighResult rayleigh_minimize(const Problem& p, const RayleighOptions& opts = {});

}  // namespace fraclap
