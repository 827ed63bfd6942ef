#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace fraclap {

// Whole-space objects on R^N, N in {1,2}.

/// 2N/(N-alpha)
double critical_exponent(double alpha, int dim);

/// Best constant S(alpha,N) of the trace inequality, evaluated with log-Gamma.
/// Requires 0 < alpha < min(N,2).
double sobolev_constant(double alpha, int dim);

/// u_eps(x) = eps^{(N-alpha)/2} / (|x|^2 + eps^2)^{(N-alpha)/2}
struct Bubble {
  double eps = 1.0;
  double alpha = 1.0;
  int dim = 1;

  double radial(double r) const;
  double operator()(const std::array<double, 2>& x) const;
  std::vector<double> eval(const std::vector<std::array<double, 2>>& points) const;
};

Bubble bubble(double eps, double alpha, int dim);

/// Quintic smoothstep cutoff: 1 on [0,1/2], 0 on [1,inf), C^2 in between.
double cutoff_profile(double s);

/// phi_0(|x|/r) u_eps(x)
struct CutoffBubble {
  Bubble bubble;
  double r = 1.0;
  double radial(double rad) const { return cutoff_profile(rad / r) * bubble.radial(rad); }
};

/// c_{N,alpha} normalising the Poisson kernel to unit mass (by quadrature).
double poisson_mass_constant(double alpha, int dim);

/// P_y(x) = c y^alpha / (|x|^2 + y^2)^{(N+alpha)/2}
double poisson_kernel(double alpha, int dim, double x_norm, double y);

/// d_{N,alpha} = alpha c_{N,alpha} kappa_alpha
double riesz_constant(double alpha, int dim);

struct RieszOptions {
  double inner_radius = 1e-2;  // below this the second difference is Taylor-expanded
  double fd_step = 1e-3;
  double tol = 1e-11;
};

/// d P.V. int (u(x) - u(s)) / |x-s|^{1+alpha} ds on the line.
/// Throws std::runtime_error when the tail quadrature cannot meet `tol`.
double riesz_pv(const std::function<double(double)>& u, double alpha, double x, const RieszOptions& opts = {});

/// (P_y * u)(x) on the line.
double poisson_extend(const std::function<double(double)>& u, double alpha, double x, double y);
/// (P_y * u)(x) on the plane.
double poisson_extend(const std::function<double(double, double)>& u, double alpha, const std::array<double, 2>& x,
                      double y);

enum class NormKind { L2Squared, PowerIntegral };

struct ScalingRow {
  double eps = 0.0;
  double norm = 0.0;
  double fitted_exponent = 0.0;
  double stderr_ = 0.0;
};

struct ScalingReport {
  double alpha = 0.0;
  int dim = 1;
  double r = 1.0;
  double power = 2.0;  // integrand exponent
  std::vector<ScalingRow> rows;
  double exponent = 0.0;  // log-log slope
  double stderr_ = 0.0;
  double max_residual = 0.0;  // largest |log residual| of the fit
  /// Slope of log(norm / log(1/eps)) against log(eps), for laws with a log factor.
  double log_corrected_exponent = 0.0;
  double truncation_radius = 0.0;
};

/// int phi^p u_eps^p over the ball of radius r for every eps, plus the fitted
/// power law. p = 2 for NormKind::L2Squared; otherwise `power`.
ScalingReport cutoff_norm_scaling(double alpha, int dim, double r, const std::vector<double>& eps_list, NormKind kind,
                                  double power = 2.0);

/// Least-squares fit of y = a + b x; returns {b, a, stderr_b, r_squared}.
std::array<double, 4> linear_fit(const std::vector<double>& x, const std::vector<double>& y);

void write_scaling_csv(std::ostream& os, const ScalingReport& report, const std::string& header_comment = {});

/// ||(-Delta)^{alpha/4} u_eps||^2 / ||u_eps||^2_{2*} on R^N computed on the
/// Fourier side with the symbol |xi|^alpha; should equal kappa_alpha S(alpha,N).
double bubble_rayleigh(double alpha, int dim, double tol = 1e-10, double eps = 1.0);

}  // namespace fraclap
