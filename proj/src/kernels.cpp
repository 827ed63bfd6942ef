#include "fraclap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fraclap/extension.hpp"

namespace fraclap {

namespace {

using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::gauss_kronrod;
using boost::math::quadrature::tanh_sinh;

constexpr double pi = std::numbers::pi;

void check_window(double alpha, int dim) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("whole-space objects support N = 1 or 2");
  if (!(alpha > 0.0 && alpha < std::min<double>(dim, 2.0)))
    throw std::invalid_argument("need 0 < alpha < min(N, 2)");
}

double sphere_area(int dim) { return dim == 1 ? 2.0 : 2.0 * pi; }

template <class F>
double gk(F f, double a, double b, double tol, double* err = nullptr) {
  double e = 0.0;
  const double v = gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol, &e);
  if (err) *err = e;
  return v;
}

// Geometric breakpoints 0, s, 4s, 16s, ..., end: resolves the eps scale of a
// concentrated radial integrand.
std::vector<double> graded_breaks(double scale, double end) {
  std::vector<double> b{0.0};
  double x = scale;
  while (x < end) {
    b.push_back(x);
    x *= 4.0;
  }
  b.push_back(end);
  return b;
}

}  // namespace

double critical_exponent(double alpha, int dim) { return 2.0 * dim / (dim - alpha); }

double sobolev_constant(double alpha, int dim) {
  check_window(alpha, dim);
  using boost::math::lgamma;
  const double n = dim;
  const double log_num = std::log(2.0) + 0.5 * alpha * std::log(pi) + lgamma((n + alpha) / 2.0) +
                         lgamma((2.0 - alpha) / 2.0) + (alpha / n) * lgamma(n / 2.0);
  const double log_den = lgamma(alpha / 2.0) + lgamma((n - alpha) / 2.0) + (alpha / 2.0) * lgamma(n);
  return std::exp(log_num - log_den);
}

double Bubble::radial(double r) const {
  const double h = 0.5 * (dim - alpha);
  return std::pow(eps, h) / std::pow(r * r + eps * eps, h);
}

double Bubble::operator()(const std::array<double, 2>& x) const {
  const double r2 = x[0] * x[0] + (dim == 2 ? x[1] * x[1] : 0.0);
  return radial(std::sqrt(r2));
}

std::vector<double> Bubble::eval(const std::vector<std::array<double, 2>>& points) const {
  std::vector<double> out(points.size());
#pragma omp parallel for if (points.size() > 4096)
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = (*this)(points[i]);
  return out;
}

Bubble bubble(double eps, double alpha, int dim) {
  check_window(alpha, dim);
  if (!(eps > 0.0)) throw std::invalid_argument("bubble scale must be positive");
  return {eps, alpha, dim};
}

double cutoff_profile(double s) {
  if (s <= 0.5) return 1.0;
  if (s >= 1.0) return 0.0;
  const double t = 2.0 * s - 1.0;
  return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

double poisson_mass_constant(double alpha, int dim) {
  check_window(alpha, std::max(dim, 2));
  const double e = 0.5 * (dim + alpha);
  exp_sinh<double> es;
  const double radial = es.integrate([&](double r) { return std::pow(r, dim - 1) / std::pow(1.0 + r * r, e); }, 0.0,
                                     std::numeric_limits<double>::infinity(), 1e-14);
  return 1.0 / (sphere_area(dim) * radial);
}

double poisson_kernel(double alpha, int dim, double x_norm, double y) {
  return poisson_mass_constant(alpha, dim) * std::pow(y, alpha) / std::pow(x_norm * x_norm + y * y, 0.5 * (dim + alpha));
}

double riesz_constant(double alpha, int dim) {
  return alpha * poisson_mass_constant(alpha, dim) * kappa(alpha).kappa_alpha;
}

double riesz_pv(const std::function<double(double)>& u, double alpha, double x, const RieszOptions& o) {
  check_window(alpha, 2);
  const double ux = u(x);
  const double d = o.inner_radius;

  // Inner part: 2u(x) - u(x+t) - u(x-t) = -u'' t^2 - u'''' t^4 / 12 + O(t^6).
  const double h = o.fd_step;
  const double u2 = (-u(x + 2 * h) + 16 * u(x + h) - 30 * ux + 16 * u(x - h) - u(x - 2 * h)) / (12 * h * h);
  const double h4 = 10 * h;
  const double u4 = (u(x + 2 * h4) - 4 * u(x + h4) + 6 * ux - 4 * u(x - h4) + u(x - 2 * h4)) / std::pow(h4, 4);
  const double inner = -u2 * std::pow(d, 2 - alpha) / (2 - alpha) - u4 / 12.0 * std::pow(d, 4 - alpha) / (4 - alpha);

  auto integrand = [&](double t) { return (2 * ux - u(x + t) - u(x - t)) / std::pow(t, 1 + alpha); };
  double err_mid = 0.0;
  double mid = 0.0;
  for (double a = d, b = 1.0; a < 1e3; a = b, b *= 10.0) {
    double e = 0.0;
    mid += gk(integrand, a, b, o.tol, &e);
    err_mid += e;
  }
  // Beyond R the 2u(x) part integrates in closed form.
  const double big = 1e3;
  exp_sinh<double> es;
  double err_tail = 0.0;
  double l1 = 0.0;
  const double tail_u = es.integrate([&](double t) { return (u(x + t) + u(x - t)) / std::pow(t, 1 + alpha); }, big,
                                     std::numeric_limits<double>::infinity(), o.tol, &err_tail, &l1);
  const double tail = 2 * ux * std::pow(big, -alpha) / alpha - tail_u;
  const double total = inner + mid + tail;
  if (err_tail + err_mid > 1e3 * o.tol * std::max(1.0, std::abs(total)))
    throw std::runtime_error("riesz_pv: insufficient decay, tail quadrature did not converge");
  return riesz_constant(alpha, 1) * total;
}

double poisson_extend(const std::function<double(double)>& u, double alpha, double x, double y) {
  check_window(alpha, 2);
  if (!(y > 0.0)) throw std::invalid_argument("poisson_extend needs y > 0");
  const double c = poisson_mass_constant(alpha, 1);
  const double e = 0.5 * (1 + alpha);
  // s = x + y z
  auto f = [&](double z) { return (u(x + y * z) + u(x - y * z)) / std::pow(1 + z * z, e); };
  double err = 0.0;
  double v = gk(f, 0.0, 1.0, 1e-12) + gk(f, 1.0, 10.0, 1e-12);
  exp_sinh<double> es;
  v += es.integrate(f, 10.0, std::numeric_limits<double>::infinity(), 1e-12, &err);
  if (!std::isfinite(v)) throw std::runtime_error("poisson_extend: tail truncation failed");
  return c * v;
}

double poisson_extend(const std::function<double(double, double)>& u, double alpha, const std::array<double, 2>& x,
                      double y) {
  check_window(alpha, 2);
  if (!(y > 0.0)) throw std::invalid_argument("poisson_extend needs y > 0");
  const double c = poisson_mass_constant(alpha, 2);
  const double e = 0.5 * (2 + alpha);
  constexpr int n_theta = 96;  // periodic trapezoid, spectrally accurate
  auto ring = [&](double rho) {
    double acc = 0.0;
    for (int k = 0; k < n_theta; ++k) {
      const double th = 2 * pi * k / n_theta;
      acc += u(x[0] + y * rho * std::cos(th), x[1] + y * rho * std::sin(th));
    }
    return acc * 2 * pi / n_theta;
  };
  auto f = [&](double rho) { return rho * ring(rho) / std::pow(1 + rho * rho, e); };
  double v = gk(f, 0.0, 1.0, 1e-12) + gk(f, 1.0, 10.0, 1e-12);
  exp_sinh<double> es;
  v += es.integrate(f, 10.0, std::numeric_limits<double>::infinity(), 1e-12);
  if (!std::isfinite(v)) throw std::runtime_error("poisson_extend: tail truncation failed");
  return c * v;
}

std::array<double, 4> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("linear_fit needs >= 2 paired samples");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double b = sxy / sxx;
  const double a = my - b * mx;
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) sse += std::pow(y[i] - a - b * x[i], 2);
  const double se = n > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
  const double r2 = syy > 0 ? 1.0 - sse / syy : 1.0;
  return {b, a, se, r2};
}

ScalingReport cutoff_norm_scaling(double alpha, int dim, double r, const std::vector<double>& eps_list, NormKind kind,
                                  double power) {
  check_window(alpha, dim);
  if (eps_list.size() < 2) throw std::invalid_argument("need at least two eps values");
  for (double e : eps_list)
    if (!(e > 0.0 && e < r / 4.0)) throw std::invalid_argument("eps values must lie in (0, r/4)");
  ScalingReport rep;
  rep.alpha = alpha;
  rep.dim = dim;
  rep.r = r;
  rep.power = kind == NormKind::L2Squared ? 2.0 : power;
  rep.truncation_radius = r;  // the cutoff makes the integrand compactly supported

  std::vector<double> lx, ly;
  for (double eps : eps_list) {
    const CutoffBubble cb{bubble(eps, alpha, dim), r};
    auto f = [&](double s) { return std::pow(s, dim - 1) * std::pow(cb.radial(s), rep.power); };
    auto breaks = graded_breaks(eps, r);
    // The cutoff is only C^2 at r/2.
    breaks.insert(std::upper_bound(breaks.begin(), breaks.end(), 0.5 * r), 0.5 * r);
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    double val = 0.0, err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      double e = 0.0;
      val += gk(f, breaks[i], breaks[i + 1], 1e-11, &e);
      err += e;
    }
    val *= sphere_area(dim);
    if (err * sphere_area(dim) > 1e-8 * val) throw std::runtime_error("cutoff_norm_scaling: quadrature under-resolved");
    rep.rows.push_back({eps, val, 0.0, 0.0});
    lx.push_back(std::log(eps));
    ly.push_back(std::log(val));
  }
  const auto fit = linear_fit(lx, ly);
  rep.exponent = fit[0];
  rep.stderr_ = fit[2];
  for (std::size_t i = 0; i < lx.size(); ++i)
    rep.max_residual = std::max(rep.max_residual, std::abs(ly[i] - fit[1] - fit[0] * lx[i]));
  std::vector<double> lc;
  for (std::size_t i = 0; i < lx.size(); ++i) lc.push_back(ly[i] - std::log(-lx[i]));
  if (std::all_of(lx.begin(), lx.end(), [](double v) { return v < 0.0; }))
    rep.log_corrected_exponent = linear_fit(lx, lc)[0];
  for (auto& row : rep.rows) {
    row.fitted_exponent = rep.exponent;
    row.stderr_ = rep.stderr_;
  }
  return rep;
}

void write_scaling_csv(std::ostream& os, const ScalingReport& rep, const std::string& header_comment) {
  if (!header_comment.empty()) os << "# " << header_comment << '\n';
  os << "eps,norm,fitted_exponent,stderr\n";
  const auto old = os.precision(17);
  for (const auto& row : rep.rows) os << row.eps << ',' << row.norm << ',' << row.fitted_exponent << ',' << row.stderr_ << '\n';
  os.precision(old);
}

double bubble_rayleigh(double alpha, int dim, double tol, double eps) {
  check_window(alpha, dim);
  const double n = dim;
  const double beta = 0.5 * (n - alpha);
  const double nu = 0.5 * alpha;
  // Fourier transform of (1+|x|^2)^{-beta}: (2pi)^{N/2} 2^{1-beta}/Gamma(beta) |k|^{beta-N/2} K_nu(|k|).
  const double pref = std::pow(2 * pi, n / 2) * std::pow(2.0, 1 - beta) / boost::math::tgamma(beta);
  auto uhat1 = [&](double k) { return pref * std::pow(k, beta - n / 2) * boost::math::cyl_bessel_k(nu, k); };
  auto num_integrand = [&](double xi) {
    if (xi * eps > 700.0) return 0.0;
    const double uh = std::pow(eps, 0.5 * (alpha - n)) * std::pow(eps, n) * uhat1(eps * xi);
    return std::pow(xi, n - 1 + alpha) * uh * uh;
  };
  tanh_sinh<double> ts;
  exp_sinh<double> es;
  double e1 = 0.0, e2 = 0.0;
  double num = ts.integrate(num_integrand, 0.0, 1.0 / eps, tol, &e1) +
               es.integrate(num_integrand, 1.0 / eps, std::numeric_limits<double>::infinity(), tol, &e2);
  num *= sphere_area(dim) / std::pow(2 * pi, n);

  const double crit = critical_exponent(alpha, dim);
  const Bubble b{eps, alpha, dim};
  auto den_integrand = [&](double r) { return std::pow(r, n - 1) * std::pow(b.radial(r), crit); };
  double e3 = 0.0, e4 = 0.0;
  double mass = gk(den_integrand, 0.0, eps, 1e-14, &e3) +
                es.integrate(den_integrand, eps, std::numeric_limits<double>::infinity(), tol, &e4);
  mass *= sphere_area(dim);
  if (!std::isfinite(num) || !std::isfinite(mass) || (e1 + e2) > 1e3 * tol * num)
    throw std::runtime_error("bubble_rayleigh: quadrature tail failure");
  return num / std::pow(mass, 2.0 / crit);
}

}  // namespace fraclap
