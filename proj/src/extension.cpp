#include "fraclap/extension.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/numeric/odeint.hpp>

#include "fraclap/kernels.hpp"

namespace fraclap {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kQuadTol = 1e-13;
// Per-mode energies only need to beat the 1e-6 isometry budget by a wide margin.
constexpr double kEnergyTol = 1e-11;

template <class F>
double gk(F f, double a, double b, double tol = kQuadTol) {
  return gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol);
}

// Limit at h -> 0 of g(h) whose expansion is L + sum_i c_i h^{p_i}.
template <class F>
double richardson_limit(F g, double h0, double alpha) {
  const std::array<double, 6> powers{2.0 - alpha, 2.0, 4.0 - alpha, 4.0, 6.0 - alpha, 6.0};
  constexpr int levels = 7;
  std::array<double, levels> t{};
  for (int k = 0; k < levels; ++k) t[k] = g(h0 / std::ldexp(1.0, k));
  for (int i = 0; i < levels - 1; ++i) {
    const double r = std::pow(2.0, powers[i]);
    for (int k = 0; k < levels - 1 - i; ++k) t[k] = (r * t[k + 1] - t[k]) / (r - 1.0);
  }
  return t[0];
}

double profile_scale(double alpha) {
  const double nu = alpha / 2.0;
  return std::pow(2.0, 1.0 - nu) / boost::math::tgamma(nu);
}

}  // namespace

double ThetaProfile::operator()(double s) const {
  if (s <= 0.0) return 1.0;
  if (s > 700.0) return 0.0;
  const double nu = alpha / 2.0;
  return profile_scale(alpha) * std::pow(s, nu) * boost::math::cyl_bessel_k(nu, s);
}

double ThetaProfile::derivative(double s) const {
  if (s > 700.0) return 0.0;
  const double nu = alpha / 2.0;
  // d/ds [s^nu K_nu(s)] = -s^nu K_{nu-1}(s), and K_{nu-1} = K_{1-nu}.
  return -profile_scale(alpha) * std::pow(s, nu) * boost::math::cyl_bessel_k(1.0 - nu, s);
}

double ThetaProfile::weighted_derivative(double s) const {
  const double mu = 1.0 - alpha / 2.0;
  if (s <= 0.0) return -profile_scale(alpha) * std::pow(2.0, mu - 1.0) * boost::math::tgamma(mu);
  if (s > 700.0) return 0.0;
  return -profile_scale(alpha) * std::pow(s, mu) * boost::math::cyl_bessel_k(mu, s);
}

namespace {

ThetaProfile compute_profile(double alpha, double s_max) {
  ThetaProfile p;
  p.alpha = alpha;
  p.s_max = s_max;

  // Graded substitutions s = t^{1/alpha} and s = t^{1/(2-alpha)} absorb the
  // endpoint behaviour of the two halves of the weighted energy on [0,1].
  const double near_grad = gk([&](double t) {
    const double w = p.weighted_derivative(std::pow(t, 1.0 / alpha));
    return w * w / alpha;
  }, 0.0, 1.0);
  const double near_val = gk([&](double t) {
    const double th = p(std::pow(t, 1.0 / (2.0 - alpha)));
    return th * th / (2.0 - alpha);
  }, 0.0, 1.0);
  const double far = gk([&](double s) {
    const double d = p.derivative(s);
    const double th = p(s);
    return std::pow(s, 1.0 - alpha) * (d * d + th * th);
  }, 1.0, s_max);
  p.energy = near_grad + near_val + far;
  if (!(p.energy > 0.0) || !std::isfinite(p.energy)) throw std::runtime_error("profile energy quadrature failed");

  p.neumann_limit = richardson_limit([&](double s) { return -p.weighted_derivative(s); }, 0.05, alpha);
  return p;
}

}  // namespace

ThetaProfile theta_profile(double alpha, double s_max, double tol) {
  check_alpha(alpha);
  if (!(std::exp(-s_max) < tol)) throw std::invalid_argument("profile cutoff s_max too small for requested tolerance");
  // Profiles are immutable; memoize by (alpha, s_max).
  static std::mutex mu;
  static std::map<std::pair<double, double>, ThetaProfile> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({alpha, s_max}); it != cache.end()) return it->second;
  }
  ThetaProfile p = compute_profile(alpha, s_max);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(alpha, s_max), p).first->second;
}

OdeProfile theta_profile_ode(double alpha, std::vector<double> points, double s_max, double tol) {
  check_alpha(alpha);
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  constexpr double s0 = 0.05;
  for (double s : points)
    if (s < s0 || s > s_max) throw std::invalid_argument("ODE profile points must lie in [0.05, s_max]");

  // Evaluation times, descending from s_max to s0.
  std::vector<double> times = points;
  times.push_back(s0);
  times.push_back(s_max);
  std::sort(times.begin(), times.end(), std::greater<>());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  auto rhs = [alpha](const State& y, State& dy, double s) {
    dy[0] = y[1];
    dy[1] = y[0] - (1.0 - alpha) / s * y[1];
  };
  // Decaying branch: theta ~ s^{(alpha-1)/2} e^{-s}. Any growing-branch
  // admixture shrinks like e^{-2(s_max - s)} on the way in.
  State y{1.0, (alpha - 1.0) / (2.0 * s_max) - 1.0};
  std::vector<State> states;
  auto stepper = odeint::make_dense_output(1e-30, tol * 1e-2, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_times(stepper, rhs, y, times.begin(), times.end(), -1e-3,
                          [&](const State& st, double) { states.push_back(st); });
  if (states.size() != times.size()) throw std::runtime_error("ODE profile integration did not reach s0");

  // Frobenius pair at s0: y_0 = sum c_k s^{2k}, y_a = s^alpha sum d_k s^{2k}.
  double y0 = 0.0, dy0 = 0.0, ya = 0.0, dya = 0.0;
  double c = 1.0, d = 1.0;
  for (int k = 0; k < 16; ++k) {
    if (k > 0) {
      c /= (2.0 * k) * (2.0 * k - alpha);
      d /= (2.0 * k) * (2.0 * k + alpha);
    }
    y0 += c * std::pow(s0, 2 * k);
    if (k > 0) dy0 += c * 2.0 * k * std::pow(s0, 2 * k - 1);
    ya += d * std::pow(s0, alpha + 2 * k);
    dya += d * (alpha + 2 * k) * std::pow(s0, alpha + 2 * k - 1);
  }
  const State& at0 = states.back();
  const double det = y0 * dya - ya * dy0;
  const double a = (at0[0] * dya - ya * at0[1]) / det;
  const double b = (y0 * at0[1] - dy0 * at0[0]) / det;
  if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw std::runtime_error("decaying profile selection failed to converge");

  OdeProfile out;
  out.regular_coeff = a;
  out.singular_coeff = b / a;
  for (double s : points) {
    const auto it = std::find(times.begin(), times.end(), s);
    const State& st = states[static_cast<std::size_t>(it - times.begin())];
    out.s.push_back(s);
    out.theta.push_back(st[0] / a);
    out.dtheta.push_back(st[1] / a);
  }
  return out;
}

Constants kappa(double alpha, std::optional<int> dim) {
  const ThetaProfile p = theta_profile(alpha);
  Constants c;
  c.alpha = alpha;
  c.kappa_alpha = 1.0 / p.energy;
  if (dim) {
    c.dim = *dim;
    c.s_alpha_N = sobolev_constant(alpha, *dim);
  }
  return c;
}

double ExtensionField::eval(const std::array<double, 2>& x, double y) const {
  double acc = 0.0;
  const auto& b = *base.basis;
  for (int j = 0; j < b.size(); ++j) acc += base.coeffs[j] * b.eval_mode(j, x) * profile(std::sqrt(b.rho()[j]) * y);
  return acc;
}

Eigen::VectorXd ExtensionField::slice(double y) const {
  Eigen::VectorXd out = base.coeffs;
  const auto& rho = base.basis->rho();
  for (Eigen::Index j = 0; j < out.size(); ++j) out[j] *= profile(std::sqrt(rho[j]) * y);
  return out;
}

ExtensionField extend(const SpectralFunction& u, double alpha) {
  ExtensionField w;
  w.base = u;
  w.profile = theta_profile(alpha);
  w.kappa_alpha = 1.0 / w.profile.energy;
  return w;
}

SpectralFunction neumann_trace(const ExtensionField& w) {
  const double alpha = w.profile.alpha;
  const auto& rho = w.base.basis->rho();
  SpectralFunction out = SpectralFunction::zero(w.base.basis);
  for (Eigen::Index j = 0; j < out.coeffs.size(); ++j) {
    const double a = w.base.coeffs[j];
    if (a == 0.0) continue;
    const double k = std::sqrt(rho[j]);
    // y^{1-alpha} d/dy [a theta(k y)]
    auto flux = [&](double y) { return std::pow(y, 1.0 - alpha) * a * k * w.profile.derivative(k * y); };
    out.coeffs[j] = -w.kappa_alpha * richardson_limit(flux, 0.05 / k, alpha);
  }
  return out;
}

double extension_energy(const ExtensionField& w, const SeparablePerturbation* pert) {
  const double alpha = w.profile.alpha;
  const auto& rho = w.base.basis->rho();
  const auto& prof = w.profile;
  if (pert && pert->coeffs.size() != w.base.coeffs.size()) throw std::invalid_argument("perturbation size mismatch");
  double total = 0.0;
  const Eigen::Index n = w.base.coeffs.size();
#pragma omp parallel for reduction(+ : total) schedule(dynamic)
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = w.base.coeffs[j];
    const double b = pert ? pert->coeffs[j] : 0.0;
    if (a == 0.0 && b == 0.0) continue;
    const double r = rho[j];
    const double k = std::sqrt(r);
    auto value = [&](double y) { return a * prof(k * y) + (b != 0.0 ? b * pert->chi(y) : 0.0); };
    auto slope = [&](double y) { return a * k * prof.derivative(k * y) + (b != 0.0 ? b * pert->dchi(y) : 0.0); };
    // y^{1-alpha} W'(y), bounded at y = 0
    auto weighted_slope = [&](double y) {
      double v = a * std::pow(r, alpha / 2.0) * prof.weighted_derivative(k * y);
      if (b != 0.0) v += b * std::pow(y, 1.0 - alpha) * pert->dchi(y);
      return v;
    };
    const double y1 = 1.0 / k;
    const double near_grad = std::pow(y1, alpha) / alpha * gk([&](double t) {
      const double v = weighted_slope(y1 * std::pow(t, 1.0 / alpha));
      return v * v;
    }, 0.0, 1.0, kEnergyTol);
    const double near_val = r * std::pow(y1, 2.0 - alpha) / (2.0 - alpha) * gk([&](double t) {
      const double v = value(y1 * std::pow(t, 1.0 / (2.0 - alpha)));
      return v * v;
    }, 0.0, 1.0, kEnergyTol);
    const double y_end = std::max(prof.s_max / k, b != 0.0 ? 60.0 : 0.0);
    const double far = gk([&](double y) {
      const double v = value(y);
      const double d = slope(y);
      return std::pow(y, 1.0 - alpha) * (r * v * v + d * d);
    }, y1, y_end, kEnergyTol);
    total += near_grad + near_val + far;
  }
  return w.kappa_alpha * total;
}

}  // namespace fraclap
