#include "fraclap/rayleigh.hpp"

#include <cmath>

#include "fraclap/extension.hpp"
#include "fraclap/kernels.hpp"

namespace fraclap {

namespace {

struct Eval {
  double q = 0.0;
  Eigen::VectorXd grad;
};

// Normalizes a to ||u||_r = 1 in place and returns the quotient and its gradient there.
Eval normalize_and_eval(Eigen::VectorXd& a, const Problem& p) {
  const double r = p.crit_exp();
  const double vol = p.quad().grid().cell_volume();
  Eigen::VectorXd u = p.nodal(a);
  const double norm = std::pow(vol * pointwise::sum_abs_pow(u, r), 1.0 / r);
  a /= norm;
  u /= norm;
  Eval e;
  const Eigen::VectorXd shifted = (p.symbol().array() - p.lambda()).matrix().cwiseProduct(a);
  e.q = a.dot(shifted);
  Eigen::VectorXd w(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) w[i] = std::pow(std::abs(u[i]), r - 2.0) * u[i];
  e.grad = 2.0 * shifted - 2.0 * e.q * p.quad().analyze(w);
  return e;
}

}  // namespace

double rayleigh_quotient(const Eigen::VectorXd& coeffs, const Problem& p) {
  const double r = p.crit_exp();
  const double vol = p.quad().grid().cell_volume();
  const double denom = std::pow(vol * pointwise::sum_abs_pow(p.nodal(coeffs), r), 2.0 / r);
  const double num = coeffs.dot((p.symbol().array() - p.lambda()).matrix().cwiseProduct(coeffs));
  return num / denom;
}

RayleighResult rayleigh_minimize(const Problem& p, const RayleighOptions& opts) {
  if (p.q() != 1.0) throw std::invalid_argument("rayleigh minimization needs q = 1");
  if (!(p.lambda() < p.lambda_1())) throw std::invalid_argument("rayleigh minimization needs lambda < lambda_1");
  if (p.dim() < 2.0 * p.alpha()) throw std::invalid_argument("rayleigh minimization needs N >= 2 alpha");

  const Eigen::VectorXd metric = (p.symbol().array() - p.lambda()).matrix();
  Eigen::VectorXd a = opts.init ? transfer(*opts.init, p.basis()).coeffs : Eigen::VectorXd::Unit(p.size(), 0);
  if (a[0] < 0.0) a = -a;

  RayleighResult res;
  Eval cur = normalize_and_eval(a, p);
  res.history.push_back(cur.q);
  double step = 0.5;
  Eigen::VectorXd dir = cur.grad.cwiseQuotient(metric);
  int it = 0;
  int flat = 0;
  for (; it < opts.max_iters; ++it) {
    const double slope = cur.grad.dot(dir);
    if (std::sqrt(std::max(slope, 0.0)) < opts.grad_tol) break;
    double s = step;
    Eigen::VectorXd trial;
    Eval next;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      trial = a - s * dir;
      next = normalize_and_eval(trial, p);
      if (next.q <= cur.q - 1e-4 * s * slope) {
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;
    // Barzilai-Borwein step in the preconditioned metric.
    const Eigen::VectorXd da = trial - a;
    const Eigen::VectorXd dg = next.grad - cur.grad;
    const double num = da.dot(metric.cwiseProduct(da));
    const double den = da.dot(dg);
    step = (den > 0.0 && std::isfinite(num / den)) ? std::min(num / den, 1e3) : 2.0 * s;

    const double drop = cur.q - next.q;
    a = std::move(trial);
    cur = std::move(next);
    dir = cur.grad.cwiseQuotient(metric);
    res.history.push_back(cur.q);
    flat = drop <= opts.rel_tol * cur.q ? flat + 1 : 0;
    if (flat >= 20) break;
  }
  // |w| replacement reduced to the sign flip available in coefficient space.
  if (a[0] < 0.0) a = -a;
  res.iterations = it;
  res.s_lambda = cur.q;
  res.direction = {p.basis(), a};

  const double scale = std::pow(res.s_lambda, 1.0 / (p.crit_exp() - 2.0));
  const SpectralFunction u{p.basis(), scale * a};
  if (opts.refine && p.lambda() > 0.0) {
    res.minimizer = newton_solve(p, u, opts.newton);
  } else {
    res.minimizer = make_solution(u, p, SolutionKind::Rayleigh);
  }
  res.minimizer.kind = SolutionKind::Rayleigh;

  const double bound = kappa(p.alpha()).kappa_alpha * sobolev_constant(p.alpha(), p.dim());
  res.stalled = res.s_lambda >= bound;
  return res;
}

}  // namespace fraclap
