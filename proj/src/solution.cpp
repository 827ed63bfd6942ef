#include "fraclap/solution.hpp"

#include <cmath>
#include <sstream>

namespace fraclap {

namespace {

void check_size(const Eigen::VectorXd& a, const Problem& p) {
  if (a.size() != p.size()) throw std::invalid_argument("coefficient vector does not match the problem basis");
}

double quad_cell(const Problem& p) { return p.quad().grid().cell_volume(); }

}  // namespace

double energy(const Eigen::VectorXd& a, const Problem& p) {
  check_size(a, p);
  const Eigen::VectorXd u = p.nodal(a);
  const double quadratic = 0.5 * a.dot(p.symbol().cwiseProduct(a));
  return quadratic - quad_cell(p) * pointwise::sum_F(p.nonlinearity(), u);
}

double energy(const SpectralFunction& u, const Problem& p) { return energy(u.coeffs, p); }

Eigen::VectorXd energy_gradient(const Eigen::VectorXd& a, const Problem& p) {
  check_size(a, p);
  const Eigen::VectorXd u = p.nodal(a);
  return p.symbol().cwiseProduct(a) - p.quad().analyze(pointwise::f(p.nonlinearity(), u));
}

SpectralFunction energy_gradient(const SpectralFunction& u, const Problem& p) {
  return {p.basis(), energy_gradient(u.coeffs, p)};
}

Eigen::MatrixXd energy_hessian(const Eigen::VectorXd& a, const Problem& p) {
  check_size(a, p);
  const Eigen::VectorXd u = p.nodal(a);
  Eigen::MatrixXd h = -p.quad().weighted_gram(pointwise::df(p.nonlinearity(), u));
  h.diagonal() += p.symbol();
  return h;
}

double dual_norm(const Eigen::VectorXd& g, const Problem& p) {
  return std::sqrt(g.cwiseAbs2().cwiseQuotient(p.symbol()).sum());
}

double residual_sup(const Eigen::VectorXd& g, const Problem& p) { return p.nodal(g).cwiseAbs().maxCoeff(); }

const char* to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::Minimal: return "minimal";
    case SolutionKind::Rayleigh: return "rayleigh";
    case SolutionKind::MountainPass: return "mountain_pass";
    case SolutionKind::Other: return "other";
  }
  return "other";
}

Solution make_solution(const SpectralFunction& u, const Problem& p, SolutionKind kind) {
  check_size(u.coeffs, p);
  Solution s;
  s.u = u;
  s.lambda = p.lambda();
  s.kind = kind;
  const Eigen::VectorXd nodal = p.nodal(u.coeffs);
  const Eigen::VectorXd fu = pointwise::f(p.nonlinearity(), nodal);
  const Eigen::VectorXd proj = p.quad().analyze(fu);
  const Eigen::VectorXd g = p.symbol().cwiseProduct(u.coeffs) - proj;
  s.residual = residual_sup(g, p);
  s.energy = 0.5 * u.coeffs.dot(p.symbol().cwiseProduct(u.coeffs)) -
             quad_cell(p) * pointwise::sum_F(p.nonlinearity(), nodal);
  s.linf = nodal.maxCoeff();
  s.min_nodal = nodal.minCoeff();
  // phi_1 is the first sorted mode; both integrals are quadrature projections onto it.
  const Eigen::VectorXd phi1 = p.quad().synthesize(Eigen::VectorXd::Unit(p.size(), 0));
  const double vol = quad_cell(p);
  s.eigen_identity_gap = vol * fu.dot(phi1) - p.lambda_1() * vol * nodal.dot(phi1);
  return s;
}

Solution newton_solve(const Problem& p, const SpectralFunction& init, const NewtonOptions& opts) {
  check_size(init.coeffs, p);
  Eigen::VectorXd a = init.coeffs;
  Eigen::VectorXd g = energy_gradient(a, p);
  double merit = dual_norm(g, p);
  std::vector<double> history;
  double res = residual_sup(g, p);
  history.push_back(res);
  int it = 0;
  while (res >= opts.tol) {
    if (it >= opts.max_iters) {
      std::ostringstream msg;
      msg << "newton: no convergence after " << it << " iterations (residual " << res << ")";
      throw SolverError(Failure::NoConvergence, msg.str());
    }
    ++it;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(energy_hessian(a, p));
    if (!(lu.rcond() > opts.min_rcond)) throw SolverError(Failure::SingularJacobian, "newton: singular Jacobian");
    const Eigen::VectorXd step = lu.solve(-g);
    double t = 1.0;
    Eigen::VectorXd trial;
    Eigen::VectorXd g_trial;
    double merit_trial = 0.0;
    for (;;) {
      trial = a + t * step;
      g_trial = energy_gradient(trial, p);
      merit_trial = dual_norm(g_trial, p);
      if (std::isfinite(merit_trial) && merit_trial <= (1.0 - 1e-4 * t) * merit) break;
      t *= 0.5;
      if (t < 1e-6) throw SolverError(Failure::Divergence, "newton: line search failed");
    }
    a = trial;
    g = g_trial;
    merit = merit_trial;
    res = residual_sup(g, p);
    history.push_back(res);
    if (p.nodal(a).cwiseAbs().maxCoeff() > opts.blowup) throw SolverError(Failure::Divergence, "newton: iterate blew up");
  }
  Solution s = make_solution({p.basis(), a}, p, SolutionKind::Other);
  if (s.min_nodal < -opts.positivity_tol * std::max(s.linf, 0.0) || (s.linf <= 0.0 && s.min_nodal < -opts.tol)) {
    std::ostringstream msg;
    msg << "newton: converged to a sign-changing or negative function (min " << s.min_nodal << ", max " << s.linf << ")";
    throw SolverError(Failure::NonPositive, msg.str());
  }
  s.iterations = it;
  s.history = std::move(history);
  return s;
}

}  // namespace fraclap
