#include "fraclap/sublinear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fraclap {

namespace {

Eigen::VectorXd first_mode_nodal(const Problem& p) { return p.nodal(Eigen::VectorXd::Unit(p.size(), 0)); }

// One sweep of the shifted fixed-point map in coefficients.
Eigen::VectorXd shifted_step(const Problem& p, const Eigen::VectorXd& a, const Eigen::VectorXd& u, double c) {
  const Eigen::VectorXd fa = p.quad().analyze(pointwise::f(p.nonlinearity(), u));
  return (fa + c * a).cwiseQuotient((p.symbol().array() + c).matrix());
}

}  // namespace

Barriers make_barriers(const Problem& p) {
  if (!(p.q() < 1.0)) throw std::invalid_argument("barriers need 0 < q < 1");
  Barriers b;
  b.sub = SpectralFunction::zero(p.basis());
  b.super = SpectralFunction::zero(p.basis());
  if (p.lambda() == 0.0) return b;

  const double lam1 = p.lambda_1();
  const Eigen::VectorXd phi = first_mode_nodal(p);
  // lambda_1 (eps phi)^{1-q} <= lambda wherever eps phi <= (lambda/lambda_1)^{1/(1-q)}.
  b.eps = 0.5 * std::pow(p.lambda() / lam1, 1.0 / (1.0 - p.q())) / phi.maxCoeff();
  b.sub.coeffs[0] = b.eps;

  // g solves (-Delta)^{alpha/2} g = 1 in the Galerkin sense.
  const Eigen::VectorXd g =
      p.quad().analyze(Eigen::VectorXd::Ones(p.quad().grid().size())).cwiseQuotient(p.symbol());
  const double G = p.nodal(g).maxCoeff();
  const double q = p.q();
  const double pw = p.top_power();
  // M >= f(M G)  <=>  k(M) = lambda G^q M^{q-1} + G^p M^{p-1} <= 1; k is minimal at M*.
  const double m_star = std::pow(p.lambda() * std::pow(G, q) * (1.0 - q) / (std::pow(G, pw) * (pw - 1.0)),
                                 1.0 / (pw - q));
  const double k_star = p.lambda() * std::pow(G, q) * std::pow(m_star, q - 1.0) +
                        std::pow(G, pw) * std::pow(m_star, pw - 1.0);
  if (k_star > 1.0) {
    std::ostringstream msg;
    msg << "barriers: no supersolution multiple exists (min_M k(M) = " << k_star << " > 1)";
    throw SolverError(Failure::BarrierInfeasible, msg.str());
  }
  b.M = m_star;
  b.super.coeffs = m_star * g;

  const Eigen::VectorXd lo = p.nodal(b.sub.coeffs);
  const Eigen::VectorXd hi = p.nodal(b.super.coeffs);
  const double slack = 1e-10 * hi.maxCoeff();
  if (((lo - hi).array() > slack).any())
    throw SolverError(Failure::BarrierInfeasible, "barriers: sub is not below super on the quadrature grid");
  return b;
}

MonotoneReport monotone_iterate(const Problem& p, const SpectralFunction& sub,
                                const std::optional<SpectralFunction>& super, const MonotoneOptions& opts) {
  if (p.q() > 1.0) throw SolverError(Failure::Refused, "monotone iteration needs q <= 1");
  if (sub.coeffs.size() != p.size()) throw std::invalid_argument("subsolution does not match the problem basis");

  MonotoneReport rep;
  double c = 0.0;
  Eigen::VectorXd a;
  Eigen::VectorXd u;
  bool converged = false;
  while (!converged) {
    a = sub.coeffs;
    u = p.nodal(a);
    rep.sup_history.assign(1, u.maxCoeff());
    rep.min_increment = 0.0;
    bool restart = false;
    for (int k = 0; k < opts.max_iters; ++k) {
      Eigen::VectorXd a_next = shifted_step(p, a, u, c);
      Eigen::VectorXd u_next = p.nodal(a_next);
      const Eigen::VectorXd inc = u_next - u;
      const double size = inc.cwiseAbs().maxCoeff();
      const double linf = u_next.maxCoeff();
      if (!std::isfinite(linf) || linf > opts.blowup) {
        std::ostringstream msg;
        msg << "monotone: upward iterates blew up after " << k + 1 << " steps";
        throw SolverError(Failure::Blowup, msg.str());
      }
      if (size > 0.0) {
        const double rel = inc.minCoeff() / size;
        rep.min_increment = std::min(rep.min_increment, rel);
        if (rel < -opts.order_tol && size > 1e-13 * std::max(linf, 1e-300)) {
          c = c == 0.0 ? p.lambda_1() : 2.0 * c;
          if (c > opts.shift_cap) throw SolverError(Failure::OrderingViolation, "monotone: ordering violated at the shift cap");
          restart = true;
          break;
        }
      }
      a = std::move(a_next);
      u = std::move(u_next);
      rep.sup_history.push_back(linf);
      if (size <= opts.tol * linf || size == 0.0) {
        converged = true;
        break;
      }
    }
    if (restart) continue;
    if (!converged) {
      const auto& h = rep.sup_history;
      std::ostringstream msg;
      msg << "monotone: no convergence in " << opts.max_iters << " iterations";
      if (h.size() > 1 && h.back() > h[h.size() - 2]) msg << " (sup norm still growing)";
      throw SolverError(Failure::NoConvergence, msg.str());
    }
  }
  rep.shift = c;

  SpectralFunction limit{p.basis(), a};
  if (opts.polish && a.cwiseAbs().maxCoeff() > 0.0) {
    NewtonOptions nopts = opts.newton;
    rep.solution = newton_solve(p, limit, nopts);
    rep.solution.kind = SolutionKind::Minimal;
  } else {
    rep.solution = make_solution(limit, p, SolutionKind::Minimal);
  }
  rep.solution.iterations = static_cast<int>(rep.sup_history.size()) - 1;

  if (super && opts.downward) {
    Eigen::VectorXd b = super->coeffs;
    Eigen::VectorXd w = p.nodal(b);
    for (int k = 0; k < opts.max_iters; ++k) {
      Eigen::VectorXd b_next = shifted_step(p, b, w, c);
      Eigen::VectorXd w_next = p.nodal(b_next);
      const double size = (w_next - w).cwiseAbs().maxCoeff();
      b = std::move(b_next);
      w = std::move(w_next);
      if (size <= opts.tol * std::max(w.maxCoeff(), 1e-300) || size == 0.0) {
        rep.downward_gap = (w - p.nodal(rep.solution.u.coeffs)).cwiseAbs().maxCoeff();
        break;
      }
    }
  }
  return rep;
}

std::vector<const Solution*> Branch::successes() const {
  std::vector<const Solution*> out;
  for (const auto& pt : points)
    if (pt.ok && pt.solution) out.push_back(&*pt.solution);
  return out;
}

std::pair<std::optional<Solution>, std::string> solve_minimal(const Problem& p, const Solution* warm,
                                                              const MonotoneOptions& opts) {
  try {
    std::optional<Barriers> bars;
    std::string barrier_error;
    if (p.lambda() > 0.0) {
      try {
        bars = make_barriers(p);
      } catch (const SolverError& e) {
        barrier_error = e.what();
      }
    } else {
      bars = make_barriers(p);
    }
    if (!warm && !bars) return {std::nullopt, barrier_error};

    SpectralFunction sub = warm ? transfer(warm->u, p.basis()) : bars->sub;
    std::optional<SpectralFunction> super;
    if (bars) {
      const Eigen::VectorXd lo = p.nodal(sub.coeffs);
      const Eigen::VectorXd hi = p.nodal(bars->super.coeffs);
      if (!(((lo - hi).array() > 1e-10 * std::max(hi.maxCoeff(), 1e-300)).any())) super = bars->super;
    }
    MonotoneReport rep = monotone_iterate(p, sub, super, opts);
    return {std::move(rep.solution), {}};
  } catch (const SolverError& e) {
    return {std::nullopt, std::string(to_string(e.kind())) + ": " + e.what()};
  }
}

Branch branch_sweep(const Problem& tmpl, const std::vector<double>& grid, const BranchOptions& opts) {
  if (!(tmpl.q() < 1.0)) throw std::invalid_argument("branch sweep needs 0 < q < 1");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("lambda grid must be ascending");
  Branch br;
  br.modes = tmpl.basis()->modes_per_axis();
  br.oversample = tmpl.oversample();
  br.tol_lambda = opts.tol_lambda;

  std::optional<Solution> last;
  std::optional<double> first_fail;
  double last_ok_before_fail = -1.0;
  std::optional<Solution> lo_solution;
  for (double lam : grid) {
    auto [sol, why] = solve_minimal(tmpl.with_lambda(lam), last ? &*last : nullptr, opts.monotone);
    BranchPoint pt;
    pt.lambda = lam;
    pt.ok = sol.has_value();
    pt.failure = why;
    pt.solution = sol;
    br.points.push_back(std::move(pt));
    if (sol) {
      last = sol;
      if (!first_fail) {
        last_ok_before_fail = lam;
        lo_solution = sol;
      }
    } else if (!first_fail) {
      first_fail = lam;
    }
  }

  if (first_fail && lo_solution) {
    double lo = last_ok_before_fail;
    double hi = *first_fail;
    while (hi - lo > opts.tol_lambda * lo) {
      const double mid = 0.5 * (lo + hi);
      auto [sol, why] = solve_minimal(tmpl.with_lambda(mid), &*lo_solution, opts.monotone);
      BranchPoint pt;
      pt.lambda = mid;
      pt.ok = sol.has_value();
      pt.failure = why;
      pt.solution = sol;
      br.points.push_back(std::move(pt));
      if (sol) {
        lo = mid;
        lo_solution = std::move(sol);
      } else {
        hi = mid;
      }
    }
    br.lambda_star_bracket = std::make_pair(lo, hi);
  }
  std::stable_sort(br.points.begin(), br.points.end(),
                   [](const BranchPoint& x, const BranchPoint& y) { return x.lambda < y.lambda; });
  return br;
}

}  // namespace fraclap
