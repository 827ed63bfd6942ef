#include "fraclap/mountain_pass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fraclap/extension.hpp"
#include "fraclap/kernels.hpp"

namespace fraclap {

namespace {

constexpr Eigen::Index kParallelThreshold = 4096;

double h_norm(const Eigen::VectorXd& v, const Eigen::VectorXd& metric) {
  return std::sqrt(v.dot(metric.cwiseProduct(v)));
}

// Equal H-arc-length nodes along the polygon through `path`.
std::vector<Eigen::VectorXd> reparametrize(const std::vector<Eigen::VectorXd>& path, const Eigen::VectorXd& metric) {
  const std::size_t n = path.size();
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) s[i] = s[i - 1] + h_norm(path[i] - path[i - 1], metric);
  std::vector<Eigen::VectorXd> out(n);
  out.front() = path.front();
  out.back() = path.back();
  std::size_t seg = 1;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double target = s.back() * static_cast<double>(i) / static_cast<double>(n - 1);
    while (seg < n - 1 && s[seg] < target) ++seg;
    const double len = s[seg] - s[seg - 1];
    const double t = len > 0.0 ? (target - s[seg - 1]) / len : 0.0;
    out[i] = (1.0 - t) * path[seg - 1] + t * path[seg];
  }
  return out;
}

PathFunctional functional_of(const Problem& p) {
  PathFunctional F;
  F.energy = [&p](const Eigen::VectorXd& a) { return energy(a, p); };
  F.gradient = [&p](const Eigen::VectorXd& a) { return energy_gradient(a, p); };
  F.metric = p.symbol();
  return F;
}

PathFunctional functional_of(const MovedFunctional& mf) {
  PathFunctional F;
  F.energy = [&mf](const Eigen::VectorXd& v) { return mf.energy(v); };
  F.gradient = [&mf](const Eigen::VectorXd& v) { return mf.gradient(v); };
  F.metric = mf.problem().symbol();
  return F;
}

}  // namespace

MovedFunctional::MovedFunctional(Solution u0, Problem p)
    : u0_(std::move(u0)), p_(std::move(p)), nl_(p_.nonlinearity()) {
  if (u0_.u.coeffs.size() != p_.size()) throw std::invalid_argument("translation center does not match the problem basis");
  u0_nodal_ = p_.nodal(u0_.u.coeffs);
}

double MovedFunctional::g(double u0x, double s) const {
  if (s < 0.0) return 0.0;
  return nl_.f(u0x + s) - nl_.f(u0x);
}

double MovedFunctional::G(double u0x, double s) const {
  if (s < 0.0) return 0.0;
  return nl_.F(u0x + s) - nl_.F(u0x) - nl_.f(u0x) * s;
}

double MovedFunctional::energy(const Eigen::VectorXd& v) const {
  const Eigen::VectorXd w = p_.nodal(v);
  double acc = 0.0;
#pragma omp parallel for if (w.size() >= kParallelThreshold) reduction(+ : acc) schedule(static)
  for (Eigen::Index i = 0; i < w.size(); ++i) acc += G(u0_nodal_[i], w[i]);
  return 0.5 * v.dot(p_.symbol().cwiseProduct(v)) - p_.quad().grid().cell_volume() * acc;
}

Eigen::VectorXd MovedFunctional::gradient(const Eigen::VectorXd& v) const {
  const Eigen::VectorXd w = p_.nodal(v);
  Eigen::VectorXd gw(w.size());
#pragma omp parallel for if (w.size() >= kParallelThreshold) schedule(static)
  for (Eigen::Index i = 0; i < w.size(); ++i) gw[i] = g(u0_nodal_[i], w[i]);
  return p_.symbol().cwiseProduct(v) - p_.quad().analyze(gw);
}

MovedFunctional moved_functional(const Solution& u0, const Problem& p) { return MovedFunctional(u0, p); }

double critical_level(double alpha, int dim) {
  const double ks = kappa(alpha).kappa_alpha * sobolev_constant(alpha, dim);
  return alpha / (2.0 * dim) * std::pow(ks, dim / alpha);
}

PathResult deform_path(const PathFunctional& F, const Eigen::VectorXd& endpoint, const MountainPassConfig& cfg) {
  if (cfg.path_nodes < 3) throw std::invalid_argument("path needs at least 3 nodes");
  const int n = cfg.path_nodes;
  std::vector<Eigen::VectorXd> path(n);
  std::vector<double> e(n);
  for (int i = 0; i < n; ++i) {
    path[i] = (static_cast<double>(i) / (n - 1)) * endpoint;
    e[i] = F.energy(path[i]);
  }
  if (!(e.back() < 0.0)) throw std::invalid_argument("path endpoint must have negative energy");
  auto argmax = [&] {
    const int top = static_cast<int>(std::max_element(e.begin(), e.end()) - e.begin());
    if (top == 0 || top == n - 1) throw SolverError(Failure::PathCollapse, "mountain pass: path max reached an endpoint");
    return top;
  };
  auto spacing = [&](int i) {
    return std::min(h_norm(path[i] - path[i - 1], F.metric), h_norm(path[i + 1] - path[i], F.metric));
  };

  PathResult res;
  // Phase 1: pull the max node downhill. Between respacings the path max never increases.
  double step = cfg.deform_step;
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    if (cfg.reparam_every > 0 && it > 0 && it % cfg.reparam_every == 0) {
      path = reparametrize(path, F.metric);
      for (int i = 0; i < n; ++i) e[i] = F.energy(path[i]);
      res.respaced_at.push_back(static_cast<int>(res.max_history.size()));
    }
    const int top = argmax();
    res.max_history.push_back(e[top]);
    const Eigen::VectorXd grad = F.gradient(path[top]);
    const Eigen::VectorXd dir = grad.cwiseQuotient(F.metric);
    const double gn2 = grad.dot(dir);
    res.grad_norm = std::sqrt(std::max(gn2, 0.0));
    if (res.grad_norm < cfg.grad_tol) {
      res.converged = true;
      break;
    }
    const auto& h = res.max_history;
    constexpr std::size_t window = 200;
    if (h.size() > window && h[h.size() - 1 - window] - h.back() < 1e-3 * std::abs(h.back())) break;
    // A move longer than the local node spacing can hop over the ridge.
    double s = std::min(step, 0.5 * spacing(top) / res.grad_norm);
    bool moved = false;
    for (int bt = 0; bt < 50; ++bt) {
      const Eigen::VectorXd trial = path[top] - s * dir;
      const double et = F.energy(trial);
      if (et <= e[top] - 1e-4 * s * gn2) {
        path[top] = trial;
        e[top] = et;
        moved = true;
        break;
      }
      s *= 0.5;
    }
    if (!moved) break;
    step = std::min(2.0 * s, cfg.deform_step * 8.0);
  }

  // Phase 2: climbing string. Interior nodes descend across the path, the max
  // node climbs along it; nodes are respaced on both sides of the climber.
  double climb_step = cfg.deform_step;
  double last_gn = std::numeric_limits<double>::infinity();
  double best_gn = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_top;
  double best_level = 0.0;
  for (; !res.converged && it < cfg.max_iters; ++it) {
    const int top = argmax();
    std::vector<Eigen::VectorXd> next = path;
    for (int i = 1; i < n - 1; ++i) {
      const Eigen::VectorXd grad = F.gradient(path[i]);
      const Eigen::VectorXd d = grad.cwiseQuotient(F.metric);
      Eigen::VectorXd tau = path[i + 1] - path[i - 1];
      tau /= h_norm(tau, F.metric);
      const double along = grad.dot(tau);
      Eigen::VectorXd move = i == top ? Eigen::VectorXd(d - 2.0 * along * tau) : Eigen::VectorXd(d - along * tau);
      if (i == top) {
        res.grad_norm = std::sqrt(std::max(grad.dot(d), 0.0));
        // The climber is unstable along the tangent when its step is too long.
        if (res.grad_norm > 1.2 * last_gn) climb_step *= 0.5;
        last_gn = res.grad_norm;
        if (res.grad_norm < best_gn) {
          best_gn = res.grad_norm;
          best_top = path[i];
          best_level = e[i];
        }
      }
      const double len = h_norm(move, F.metric);
      const double cap = i == top ? climb_step : cfg.deform_step;
      const double s = len > 0.0 ? std::min(cap, 0.5 * spacing(i) / len) : 0.0;
      next[i] = path[i] - s * move;
    }
    if (res.grad_norm < cfg.grad_tol) {
      res.converged = true;
      break;
    }
    path = std::move(next);
    std::vector<Eigen::VectorXd> left(path.begin(), path.begin() + top + 1);
    std::vector<Eigen::VectorXd> right(path.begin() + top, path.end());
    left = reparametrize(left, F.metric);
    right = reparametrize(right, F.metric);
    for (int i = 0; i <= top; ++i) path[i] = left[i];
    for (int i = top; i < n; ++i) path[i] = right[i - top];
    for (int i = 0; i < n; ++i) e[i] = F.energy(path[i]);
    const double level = e[argmax()];
    res.climb_history.push_back(level);
    // Sliding well below a resolved saddle means the climber lost the pass.
    if (best_top.size() > 0 && level < best_level - 0.05 * std::abs(best_level)) break;
  }
  res.iterations = it;
  const int top = argmax();
  res.top = path[top];
  res.level = e[top];
  // The climber can drift off a saddle it already resolved; return its best position.
  if (!res.converged && best_top.size() > 0) {
    res.top = best_top;
    res.level = best_level;
    res.grad_norm = best_gn;
  }
  return res;
}

Eigen::VectorXd find_endpoint(const PathFunctional& F, const Problem& p) {
  const auto& dom = p.basis()->domain();
  const Grid& grid = p.quad().grid();
  double min_len = dom.length[0];
  double min_h = dom.length[0] / (p.basis()->modes_per_axis()[0] + 1);
  if (p.dim() == 2) {
    min_len = std::min(min_len, dom.length[1]);
    min_h = std::max(min_h, dom.length[1] / (p.basis()->modes_per_axis()[1] + 1));
  }
  const std::array<double, 2> center{0.5 * dom.length[0], 0.5 * dom.length[1]};
  const double radius = 0.45 * min_len;

  Eigen::VectorXd best;
  double best_peak = std::numeric_limits<double>::infinity();
  for (double frac : {0.3, 0.2, 0.12, 0.08, 0.05}) {
    const double eps = frac * min_len;
    if (eps < 1.5 * min_h) continue;
    CutoffBubble cb{bubble(eps, p.alpha(), p.dim()), radius};
    Eigen::VectorXd nodal(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto x = grid.point(k);
      const double dx = x[0] - center[0];
      const double dy = p.dim() == 2 ? x[1] - center[1] : 0.0;
      nodal[static_cast<Eigen::Index>(k)] = cb.radial(std::hypot(dx, dy));
    }
    Eigen::VectorXd eta = p.quad().analyze(nodal);
    eta /= h_norm(eta, F.metric);
    double t = 1.0;
    while (F.energy(t * eta) >= 0.0) {
      t *= 2.0;
      if (t > 1e8) break;
    }
    if (t > 1e8) continue;
    double peak = 0.0;
    for (int i = 1; i < 64; ++i) peak = std::max(peak, F.energy(t * i / 64.0 * eta));
    if (peak < best_peak) {
      best_peak = peak;
      best = t * eta;
    }
  }
  if (best.size() == 0) throw SolverError(Failure::PathCollapse, "mountain pass: no ray reaches negative energy");
  return best;
}

MountainPassResult mountain_pass(const MovedFunctional& mf, MountainPassConfig cfg) {
  const Problem& p = mf.problem();
  MountainPassResult out;
  if (p.alpha() < 1.0) out.warnings.push_back("alpha < 1: outside the regime where a second solution is guaranteed");
  if (cfg.c_star == 0.0) cfg.c_star = critical_level(p.alpha(), p.dim());
  out.c_star = cfg.c_star;

  const PathFunctional F = functional_of(mf);
  const Eigen::VectorXd e = find_endpoint(F, p);
  PathResult path = deform_path(F, e, cfg);
  out.path_max = path.level;
  out.path_converged = path.converged;
  out.iterations = path.iterations;
  out.max_history = std::move(path.max_history);
  out.respaced_at = std::move(path.respaced_at);
  out.climb_history = std::move(path.climb_history);

  const SpectralFunction& u0 = mf.center().u;
  Solution sol = newton_solve(p, {p.basis(), u0.coeffs + path.top}, cfg.newton);
  sol.kind = SolutionKind::MountainPass;
  out.critical = {p.basis(), sol.u.coeffs - u0.coeffs};
  out.distance = h_norm(out.critical.coeffs, p.symbol());
  if (out.distance <= 10.0 * cfg.newton.tol) {
    std::ostringstream msg;
    msg << "mountain pass: refinement returned to the minimal solution (distance " << out.distance << ")";
    throw SolverError(Failure::PathCollapse, msg.str());
  }
  out.c_est = sol.energy - mf.center().energy;
  out.below_c_star = out.c_est < out.c_star;
  if (!out.below_c_star) out.warnings.push_back("critical level at or above c*: compactness not guaranteed");
  out.solution = std::move(sol);
  return out;
}

MountainPassResult superlinear_solve(const Problem& p, MountainPassConfig cfg) {
  if (!(p.q() > 1.0)) throw std::invalid_argument("superlinear solve needs q > 1");
  if (!(p.dim() > p.alpha() * (1.0 + 1.0 / p.q())))
    throw std::invalid_argument("superlinear solve needs N > alpha (1 + 1/q)");
  MountainPassResult out;
  if (cfg.c_star == 0.0) cfg.c_star = critical_level(p.alpha(), p.dim());
  out.c_star = cfg.c_star;

  const PathFunctional F = functional_of(p);
  const Eigen::VectorXd e = find_endpoint(F, p);
  PathResult path = deform_path(F, e, cfg);
  out.path_max = path.level;
  out.path_converged = path.converged;
  out.iterations = path.iterations;
  out.max_history = std::move(path.max_history);
  out.respaced_at = std::move(path.respaced_at);
  out.climb_history = std::move(path.climb_history);

  Solution sol = newton_solve(p, {p.basis(), path.top}, cfg.newton);
  sol.kind = SolutionKind::MountainPass;
  out.critical = sol.u;
  out.distance = h_norm(sol.u.coeffs, p.symbol());
  if (out.distance <= 10.0 * cfg.newton.tol)
    throw SolverError(Failure::PathCollapse, "mountain pass: refinement returned to the trivial solution");
  out.c_est = sol.energy;
  out.below_c_star = out.c_est < out.c_star;
  if (!out.below_c_star) out.warnings.push_back("critical level at or above c*: compactness not guaranteed");
  out.solution = std::move(sol);
  return out;
}

}  // namespace fraclap
