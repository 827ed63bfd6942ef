#include "fraclap/probe.hpp"

#include <cmath>
#include <random>

namespace fraclap {

int ProbeReport::found() const {
  int n = 0;
  for (const auto& h : hits) n += h.certified ? 1 : 0;
  return n;
}

bool ProbeReport::contradicts_linear_bound(const Problem& p) const {
  return p.q() == 1.0 && p.lambda() >= p.lambda_1() && found() > 0;
}

namespace {

// Positive smooth field with a dominant first mode, scaled to the given max.
Eigen::VectorXd random_positive(const Problem& p, std::mt19937_64& rng, double height) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int k = std::min(p.size(), 12);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(p.size());
  a[0] = 1.0;
  for (int j = 1; j < k; ++j) a[j] = 0.4 * normal(rng) * p.lambda_1() / p.symbol()[j];
  Eigen::VectorXd u = p.nodal(a).cwiseMax(0.0);
  a = p.quad().analyze(u);
  return a * (height / p.nodal(a).maxCoeff());
}

}  // namespace

ProbeReport nonexistence_probe(const Problem& p, const ProbeOptions& opts) {
  // Balance of rho^{alpha/2} u and u^{2*-1} sets the natural amplitude.
  const Eigen::VectorXd phi = p.nodal(Eigen::VectorXd::Unit(p.size(), 0));
  const double scale = std::pow(p.lambda_1(), 1.0 / (p.top_power() - 1.0));

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> log_height(std::log(0.3), std::log(4.0));
  std::vector<Eigen::VectorXd> inits;
  for (int i = 0; i < opts.n_inits; ++i) inits.push_back(random_positive(p, rng, scale * std::exp(log_height(rng))));
  for (double t : {0.5, 1.0, 2.0})
    inits.push_back(Eigen::VectorXd::Unit(p.size(), 0) * (t * scale / phi.maxCoeff()));

  const int n = static_cast<int>(inits.size());
  std::vector<std::optional<Solution>> sols(n);
  std::vector<int> status(n, 0);  // 0 ok, 1 failed, 2 nonpositive
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      sols[i] = newton_solve(p, {p.basis(), inits[i]}, opts.newton);
    } catch (const SolverError& e) {
      status[i] = e.kind() == Failure::NonPositive ? 2 : 1;
    }
  }

  ProbeReport rep;
  rep.attempts = n;
  BasisPtr fine;
  if (opts.certify) {
    auto m = p.basis()->modes_per_axis();
    fine = p.basis()->with_modes({2 * m[0], p.dim() == 2 ? 2 * m[1] : m[1]});
  }
  for (int i = 0; i < n; ++i) {
    if (status[i] == 1) {
      ++rep.failed;
      continue;
    }
    if (status[i] == 2) {
      ++rep.nonpositive;
      continue;
    }
    if (sols[i]->linf < opts.nontrivial) {
      ++rep.trivial;
      continue;
    }
    ProbeHit hit;
    hit.solution = std::move(*sols[i]);
    hit.init = i;
    if (opts.certify) {
      try {
        const Problem pf = p.with_basis(fine);
        const Solution s = newton_solve(pf, transfer(hit.solution.u, fine), opts.newton);
        hit.refined_linf = s.linf;
        hit.certified = std::abs(s.linf - hit.solution.linf) <= opts.certify_rel * hit.solution.linf;
      } catch (const SolverError&) {
        hit.certified = false;
      }
    } else {
      hit.certified = true;
    }
    rep.hits.push_back(std::move(hit));
  }
  return rep;
}

}  // namespace fraclap
