#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fraclap/solution.hpp"

namespace fraclap {

/// Energy translated by a minimal solution u0:
///   g(x,s) = f(u0+s) - f(u0),  G(x,s) = F(u0+s) - F(u0) - f(u0) s  for s >= 0, both 0 for s < 0,
///   I~(v) = 1/2 ||v||^2 - int G(x, v).
class MovedFunctional {
 public:
  MovedFunctional(Solution u0, Problem p);

  const Problem& problem() const { return p_; }
  const Solution& center() const { return u0_; }

  double g(double u0x, double s) const;
  double G(double u0x, double s) const;

  double energy(const Eigen::VectorXd& v) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& v) const;

 private:
  Solution u0_;
  Problem p_;
  Nonlinearity nl_;
  Eigen::VectorXd u0_nodal_;
};

MovedFunctional moved_functional(const Solution& u0, const Problem& p);

/// (alpha / 2N) (kappa_alpha S(alpha,N))^{N/alpha}
double critical_level(double alpha, int dim);

struct MountainPassConfig {
  double deform_step = 1.0;  // initial step along the H-gradient
  int path_nodes = 41;
  int max_iters = 20000;
  double c_star = 0.0;       // filled from critical_level() when 0
  int reparam_every = 50;
  double grad_tol = 1e-4;    // H-norm of the gradient at the max node; Newton finishes
  NewtonOptions newton{};
};

struct MountainPassResult {
  Solution solution;           // full solution (u0 + v for the moved functional)
  SpectralFunction critical;   // the critical point of the functional the path lives in
  double c_est = 0.0;          // critical level of the refined solution
  double path_max = 0.0;       // max node energy of the final path
  double c_star = 0.0;
  bool below_c_star = false;
  double distance = 0.0;       // ||critical||_{H^{alpha/2}}
  bool path_converged = false;
  int iterations = 0;
  std::vector<double> max_history;
  std::vector<int> respaced_at;
  std::vector<double> climb_history;
  std::vector<std::string> warnings;
};

/// Functional on coefficient vectors for the deformation engine.
struct PathFunctional {
  std::function<double(const Eigen::VectorXd&)> energy;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  Eigen::VectorXd metric;  // rho^{alpha/2}, defines the H-gradient
};

struct PathResult {
  Eigen::VectorXd top;  // max node of the final path
  double level = 0.0;
  double grad_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> max_history;    // descent phase, one entry per move
  std::vector<int> respaced_at;       // max_history indices where the path was respaced
  std::vector<double> climb_history;  // climbing phase
};

/// Discrete mountain pass on a piecewise-linear path from 0 to `endpoint`.
/// Descent phase: the max node is pulled along the negative H-gradient until the
/// path max stagnates. Climbing phase: interior nodes relax across the path and
/// the max node climbs along it, until its H-gradient norm drops below grad_tol.
/// Throws PathCollapse when the max sits at an endpoint.
PathResult deform_path(const PathFunctional& F, const Eigen::VectorXd& endpoint, const MountainPassConfig& cfg);

/// Ray search along concentrated cutoff-bubble profiles centered in the box;
/// returns the endpoint t*eta with F(t*eta) < 0 of the profile whose ray maximum is smallest.
Eigen::VectorXd find_endpoint(const PathFunctional& F, const Problem& p);

/// Second solution u0 + v above the minimal one, 0 < q < 1.
MountainPassResult mountain_pass(const MovedFunctional& mf, MountainPassConfig cfg = {});

/// Mountain-pass solution of I itself for 1 < q < 2*-1; requires N > alpha (1 + 1/q).
MountainPassResult superlinear_solve(const Problem& p, MountainPassConfig cfg = {});

}  // namespace fraclap
