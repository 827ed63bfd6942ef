#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraclap/solution.hpp"

namespace fraclap {

struct Barriers {
  SpectralFunction sub;
  SpectralFunction super;
  double eps = 0.0;  // sub = eps phi_1
  double M = 0.0;    // super = M g, (-Delta)^{alpha/2} g = 1
};

/// Ordered sub/supersolution pair for 0 < q < 1. Throws SolverError
/// (BarrierInfeasible) when no admissible M exists.
Barriers make_barriers(const Problem& p);

struct MonotoneOptions {
  double tol = 1e-11;         // sup-norm increment, relative to linf
  int max_iters = 20000;
  double blowup = 1e6;        // linf beyond which the upward sequence is declared divergent
  double order_tol = 1e-2;    // accepted negative part of an increment, relative to its size
  double shift_cap = 1e6;
  bool downward = true;       // also iterate down from the supersolution
  bool polish = true;         // Newton refinement of the limit
  NewtonOptions newton{};
};

struct MonotoneReport {
  Solution solution;
  std::vector<double> sup_history;     // linf of every upward iterate
  double min_increment = 0.0;          // most negative nodal increment seen (relative)
  double shift = 0.0;                  // final shift c
  std::optional<double> downward_gap;  // sup |u_down - u_up| when a supersolution was given
};

/// u_{k+1} = ((-Delta)^{alpha/2} + c)^{-1} (f(u_k) + c u_k) from u_0 = sub.
/// The shift starts at 0 (f is nondecreasing) and is raised on ordering violations.
/// Refuses q > 1.
MonotoneReport monotone_iterate(const Problem& p, const SpectralFunction& sub,
                                const std::optional<SpectralFunction>& super, const MonotoneOptions& opts = {});

struct BranchPoint {
  double lambda = 0.0;
  bool ok = false;
  std::string failure;  // empty on success
  std::optional<Solution> solution;
};

struct Branch {
  std::vector<BranchPoint> points;  // lambda-ascending, successes and failures
  std::optional<std::pair<double, double>> lambda_star_bracket;
  std::array<int, 2> modes{0, 0};
  int oversample = 4;
  double tol_lambda = 0.0;

  std::vector<const Solution*> successes() const;
};

struct BranchOptions {
  double tol_lambda = 1e-3;  // relative bracket width
  MonotoneOptions monotone{};
};

/// Minimal solution at p.lambda(), warm-started from a smaller-lambda minimal solution
/// when given. Returns the failure reason instead of throwing.
std::pair<std::optional<Solution>, std::string> solve_minimal(const Problem& p, const Solution* warm,
                                                              const MonotoneOptions& opts = {});

Branch branch_sweep(const Problem& tmpl, const std::vector<double>& lambda_grid, const BranchOptions& opts = {});

}  // namespace fraclap
