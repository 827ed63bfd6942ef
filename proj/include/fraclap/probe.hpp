#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fraclap/solution.hpp"

namespace fraclap {

struct ProbeOptions {
  int n_inits = 16;
  std::uint64_t seed = 20240601;
  NewtonOptions newton{1e-10, 100};
  /// Re-solve every hit with doubled modes and require a stable linf.
  bool certify = true;
  double certify_rel = 0.1;
  double nontrivial = 1e-8;  // linf below this counts as the zero solution
};

struct ProbeHit {
  Solution solution;
  int init = 0;  // index of the initialization that produced it
  bool certified = false;
  std::optional<double> refined_linf;
};

struct ProbeReport {
  int attempts = 0;
  int failed = 0;       // Newton errors (divergence, singular, no convergence)
  int nonpositive = 0;  // converged to a sign-changing limit
  int trivial = 0;      // converged to zero
  /// Converged positive nontrivial solutions, certified or not.
  std::vector<ProbeHit> hits;

  int found() const;  // certified positive solutions
  /// For q = 1 a certified positive solution at lambda >= lambda_1 is impossible.
  bool contradicts_linear_bound(const Problem& p) const;
};

/// Newton from n_inits seeded random positive initializations plus three
/// multiples of phi_1; reports every converged positive solution.
ProbeReport nonexistence_probe(const Problem& p, const ProbeOptions& opts = {});

}  // namespace fraclap
