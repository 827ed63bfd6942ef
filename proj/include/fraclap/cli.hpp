#pragma once

#include <iosfwd>
#include <utility>

#include "fraclap/config.hpp"

namespace fraclap {

/// Exit statuses of run().
enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitNonexistence = 2 };

/// Executes one command, writing CSV artifacts under cfg.output and a short
/// report to `out`. Returns 0 on success, 2 when the solver reports
/// nonexistence (a probe that finds nothing for q = 1, lambda >= lambda_1 returns 0),
/// 1 on errors.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Exponent of int phi^p u_eps^p as eps -> 0 and whether a log(1/eps) factor is present.
std::pair<double, bool> scaling_exponent(double alpha, int dim, double power);

}  // namespace fraclap
