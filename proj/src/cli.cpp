#include "fraclap/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>

#include "fraclap/extension.hpp"
#include "fraclap/io.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/mountain_pass.hpp"
#include "fraclap/probe.hpp"
#include "fraclap/rayleigh.hpp"
#include "fraclap/sublinear.hpp"

namespace fraclap {

namespace fs = std::filesystem;
using nlohmann::json;

std::pair<double, bool> scaling_exponent(double alpha, int dim, double power) {
  const double n = dim;
  const double tail = power * (n - alpha);  // decay order of u_eps^p at infinity
  if (std::abs(tail - n) < 1e-12) return {n - 0.5 * tail, true};
  if (tail > n) return {n - 0.5 * tail, false};
  return {0.5 * tail, false};
}

namespace {

std::ofstream open_artifact(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.output);
  std::ofstream os(fs::path(cfg.output) / name);
  if (!os) throw std::runtime_error("cannot write " + (fs::path(cfg.output) / name).string());
  return os;
}

void print_solution(std::ostream& out, const char* label, const Solution& s) {
  out << label << ": lambda=" << fmt(s.lambda) << " kind=" << to_string(s.kind) << " linf=" << fmt(s.linf)
      << " energy=" << fmt(s.energy) << " residual=" << fmt(s.residual)
      << " eigen_identity_gap=" << fmt(s.eigen_identity_gap) << "\n";
}

void write_snapshot_file(const RunConfig& cfg, const std::string& name, const Solution& s, const Problem& p) {
  auto os = open_artifact(cfg, name);
  write_snapshot(os, s, p, to_json(cfg));
}

std::vector<double> lambda_grid(const Numerics& n) {
  std::vector<double> g;
  for (double l = n.lambda_min; l <= n.lambda_max * (1.0 + 1e-12); l *= n.lambda_factor) g.push_back(l);
  return g;
}

MonotoneOptions monotone_options(const Numerics& n) {
  MonotoneOptions o;
  o.max_iters = n.max_iters;
  o.newton.tol = n.tol;
  return o;
}

MountainPassConfig pass_config(const Numerics& n) {
  MountainPassConfig c;
  c.path_nodes = n.path_nodes;
  c.reparam_every = n.reparam_every;
  c.deform_step = n.deform_step;
  c.grad_tol = n.grad_tol;
  c.max_iters = n.max_iters;
  c.newton.tol = n.tol;
  return c;
}

int verify_constants(const RunConfig& cfg, std::ostream& out) {
  const auto& p = cfg.problem;
  const Constants c = kappa(p.alpha, p.dim);
  const double ks = c.kappa_alpha * c.s_alpha_N;
  const double br = bubble_rayleigh(p.alpha, p.dim);
  const double cs = critical_level(p.alpha, p.dim);
  const std::string a = fmt(p.alpha);
  out << std::fixed << std::setprecision(6);
  out << "S(" << a << "," << p.dim << ") = " << c.s_alpha_N << "\n";
  out << "kappa_" << a << " = " << c.kappa_alpha << "\n";
  out << "kappa S = " << ks << "\n";
  out << "bubble Rayleigh quotient = " << br << " (relative gap " << std::scientific << std::setprecision(2)
      << std::abs(br - ks) / ks << ")\n";
  out << std::fixed << std::setprecision(6) << "c* = " << cs << "\n";
  out << std::defaultfloat;
  auto os = open_artifact(cfg, "constants.csv");
  write_table(os, to_json(cfg), {"alpha", "dim", "S", "kappa", "kappa_S", "bubble_rayleigh", "c_star"},
              {{fmt(p.alpha), std::to_string(p.dim), fmt(c.s_alpha_N), fmt(c.kappa_alpha), fmt(ks), fmt(br), fmt(cs)}});
  return kExitOk;
}

int verify_extension(const RunConfig& cfg, std::ostream& out) {
  const Problem prob = make_problem(cfg.problem);
  const double alpha = cfg.problem.alpha;
  std::mt19937_64 rng(cfg.numerics.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<std::string>> rows;
  double worst_iso = 0.0;
  double worst_trace = 0.0;
  for (int k = 0; k < cfg.numerics.samples; ++k) {
    SpectralFunction u = SpectralFunction::zero(prob.basis());
    for (Eigen::Index j = 0; j < u.coeffs.size(); ++j) u.coeffs[j] = normal(rng);
    const ExtensionField w = extend(u, alpha);
    const double hs = std::pow(norm_hs(u, alpha), 2);
    const double iso = std::abs(extension_energy(w) - hs) / hs;
    const SpectralFunction tr = neumann_trace(w);
    const SpectralFunction fr = apply_frac(u, alpha);
    double trace = 0.0;
    for (Eigen::Index j = 0; j < u.coeffs.size(); ++j)
      trace = std::max(trace, std::abs(tr.coeffs[j] - fr.coeffs[j]) / std::abs(fr.coeffs[j]));
    worst_iso = std::max(worst_iso, iso);
    worst_trace = std::max(worst_trace, trace);
    rows.push_back({std::to_string(k), fmt(hs), fmt(iso), fmt(trace)});
  }
  auto os = open_artifact(cfg, "extension.csv");
  write_table(os, to_json(cfg), {"sample", "hs_norm_sq", "isometry_defect", "trace_defect"}, rows);
  out << "kappa_" << alpha << " = " << fmt(kappa(alpha).kappa_alpha) << "\n";
  out << "max isometry defect " << fmt(worst_iso) << ", max Neumann-trace defect " << fmt(worst_trace) << "\n";
  return worst_iso < 1e-6 && worst_trace < 1e-6 ? kExitOk : kExitError;
}

int scaling(const RunConfig& cfg, std::ostream& out) {
  const auto& p = cfg.problem;
  const auto& n = cfg.numerics;
  double power = 2.0;
  if (n.norm == "critical") power = (p.dim + p.alpha) / (p.dim - p.alpha);
  if (n.norm == "q") power = p.q + 1.0;
  const ScalingReport rep = cutoff_norm_scaling(p.alpha, p.dim, n.radius, n.eps,
                                                n.norm == "l2" ? NormKind::L2Squared : NormKind::PowerIntegral, power);
  const auto [expected, has_log] = scaling_exponent(p.alpha, p.dim, power);
  const double fitted = has_log ? rep.log_corrected_exponent : rep.exponent;
  auto os = open_artifact(cfg, "scaling.csv");
  write_artifact_header(os, to_json(cfg));
  write_scaling_csv(os, rep);
  out << "norm " << n.norm << " power " << fmt(power) << ": fitted exponent " << fmt(fitted) << " (expected "
      << fmt(expected) << (has_log ? " with log(1/eps) factor" : "") << ", stderr " << fmt(rep.stderr_) << ")\n";
  return kExitOk;
}

int solve(const RunConfig& cfg, std::ostream& out) {
  const Problem p = make_problem(cfg.problem);
  if (p.q() < 1.0) {
    if (p.lambda() == 0.0) {
      out << "no minimal positive solution at lambda = 0: the minimal solution is u = 0\n";
      return kExitNonexistence;
    }
    auto [sol, why] = solve_minimal(p, nullptr, monotone_options(cfg.numerics));
    if (!sol) {
      out << "no minimal solution found: " << why << "\n";
      return kExitNonexistence;
    }
    print_solution(out, "minimal", *sol);
    write_snapshot_file(cfg, "solution.csv", *sol, p);
    return kExitOk;
  }
  if (p.q() == 1.0) {
    if (!(p.lambda() < p.lambda_1()) || p.dim() < 2.0 * p.alpha()) {
      out << "no positive solution: q = 1 requires lambda < lambda_1 = " << fmt(p.lambda_1()) << " and N >= 2 alpha\n";
      return kExitNonexistence;
    }
    RayleighOptions o;
    o.newton.tol = cfg.numerics.tol;
    const RayleighResult r = rayleigh_minimize(p, o);
    out << "S_lambda = " << fmt(r.s_lambda) << "\n";
    print_solution(out, "rayleigh", r.minimizer);
    write_snapshot_file(cfg, "solution.csv", r.minimizer, p);
    return kExitOk;
  }
  const MountainPassResult r = superlinear_solve(p, pass_config(cfg.numerics));
  print_solution(out, "mountain_pass", r.solution);
  out << "c_est = " << fmt(r.c_est) << " (c* = " << fmt(r.c_star) << ")\n";
  write_snapshot_file(cfg, "solution.csv", r.solution, p);
  return kExitOk;
}

int branch(const RunConfig& cfg, std::ostream& out) {
  const Problem p = make_problem(cfg.problem);
  BranchOptions o;
  o.tol_lambda = cfg.numerics.tol_lambda;
  o.monotone = monotone_options(cfg.numerics);
  const Branch br = branch_sweep(p, lambda_grid(cfg.numerics), o);
  auto os = open_artifact(cfg, "branch.csv");
  write_branch_csv(os, br, to_json(cfg));
  out << br.successes().size() << " converged points of " << br.points.size() << "\n";
  if (br.lambda_star_bracket) {
    out << "Lambda bracket: [" << fmt(br.lambda_star_bracket->first) << ", " << fmt(br.lambda_star_bracket->second)
        << "]\n";
  } else {
    out << "no bracket: the grid did not straddle a failure\n";
  }
  return kExitOk;
}

int rayleigh(const RunConfig& cfg, std::ostream& out) {
  const Problem p = make_problem(cfg.problem);
  RayleighOptions o;
  o.newton.tol = cfg.numerics.tol;
  o.max_iters = cfg.numerics.max_iters;
  const RayleighResult r = rayleigh_minimize(p, o);
  const double bound = kappa(p.alpha()).kappa_alpha * sobolev_constant(p.alpha(), p.dim());
  out << "S_lambda = " << fmt(r.s_lambda) << " (kappa S = " << fmt(bound) << ")" << (r.stalled ? " [stalled]" : "")
      << "\n";
  print_solution(out, "rayleigh", r.minimizer);
  auto os = open_artifact(cfg, "rayleigh.csv");
  write_table(os, to_json(cfg), {"lambda", "s_lambda", "kappa_S", "iterations", "residual", "linf"},
              {{fmt(p.lambda()), fmt(r.s_lambda), fmt(bound), std::to_string(r.iterations), fmt(r.minimizer.residual),
                fmt(r.minimizer.linf)}});
  write_snapshot_file(cfg, "rayleigh_solution.csv", r.minimizer, p);
  return kExitOk;
}

int second_solution(const RunConfig& cfg, std::ostream& out) {
  Problem p = make_problem(cfg.problem);
  if (!(p.q() < 1.0)) throw ConfigError("/problem/q", "second-solution needs q < 1");
  std::optional<Solution> warm;
  if (p.lambda() == 0.0) {
    BranchOptions o;
    o.tol_lambda = cfg.numerics.tol_lambda;
    o.monotone = monotone_options(cfg.numerics);
    const Branch br = branch_sweep(p, lambda_grid(cfg.numerics), o);
    if (!br.lambda_star_bracket) {
      out << "no Lambda bracket found; give --lambda explicitly\n";
      return kExitError;
    }
    p = p.with_lambda(cfg.numerics.branch_frac * br.lambda_star_bracket->first);
    out << "lambda = " << fmt(p.lambda()) << " (" << cfg.numerics.branch_frac << " of Lambda_lo "
        << fmt(br.lambda_star_bracket->first) << ")\n";
  }
  auto [u0, why] = solve_minimal(p, nullptr, monotone_options(cfg.numerics));
  if (!u0) {
    out << "no minimal solution at lambda = " << fmt(p.lambda()) << ": " << why << "\n";
    return kExitNonexistence;
  }
  print_solution(out, "minimal", *u0);
  const MountainPassResult r = mountain_pass(moved_functional(*u0, p), pass_config(cfg.numerics));
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  print_solution(out, "second", r.solution);
  out << "c_est = " << fmt(r.c_est) << " (c* = " << fmt(r.c_star) << "), distance " << fmt(r.distance) << "\n";
  auto os = open_artifact(cfg, "second_solution.csv");
  write_table(os, to_json(cfg),
              {"lambda", "c_est", "c_star", "below_c_star", "distance", "residual", "linf_minimal", "linf_second"},
              {{fmt(p.lambda()), fmt(r.c_est), fmt(r.c_star), r.below_c_star ? "1" : "0", fmt(r.distance),
                fmt(r.solution.residual), fmt(u0->linf), fmt(r.solution.linf)}});
  write_snapshot_file(cfg, "minimal_solution.csv", *u0, p);
  write_snapshot_file(cfg, "second_solution_snapshot.csv", r.solution, p);
  return kExitOk;
}

int probe(const RunConfig& cfg, std::ostream& out) {
  const Problem p = make_problem(cfg.problem);
  ProbeOptions o;
  o.n_inits = cfg.numerics.n_inits;
  o.seed = cfg.numerics.seed;
  o.newton.tol = cfg.numerics.tol;
  const ProbeReport rep = nonexistence_probe(p, o);
  std::vector<std::vector<std::string>> rows;
  for (const auto& h : rep.hits)
    rows.push_back({std::to_string(h.init), fmt(h.solution.linf), fmt(h.solution.residual),
                    fmt(h.solution.eigen_identity_gap), h.refined_linf ? fmt(*h.refined_linf) : "",
                    h.certified ? "1" : "0"});
  auto os = open_artifact(cfg, "probe.csv");
  write_table(os, to_json(cfg), {"init", "linf", "residual", "eigen_identity_gap", "refined_linf", "certified"}, rows);
  out << "lambda = " << fmt(p.lambda()) << " (lambda_1 = " << fmt(p.lambda_1()) << "), " << rep.attempts
      << " inits: " << rep.failed << " failed, " << rep.nonpositive << " nonpositive, " << rep.trivial << " trivial, "
      << rep.hits.size() - static_cast<std::size_t>(rep.found()) << " unresolved\n";
  if (rep.found() == 0) {
    out << "no positive solution found\n";
    const bool expected = p.q() == 1.0 && p.lambda() >= p.lambda_1();
    return expected ? kExitOk : kExitNonexistence;
  }
  out << rep.found() << " positive solution(s) found\n";
  if (rep.contradicts_linear_bound(p)) {
    out << "FAILURE: positive solution with q = 1 and lambda >= lambda_1\n";
    return kExitError;
  }
  return kExitOk;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    switch (cfg.command) {
      case Command::VerifyConstants: return verify_constants(cfg, out);
      case Command::VerifyExtension: return verify_extension(cfg, out);
      case Command::Scaling: return scaling(cfg, out);
      case Command::Solve: return solve(cfg, out);
      case Command::Branch: return branch(cfg, out);
      case Command::Rayleigh: return rayleigh(cfg, out);
      case Command::SecondSolution: return second_solution(cfg, out);
      case Command::Probe: return probe(cfg, out);
    }
  } catch (const SolverError& e) {
    err << "solver error (" << to_string(e.kind()) << "): " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace fraclap
