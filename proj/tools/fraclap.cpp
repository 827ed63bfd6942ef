#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "fraclap/cli.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<int> dim;
  std::optional<double> alpha, q, lambda, lambda_frac;
  std::vector<double> length;
  std::vector<int> modes;
  std::optional<int> oversample;
  std::optional<double> tol;
  std::optional<int> max_iters;
  std::optional<std::uint64_t> seed;
  std::optional<int> n_inits, samples;
  std::optional<double> lambda_min, lambda_max, lambda_factor, tol_lambda, branch_frac;
  std::optional<int> path_nodes, reparam_every;
  std::optional<double> deform_step, grad_tol;
  std::optional<std::string> norm;
  std::optional<double> radius;
  std::vector<double> eps;
  std::optional<std::string> output;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file; flags override its fields");
  sub->add_option("--dim", f.dim, "Space dimension N (1 or 2)");
  sub->add_option("--alpha", f.alpha, "Order alpha in (0, min(N,2))");
  sub->add_option("--q", f.q, "Exponent of the lambda term, 0 < q < 2*-1");
  sub->add_option("--lambda", f.lambda, "lambda >= 0");
  sub->add_option("--lambda-frac", f.lambda_frac, "lambda as a multiple of lambda_1");
  sub->add_option("--length", f.length, "Box side lengths (default pi for N=1, 1 x 1 for N=2)")->expected(1, 2);
  sub->add_option("--modes", f.modes, "Modes per axis (one value applies to both axes)")->expected(1, 2);
  sub->add_option("--oversample", f.oversample, "Quadrature oversampling factor (default 4)");
  sub->add_option("--tol", f.tol, "Newton residual tolerance (default 1e-10)");
  sub->add_option("--max-iters", f.max_iters, "Iteration cap (default 20000)");
  sub->add_option("--seed", f.seed, "Random seed");
  sub->add_option("--n-inits", f.n_inits, "Probe initializations (default 16)");
  sub->add_option("--samples", f.samples, "Random functions for verify-extension (default 20)");
  sub->add_option("--lambda-min", f.lambda_min, "Branch grid start (default 0.01)");
  sub->add_option("--lambda-max", f.lambda_max, "Branch grid end (default 100)");
  sub->add_option("--lambda-factor", f.lambda_factor, "Branch grid ratio (default 1.5)");
  sub->add_option("--tol-lambda", f.tol_lambda, "Relative bracket width (default 1e-3)");
  sub->add_option("--branch-frac", f.branch_frac, "second-solution lambda as a fraction of Lambda_lo (default 0.5)");
  sub->add_option("--path-nodes", f.path_nodes, "Mountain-pass path nodes (default 41)");
  sub->add_option("--reparam-every", f.reparam_every, "Respacing period of the path (default 50)");
  sub->add_option("--deform-step", f.deform_step, "Initial path deformation step (default 1)");
  sub->add_option("--grad-tol", f.grad_tol, "Path gradient tolerance before Newton (default 1e-4)");
  sub->add_option("--norm", f.norm, "scaling: l2 | critical | q (default l2)");
  sub->add_option("--radius", f.radius, "scaling: cutoff radius (default 1)");
  sub->add_option("--eps", f.eps, "scaling: eps values");
  sub->add_option("-o,--output", f.output, "Output directory (default .)");
}

fraclap::RunConfig build(const Flags& f, const std::string& command) {
  fraclap::RunConfig c = f.config.empty() ? fraclap::RunConfig{} : fraclap::load_config(f.config);
  c.command = fraclap::command_from_string(command);
  auto& p = c.problem;
  auto& n = c.numerics;
  if (c.command == fraclap::Command::Rayleigh && !f.q) p.q = 1.0;
  if (f.dim) p.dim = *f.dim;
  if (f.alpha) p.alpha = *f.alpha;
  if (f.q) p.q = *f.q;
  if (f.lambda) p.lambda = *f.lambda;
  if (f.lambda_frac) p.lambda_frac = *f.lambda_frac;
  if (!f.length.empty()) p.length = std::array<double, 2>{f.length[0], f.length.size() > 1 ? f.length[1] : f.length[0]};
  if (!f.modes.empty()) p.modes = {f.modes[0], f.modes.size() > 1 ? f.modes[1] : f.modes[0]};
  if (f.oversample) p.oversample = *f.oversample;
  if (f.tol) n.tol = *f.tol;
  if (f.max_iters) n.max_iters = *f.max_iters;
  if (f.seed) n.seed = *f.seed;
  if (f.n_inits) n.n_inits = *f.n_inits;
  if (f.samples) n.samples = *f.samples;
  if (f.lambda_min) n.lambda_min = *f.lambda_min;
  if (f.lambda_max) n.lambda_max = *f.lambda_max;
  if (f.lambda_factor) n.lambda_factor = *f.lambda_factor;
  if (f.tol_lambda) n.tol_lambda = *f.tol_lambda;
  if (f.branch_frac) n.branch_frac = *f.branch_frac;
  if (f.path_nodes) n.path_nodes = *f.path_nodes;
  if (f.reparam_every) n.reparam_every = *f.reparam_every;
  if (f.deform_step) n.deform_step = *f.deform_step;
  if (f.grad_tol) n.grad_tol = *f.grad_tol;
  if (f.norm) n.norm = *f.norm;
  if (f.radius) n.radius = *f.radius;
  if (!f.eps.empty()) n.eps = f.eps;
  if (f.output) c.output = *f.output;
  fraclap::validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("FRACLAP_THREADS")) {
    const int n = std::atoi(t);
    if (n > 0) omp_set_num_threads(n);
  }

  CLI::App app{"Spectral solvers for the fractional Brezis-Nirenberg problem with a concave-convex term"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<const char*, const char*>> commands{
      {"verify-constants", "Best trace constant, kappa_alpha and the bubble quotient"},
      {"verify-extension", "Isometry and Neumann-trace checks of the extension on random functions"},
      {"scaling", "Cutoff-bubble norm scaling exponents"},
      {"solve", "One positive solution (minimal, Rayleigh or mountain pass by q)"},
      {"branch", "Minimal-solution branch and Lambda bracket"},
      {"rayleigh", "Rayleigh quotient minimization, q = 1"},
      {"second-solution", "Mountain-pass solution above the minimal one, q < 1"},
      {"probe", "Newton from many positive initializations"},
  };
  std::string chosen;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_flags(sub, flags);
    sub->callback([&chosen, n = std::string(name)] { chosen = n; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : fraclap::kExitError;
  }

  fraclap::RunConfig cfg;
  try {
    cfg = build(flags, chosen);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return fraclap::kExitError;
  }
  return fraclap::run(cfg, std::cout, std::cerr);
}
