#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fraclap/problem.hpp"

namespace fraclap {

constexpr int kSchemaVersion = 1;

enum class Command { VerifyConstants, VerifyExtension, Scaling, Solve, Branch, Rayleigh, SecondSolution, Probe };

const char* to_string(Command c);
Command command_from_string(const std::string& s);

struct ProblemParams {
  int dim = 1;
  double alpha = 0.5;
  double q = 0.5;
  double lambda = 0.0;
  /// When set, lambda = lambda_frac * lambda_1.
  std::optional<double> lambda_frac;
  /// Box side lengths; defaults to pi (N=1) or the unit square (N=2).
  std::optional<std::array<double, 2>> length;
  std::array<int, 2> modes{32, 32};
  int oversample = 4;
};

struct Numerics {
  double tol = 1e-10;
  int max_iters = 20000;
  std::uint64_t seed = 20240601;
  int n_inits = 16;
  int samples = 20;  // random functions for verify-extension
  double lambda_min = 0.01;
  double lambda_max = 100.0;
  double lambda_factor = 1.5;
  double tol_lambda = 1e-3;
  double branch_frac = 0.5;  // second-solution lambda as a fraction of the bracket
  int path_nodes = 41;
  int reparam_every = 50;
  double deform_step = 1.0;
  double grad_tol = 1e-4;
  std::string norm = "l2";  // scaling: l2 | critical | q
  double radius = 1.0;
  std::vector<double> eps{1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4};
};

struct RunConfig {
  Command command = Command::VerifyConstants;
  ProblemParams problem;
  Numerics numerics;
  std::string output = ".";
};

/// Field-level diagnostics: `field` is a JSON pointer like /problem/alpha.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

nlohmann::json to_json(const RunConfig& c);
/// Strict: unknown keys and wrong types raise ConfigError naming the field.
RunConfig config_from_json(const nlohmann::json& j);
/// Parses text; syntax errors report line and column.
nlohmann::json parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Parameter windows: N in {1,2}, 0 < alpha < min(N,2), 0 < q < 2*-1, lambda >= 0.
void validate(const RunConfig& c);

std::array<double, 2> box_length(const ProblemParams& p);
/// Builds the problem; lambda_frac is resolved against lambda_1 of the built basis.
Problem make_problem(const ProblemParams& p);

}  // namespace fraclap
