#include "fraclap/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fraclap/spectral_basis.hpp"

namespace fraclap {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Command, const char*>, 8> kCommands{{
    {Command::VerifyConstants, "verify-constants"},
    {Command::VerifyExtension, "verify-extension"},
    {Command::Scaling, "scaling"},
    {Command::Solve, "solve"},
    {Command::Branch, "branch"},
    {Command::Rayleigh, "rayleigh"},
    {Command::SecondSolution, "second-solution"},
    {Command::Probe, "probe"},
}};

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known) {
  if (!obj.is_object()) throw ConfigError(where.empty() ? "/" : where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key())) throw ConfigError(where + "/" + it.key(), "unknown field");
}

template <class T>
void read(const json& obj, const std::string& where, const char* key, T& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "/" + key, std::string("wrong type (") + e.what() + ")");
  }
}

}  // namespace

const char* to_string(Command c) {
  for (const auto& [k, name] : kCommands)
    if (k == c) return name;
  return "unknown";
}

Command command_from_string(const std::string& s) {
  for (const auto& [k, name] : kCommands)
    if (s == name) return k;
  throw ConfigError("/command", "unknown command '" + s + "'");
}

json to_json(const RunConfig& c) {
  const auto& p = c.problem;
  const auto& n = c.numerics;
  json pj{{"dim", p.dim},           {"alpha", p.alpha}, {"q", p.q},
          {"lambda", p.lambda},     {"modes", p.modes}, {"oversample", p.oversample},
          {"length", box_length(p)}};
  if (p.lambda_frac) pj["lambda_frac"] = *p.lambda_frac;
  json nj{{"tol", n.tol},
          {"max_iters", n.max_iters},
          {"seed", n.seed},
          {"n_inits", n.n_inits},
          {"samples", n.samples},
          {"lambda_min", n.lambda_min},
          {"lambda_max", n.lambda_max},
          {"lambda_factor", n.lambda_factor},
          {"tol_lambda", n.tol_lambda},
          {"branch_frac", n.branch_frac},
          {"path_nodes", n.path_nodes},
          {"reparam_every", n.reparam_every},
          {"deform_step", n.deform_step},
          {"grad_tol", n.grad_tol},
          {"norm", n.norm},
          {"radius", n.radius},
          {"eps", n.eps}};
  return json{{"schema_version", kSchemaVersion},
              {"command", to_string(c.command)},
              {"problem", pj},
              {"numerics", nj},
              {"output", c.output}};
}

RunConfig config_from_json(const json& j) {
  reject_unknown(j, "", {"schema_version", "command", "problem", "numerics", "output"});
  RunConfig c;
  if (j.contains("schema_version")) {
    int v = 0;
    read(j, "", "schema_version", v);
    if (v != kSchemaVersion) throw ConfigError("/schema_version", "unsupported version " + std::to_string(v));
  }
  if (j.contains("command")) {
    std::string cmd;
    read(j, "", "command", cmd);
    c.command = command_from_string(cmd);
  }
  read(j, "", "output", c.output);
  if (j.contains("problem")) {
    const json& pj = j["problem"];
    reject_unknown(pj, "/problem", {"dim", "alpha", "q", "lambda", "lambda_frac", "length", "modes", "oversample"});
    auto& p = c.problem;
    read(pj, "/problem", "dim", p.dim);
    read(pj, "/problem", "alpha", p.alpha);
    read(pj, "/problem", "q", p.q);
    read(pj, "/problem", "lambda", p.lambda);
    if (pj.contains("lambda_frac")) {
      double f = 0.0;
      read(pj, "/problem", "lambda_frac", f);
      p.lambda_frac = f;
    }
    if (pj.contains("length")) {
      std::array<double, 2> l{};
      read(pj, "/problem", "length", l);
      p.length = l;
    }
    read(pj, "/problem", "modes", p.modes);
    read(pj, "/problem", "oversample", p.oversample);
  }
  if (j.contains("numerics")) {
    const json& nj = j["numerics"];
    reject_unknown(nj, "/numerics",
                   {"tol", "max_iters", "seed", "n_inits", "samples", "lambda_min", "lambda_max", "lambda_factor",
                    "tol_lambda", "branch_frac", "path_nodes", "reparam_every", "deform_step", "grad_tol", "norm",
                    "radius", "eps"});
    auto& n = c.numerics;
    const std::string w = "/numerics";
    read(nj, w, "tol", n.tol);
    read(nj, w, "max_iters", n.max_iters);
    read(nj, w, "seed", n.seed);
    read(nj, w, "n_inits", n.n_inits);
    read(nj, w, "samples", n.samples);
    read(nj, w, "lambda_min", n.lambda_min);
    read(nj, w, "lambda_max", n.lambda_max);
    read(nj, w, "lambda_factor", n.lambda_factor);
    read(nj, w, "tol_lambda", n.tol_lambda);
    read(nj, w, "branch_frac", n.branch_frac);
    read(nj, w, "path_nodes", n.path_nodes);
    read(nj, w, "reparam_every", n.reparam_every);
    read(nj, w, "deform_step", n.deform_step);
    read(nj, w, "grad_tol", n.grad_tol);
    read(nj, w, "norm", n.norm);
    read(nj, w, "radius", n.radius);
    read(nj, w, "eps", n.eps);
  }
  validate(c);
  return c;
}

json parse_config_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << "line " << line << ", column " << col << ": " << e.what();
    throw ConfigError("", msg.str());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(parse_config_text(ss.str()));
}

void validate(const RunConfig& c) {
  const auto& p = c.problem;
  if (p.dim != 1 && p.dim != 2) throw ConfigError("/problem/dim", "must be 1 or 2");
  if (!(p.alpha > 0.0 && p.alpha < 2.0)) throw ConfigError("/problem/alpha", "must lie in (0,2)");
  if (!(p.dim > p.alpha)) throw ConfigError("/problem/alpha", "must be below the dimension N");
  const double top = (p.dim + p.alpha) / (p.dim - p.alpha);
  if (!(p.q > 0.0 && p.q < top)) {
    std::ostringstream msg;
    msg << "must lie in (0, " << top << ")";
    throw ConfigError("/problem/q", msg.str());
  }
  if (!(p.lambda >= 0.0)) throw ConfigError("/problem/lambda", "must be nonnegative");
  if (p.lambda_frac && !(*p.lambda_frac >= 0.0)) throw ConfigError("/problem/lambda_frac", "must be nonnegative");
  if (p.length && !((*p.length)[0] > 0.0 && (p.dim == 1 || (*p.length)[1] > 0.0)))
    throw ConfigError("/problem/length", "must be positive");
  if (p.modes[0] < 1 || (p.dim == 2 && p.modes[1] < 1)) throw ConfigError("/problem/modes", "must be positive");
  if (p.oversample < 1) throw ConfigError("/problem/oversample", "must be >= 1");
  const auto& n = c.numerics;
  if (!(n.tol > 0.0)) throw ConfigError("/numerics/tol", "must be positive");
  if (n.max_iters < 1) throw ConfigError("/numerics/max_iters", "must be positive");
  if (n.n_inits < 0) throw ConfigError("/numerics/n_inits", "must be nonnegative");
  if (!(n.lambda_min > 0.0 && n.lambda_max > n.lambda_min)) throw ConfigError("/numerics/lambda_max", "must exceed lambda_min > 0");
  if (!(n.lambda_factor > 1.0)) throw ConfigError("/numerics/lambda_factor", "must exceed 1");
  if (!(n.tol_lambda > 0.0)) throw ConfigError("/numerics/tol_lambda", "must be positive");
  if (n.path_nodes < 3) throw ConfigError("/numerics/path_nodes", "must be at least 3");
  if (n.norm != "l2" && n.norm != "critical" && n.norm != "q") throw ConfigError("/numerics/norm", "must be l2, critical or q");
  if (n.samples < 1) throw ConfigError("/numerics/samples", "must be positive");
  if (n.reparam_every < 1) throw ConfigError("/numerics/reparam_every", "must be positive");
  if (!(n.branch_frac > 0.0)) throw ConfigError("/numerics/branch_frac", "must be positive");
  if (!(n.deform_step > 0.0)) throw ConfigError("/numerics/deform_step", "must be positive");
  if (!(n.grad_tol > 0.0)) throw ConfigError("/numerics/grad_tol", "must be positive");
  if (!(n.radius > 0.0)) throw ConfigError("/numerics/radius", "must be positive");
  if (n.eps.size() < 2) throw ConfigError("/numerics/eps", "needs at least two values");
  for (double e : n.eps)
    if (!(e > 0.0)) throw ConfigError("/numerics/eps", "values must be positive");
}

std::array<double, 2> box_length(const ProblemParams& p) {
  if (p.length) return p.dim == 1 ? std::array<double, 2>{(*p.length)[0], 1.0} : *p.length;
  return p.dim == 1 ? std::array<double, 2>{M_PI, 1.0} : std::array<double, 2>{1.0, 1.0};
}

Problem make_problem(const ProblemParams& p) {
  const auto len = box_length(p);
  const Domain dom = p.dim == 1 ? Domain::interval(len[0], p.modes[0])
                                : Domain::rectangle(len[0], len[1], p.modes[0], p.modes[1]);
  const BasisPtr basis = build_basis(dom, p.dim == 1 ? std::array<int, 2>{p.modes[0], 1} : p.modes);
  Problem prob(basis, p.alpha, p.q, p.lambda, p.oversample);
  if (p.lambda_frac) prob = prob.with_lambda(*p.lambda_frac * prob.lambda_1());
  return prob;
}

}  // namespace fraclap
