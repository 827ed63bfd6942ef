#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fraclap/cli.hpp"
#include "fraclap/io.hpp"
#include "fraclap/sublinear.hpp"
#include "support.hpp"

using namespace fraclap;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("fraclap_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string config_error_field(const std::string& text) {
  try {
    config_from_json(parse_config_text(text));
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

RunConfig line_config(Command cmd, const fs::path& out) {
  RunConfig c;
  c.command = cmd;
  c.problem.dim = 1;
  c.problem.alpha = 0.5;
  c.problem.q = 0.5;
  c.problem.modes = {32, 32};
  c.output = out.string();
  return c;
}

}  // namespace

TEST_CASE("config round trip through JSON") {
  RunConfig c;
  c.command = Command::Branch;
  c.problem.dim = 2;
  c.problem.alpha = 1.25;
  c.problem.q = 0.7;
  c.problem.lambda_frac = 0.3;
  c.problem.modes = {10, 12};
  c.numerics.seed = 42;
  c.numerics.eps = {0.1, 0.05};
  c.output = "out";
  const RunConfig back = config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK(back.problem.lambda_frac == 0.3);
  CHECK(back.problem.modes == std::array<int, 2>{10, 12});
  CHECK(back.numerics.seed == 42);
  CHECK(back.command == Command::Branch);
  // defaults survive a minimal document
  CHECK(to_json(config_from_json(nlohmann::json::object())) == to_json(RunConfig{}));
}

TEST_CASE("strict config errors name the field") {
  CHECK(config_error_field(R"({"problem": {"alpha": 0.5, "beta": 1}})") == "/problem/beta");
  CHECK(config_error_field(R"({"problem": {"alpha": "half"}})") == "/problem/alpha");
  CHECK(config_error_field(R"({"numerics": {"seed": 1, "colour": 2}})") == "/numerics/colour");
  CHECK(config_error_field(R"({"command": "dance"})") == "/command");
  CHECK(config_error_field(R"({"schema_version": 7})") == "/schema_version");
  CHECK(config_error_field(R"({"problem": {"dim": 1, "alpha": 1.5}})") == "/problem/alpha");
  CHECK(config_error_field(R"({"problem": {"dim": 2, "alpha": 1.0, "q": 3.5}})") == "/problem/q");
  CHECK(config_error_field(R"({"problem": {"lambda": -1}})") == "/problem/lambda");
  CHECK(config_error_field(R"({"numerics": {"norm": "sup"}})") == "/numerics/norm");
}

TEST_CASE("syntax errors report line and column") {
  try {
    parse_config_text("{\n  \"problem\": {\n    \"alpha\": 0.5,,\n  }\n}");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
  }
}

TEST_CASE("snapshot round trip") {
  const Problem p(test::square_basis(6), 1.0, 0.5, 1.0);
  const auto [sol, why] = solve_minimal(p, nullptr);
  REQUIRE(sol);
  RunConfig c;
  std::stringstream ss;
  write_snapshot(ss, *sol, p, to_json(c));
  const std::string text = ss.str();
  CHECK(nlohmann::json::parse(text.substr(0, text.find('\n')))["schema_version"] == kSchemaVersion);
  const Snapshot snap = read_snapshot(ss);
  CHECK(snap.coeffs == sol->u.coeffs);
  CHECK(snap.wavenumbers.size() == static_cast<std::size_t>(p.size()));
  // placing into a larger basis keeps the function
  const auto big = p.basis()->with_modes({9, 9});
  const SpectralFunction f = snapshot_function(snap, big);
  CHECK(f.eval({0.3, 0.6}) == doctest::Approx(sol->u.eval({0.3, 0.6})).epsilon(1e-13));

  std::stringstream bad("# schema_version: 1\nnot a header\n");
  CHECK_THROWS_AS(read_snapshot(bad), std::runtime_error);
}

TEST_CASE("fmt is round-trip safe") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) CHECK(std::stod(fmt(v)) == v);
}

TEST_CASE("run: verify-constants") {
  const fs::path d = scratch("constants");
  RunConfig c = line_config(Command::VerifyConstants, d);
  c.problem.dim = 2;
  c.problem.alpha = 1.0;
  std::stringstream out, err;
  CHECK(run(c, out, err) == kExitOk);
  const std::string s = out.str();
  CHECK(s.find("S(1,2) = 1.772454") != std::string::npos);
  CHECK(s.find("kappa_1 = 1.000000") != std::string::npos);
  CHECK(s.find("c* = 0.785398") != std::string::npos);
  CHECK(fs::exists(d / "constants.csv"));
}

TEST_CASE("run: branch writes a bracket row and is deterministic") {
  const fs::path d1 = scratch("branch1"), d2 = scratch("branch2");
  RunConfig c = line_config(Command::Branch, d1);
  c.problem.modes = {16, 16};
  c.numerics.lambda_min = 0.1;
  c.numerics.lambda_max = 5.0;
  c.numerics.tol_lambda = 1e-2;
  std::stringstream out, err;
  REQUIRE(run(c, out, err) == kExitOk);
  c.output = d2.string();
  std::stringstream out2;
  REQUIRE(run(c, out2, err) == kExitOk);
  const std::string a = slurp(d1 / "branch.csv"), b = slurp(d2 / "branch.csv");
  CHECK(a.find("\nbracket,") != std::string::npos);
  // headers differ only in the output directory
  auto body = [](const std::string& s) { return s.substr(s.find("\nrow,")); };
  CHECK(body(a) == body(b));
  CHECK(out.str() == out2.str());
}

TEST_CASE("run: probe exit codes") {
  const fs::path d = scratch("probe");
  RunConfig c = line_config(Command::Probe, d);
  c.problem.q = 1.0;
  c.problem.alpha = 0.5;
  c.problem.modes = {24, 24};
  c.numerics.n_inits = 4;
  SUBCASE("linear problem above lambda_1: nothing found, success") {
    c.problem.lambda_frac = 1.1;
    std::stringstream out, err;
    CHECK(run(c, out, err) == kExitOk);
    CHECK(out.str().find("no positive solution found") != std::string::npos);
    CHECK(fs::exists(d / "probe.csv"));
  }
  SUBCASE("critical problem at lambda = 0 in one dimension") {
    c.problem.lambda = 0.0;
    std::stringstream out, err;
    const int code = run(c, out, err);
    CHECK(code == kExitNonexistence);
  }
}

TEST_CASE("run: errors exit with 1") {
  RunConfig c = line_config(Command::Solve, scratch("errors"));
  c.problem.alpha = 1.5;
  std::stringstream out, err;
  CHECK(run(c, out, err) == kExitError);
  CHECK(err.str().find("/problem/alpha") != std::string::npos);
}
