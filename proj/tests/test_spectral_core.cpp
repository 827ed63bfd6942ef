#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fraclap/extension.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/sine_transform.hpp"
#include "fraclap/spectral_function.hpp"
#include "support.hpp"

using namespace fraclap;
using fraclap::test::kPi;
using fraclap::test::rel;

TEST_CASE("box eigenvalues") {
  const auto b = test::interval_basis(3);
  CHECK(b->size() == 3);
  CHECK(b->rho()[0] == doctest::Approx(1.0));
  CHECK(b->rho()[1] == doctest::Approx(4.0));
  CHECK(b->rho()[2] == doctest::Approx(9.0));

  const auto s = test::square_basis(2);
  const double p2 = kPi * kPi;
  REQUIRE(s->size() == 4);
  CHECK(s->rho()[0] == doctest::Approx(2 * p2));
  CHECK(s->rho()[1] == doctest::Approx(5 * p2));
  CHECK(s->rho()[2] == doctest::Approx(5 * p2));
  CHECK(s->rho()[3] == doctest::Approx(8 * p2));
  // degenerate pair ordered by wavenumber
  CHECK(s->mode(1).k == std::array<int, 2>{1, 2});
  CHECK(s->mode(2).k == std::array<int, 2>{2, 1});
}

TEST_CASE("more modes than grid nodes is rejected") {
  CHECK_THROWS_AS(build_basis(Domain::interval(kPi, 4), 5), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(Domain::interval(kPi, 4), 0), std::invalid_argument);
}

TEST_CASE("sorted eigenvalues match the closed form") {
  const auto b = build_basis(Domain::rectangle(1.0, 2.0, 12, 12), {12, 12});
  for (int j = 0; j < b->size(); ++j) {
    const auto k = b->mode(j).k;
    const double expect = std::pow(k[0] * kPi, 2) + std::pow(k[1] * kPi / 2.0, 2);
    CHECK(b->rho()[j] == doctest::Approx(expect).epsilon(1e-14));
    if (j > 0) CHECK(b->rho()[j] >= b->rho()[j - 1]);
  }
}

TEST_CASE("analyze sampled first mode") {
  const auto b = test::interval_basis(8, kPi, 8);
  const Grid g = Grid::of(b->domain());
  Eigen::VectorXd nodal(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) nodal[i] = std::sqrt(2.0 / kPi) * std::sin(g.point(i)[0]);
  const SpectralFunction u = analyze(nodal, b);
  CHECK(u.coeffs[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(u.coeffs.tail(7).cwiseAbs().maxCoeff() < 1e-13);

  CHECK(analyze(Eigen::VectorXd::Zero(g.size()), b).coeffs.norm() == 0.0);
  CHECK_THROWS(analyze(Eigen::VectorXd::Zero(g.size() + 1), b));
}

TEST_CASE("analyze and synthesize round trip") {
  for (const auto& b : {test::interval_basis(17), test::square_basis(9)}) {
    const Grid g = Grid::of(b->domain());
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    Eigen::VectorXd nodal(g.size());
    for (auto& v : nodal) v = n(rng);
    const SpectralFunction a = analyze(nodal, b);
    const SpectralFunction a2 = analyze(synthesize(a), b);
    CHECK((a2.coeffs - a.coeffs).norm() <= 1e-12 * a.coeffs.norm());
    // square grid: nodal space equals the mode space, so synthesis reproduces the data
    CHECK((synthesize(a) - nodal).norm() <= 1e-12 * nodal.norm());
  }
}

TEST_CASE("synthesis at points") {
  const auto b = test::interval_basis(4);
  CHECK(SpectralFunction::unit(b, 0).eval({kPi / 2, 0.0}) == doctest::Approx(std::sqrt(2.0 / kPi)));
  CHECK(std::abs(SpectralFunction::unit(b, 1).eval({kPi / 2, 0.0})) < 1e-15);
  CHECK(SpectralFunction::zero(b).eval({1.0, 0.0}) == 0.0);
  const Grid fine{1, {kPi, 1.0}, {101, 1}};
  CHECK(synthesize(SpectralFunction::zero(b), fine).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fast and direct sine transforms agree") {
  const auto b = build_basis(Domain::rectangle(1.0, 1.5, 16, 16), {11, 7});
  const Grid g = quadrature_grid(*b, 4);
  const SineTransform t(b, g);
  const SpectralFunction u = test::random_function(b, 11);
  const Eigen::VectorXd fast = t.synthesize(u.coeffs);
  const Eigen::VectorXd slow = reference::synthesize(*b, g, u.coeffs);
  CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-12 * slow.cwiseAbs().maxCoeff());
  CHECK((t.analyze(fast) - reference::analyze(*b, g, fast)).norm() < 1e-12 * u.coeffs.norm());
  Eigen::VectorXd w = fast.array().abs();
  const Eigen::MatrixXd gf = t.weighted_gram(w);
  const Eigen::MatrixXd gs = reference::weighted_gram(*b, g, w);
  CHECK((gf - gs).cwiseAbs().maxCoeff() < 1e-11 * gs.cwiseAbs().maxCoeff());
}

TEST_CASE("operator examples on (0, pi)") {
  const auto b = test::interval_basis(5);
  const SpectralFunction p1 = SpectralFunction::unit(b, 0);
  const SpectralFunction p2 = SpectralFunction::unit(b, 1);
  const SpectralFunction p3 = SpectralFunction::unit(b, 2);
  CHECK(apply_frac(p2, 1.0).coeffs[1] == doctest::Approx(2.0));
  for (double a : {0.2, 0.7, 1.5}) {
    CHECK(apply_frac(p1, a).coeffs[0] == doctest::Approx(1.0));
    CHECK(solve_shifted(p1, a, 0.0).coeffs[0] == doctest::Approx(1.0));
    CHECK(norm_hs(p1, a) == doctest::Approx(1.0));
  }
  CHECK(apply_frac(p3, 0.6).coeffs[2] == doctest::Approx(1.9331820449317627).epsilon(1e-14));
  CHECK(solve_shifted(p2, 1.0, 1.0).coeffs[1] == doctest::Approx(1.0 / 3.0));
  CHECK(norm_hs(2.0 * p2, 1.0) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK_THROWS_AS(apply_frac(p1, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(apply_frac(p1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_shifted(p1, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("first eigenpair") {
  CHECK(first_eigenpair(test::interval_basis(4), 0.3).first == doctest::Approx(1.0));
  CHECK(first_eigenpair(test::interval_basis(4, 1.0), 1.0).first == doctest::Approx(kPi));
  const auto [l1, phi] = first_eigenpair(test::square_basis(4), 0.5);
  CHECK(l1 == doctest::Approx(std::pow(2 * kPi * kPi, 0.25)));
  CHECK(synthesize(phi).minCoeff() > 0.0);
}

TEST_CASE("Parseval on the grid") {
  for (const auto& b : {test::interval_basis(24), test::square_basis(12)}) {
    const SpectralFunction u = test::random_function(b, 5);
    const Grid g = quadrature_grid(*b, 2);
    const Eigen::VectorXd v = synthesize(u, g);
    CHECK(rel(v.squaredNorm() * g.cell_volume(), u.coeffs.squaredNorm()) < 1e-10);
  }
}

TEST_CASE("semigroup, inverse and norm properties") {
  const auto b = test::square_basis(10);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SpectralFunction u = test::random_function(b, seed);
    const double a = 0.3 + 0.2 * seed, c = 1.6 - a;
    const auto lhs = apply_frac(apply_frac(u, a), c).coeffs;
    const auto rhs = apply_frac(u, a + c).coeffs;
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    const auto back = apply_frac(solve_shifted(u, a, 0.0), a).coeffs;
    CHECK((back - u.coeffs).norm() <= 1e-12 * u.coeffs.norm());

    const SpectralFunction v = test::random_function(b, seed + 100);
    CHECK(norm_hs(u + v, a) <= norm_hs(u, a) + norm_hs(v, a) + 1e-12);
    CHECK(norm_hs(-3.0 * u, a) == doctest::Approx(3.0 * norm_hs(u, a)));
  }
  // every rho >= 1 on (0, pi)
  const auto line = test::interval_basis(32);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SpectralFunction u = test::random_function(line, seed);
    double prev = 0.0;
    for (double a : {0.1, 0.5, 0.9, 1.3, 1.9}) {
      const double n = norm_hs(u, a);
      CHECK(n >= prev);
      prev = n;
    }
  }
}

TEST_CASE("fractional Sobolev inequality on random functions") {
  // The sharp whole-space constant bounds the box quotient from below.
  struct Case {
    double alpha;
    BasisPtr basis;
  };
  for (const Case& c : {Case{0.5, test::interval_basis(64)}, Case{1.0, test::square_basis(24)},
                        Case{0.8, test::square_basis(24)}}) {
    const int dim = c.basis->dim();
    const double crit = critical_exponent(c.alpha, dim);
    const double bound = kappa(c.alpha).kappa_alpha * sobolev_constant(c.alpha, dim);
    const Grid g = quadrature_grid(*c.basis, 4);
    double worst = 1e300;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const SpectralFunction u = test::random_function(c.basis, seed, 0.25 + 0.05 * (seed % 10));
      const Eigen::VectorXd v = synthesize(u, g);
      const double lp = std::pow(v.array().abs().pow(crit).sum() * g.cell_volume(), 2.0 / crit);
      worst = std::min(worst, std::pow(norm_hs(u, c.alpha), 2) / lp);
    }
    CAPTURE(c.alpha);
    CHECK(worst >= bound);
  }
}

TEST_CASE("transfer between bases") {
  const auto small = test::square_basis(6);
  const auto big = small->with_modes({12, 12});
  const SpectralFunction u = test::random_function(small, 9);
  const SpectralFunction up = transfer(u, big);
  CHECK(up.coeffs.norm() == doctest::Approx(u.coeffs.norm()));
  CHECK(up.eval({0.3, 0.7}) == doctest::Approx(u.eval({0.3, 0.7})));
  CHECK((transfer(up, small).coeffs - u.coeffs).norm() == 0.0);
}
