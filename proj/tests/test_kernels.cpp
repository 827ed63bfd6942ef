#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fraclap/extension.hpp"
#include "fraclap/kernels.hpp"
#include "support.hpp"

using namespace fraclap;
using fraclap::test::kPi;
using fraclap::test::rel;

namespace {

// Direct Gamma evaluation in extended precision.
double sobolev_oracle(double a, int dim) {
  const long double n = dim, al = a;
  auto g = [](long double v) { return std::tgamma(v); };
  const long double num = 2.0L * std::pow(3.14159265358979323846264338L, al / 2) * g((n + al) / 2) * g((2 - al) / 2) *
                          std::pow(g(n / 2), al / n);
  const long double den = g(al / 2) * g((n - al) / 2) * std::pow(g(n), al / 2);
  return static_cast<double>(num / den);
}

double radial_integral(const std::function<double(double)>& f, int dim) {
  boost::math::quadrature::exp_sinh<double> es;
  const double area = dim == 1 ? 2.0 : 2.0 * kPi;
  auto g = [&](double r) { return std::pow(r, dim - 1) * f(r); };
  return area * (boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, 15, 1e-14) +
                 es.integrate(g, 1.0, std::numeric_limits<double>::infinity(), 1e-14));
}

// (-Delta)^{a/2} exp(-x^2) through the Fourier symbol |xi|^a.
double gaussian_frac_fourier(double a, double x) {
  auto f = [&](double xi) { return std::pow(xi, a) * std::sqrt(kPi) * std::exp(-xi * xi / 4) * std::cos(xi * x); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 60.0, 20, 1e-14) / kPi;
}

}  // namespace

TEST_CASE("best trace constant") {
  CHECK(std::abs(sobolev_constant(1.0, 2) - std::sqrt(kPi)) < 1e-10);
  for (int dim : {1, 2})
    for (double a : {0.1, 0.25, 0.5, 0.75, 0.9, 1.2, 1.5, 1.9}) {
      if (a >= dim) continue;
      CAPTURE(a);
      CHECK(rel(sobolev_constant(a, dim), sobolev_oracle(a, dim)) < 1e-12);
    }
  CHECK(sobolev_constant(0.5, 1) == doctest::Approx(sobolev_oracle(0.5, 1)).epsilon(1e-13));
  CHECK_THROWS_AS(sobolev_constant(1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sobolev_constant(2.0, 2), std::invalid_argument);
}

TEST_CASE("best trace constant is continuous in alpha") {
  for (int dim : {1, 2}) {
    const double top = std::min<double>(dim, 2) - 0.01;
    double prev = sobolev_constant(0.01, dim);
    for (double a = 0.01 + 1e-3; a < top; a += 1e-3) {
      const double s = sobolev_constant(a, dim);
      REQUIRE(std::isfinite(s));
      REQUIRE(s > 0.0);
      CHECK(std::abs(s - prev) < 1e-2);
      prev = s;
    }
  }
}

TEST_CASE("bubble") {
  for (int dim : {1, 2}) {
    const double a = dim == 1 ? 0.5 : 1.2;
    const double beta = (dim - a) / 2;
    const Bubble one = bubble(1.0, a, dim);
    for (double eps : {0.1, 0.7, 3.0}) {
      const Bubble b = bubble(eps, a, dim);
      CHECK(b.radial(0.0) == doctest::Approx(std::pow(eps, -beta)));
      for (double r : {0.05, 0.3, 2.0, 9.0}) {
        CHECK(b.radial(r) == doctest::Approx(std::pow(eps, -beta) * one.radial(r / eps)).epsilon(1e-13));
        CHECK(b.radial(r) < b.radial(0.5 * r));
        CHECK(b.radial(r) > 0.0);
      }
      CHECK(b({0.3, dim == 2 ? 0.4 : 0.0}) == doctest::Approx(b.radial(dim == 2 ? 0.5 : 0.3)));
    }
    const double crit = critical_exponent(a, dim);
    auto norm = [&](double eps) {
      const Bubble b = bubble(eps, a, dim);
      return radial_integral([&](double r) { return std::pow(b.radial(r), crit); }, dim);
    };
    CHECK(rel(norm(0.05), norm(1.0)) < 1e-8);
    CHECK(rel(norm(20.0), norm(1.0)) < 1e-8);
  }
  const auto v = bubble(0.5, 0.5, 1).eval({{0.0, 0.0}, {1.0, 0.0}});
  CHECK(v.size() == 2);
  CHECK(v[0] > v[1]);
}

TEST_CASE("cutoff profile") {
  CHECK(cutoff_profile(0.0) == 1.0);
  CHECK(cutoff_profile(0.5) == 1.0);
  CHECK(cutoff_profile(1.0) == 0.0);
  CHECK(cutoff_profile(3.0) == 0.0);
  double prev = 1.0;
  for (double s = 0.5; s <= 1.0; s += 0.01) {
    CHECK(cutoff_profile(s) <= prev);
    prev = cutoff_profile(s);
  }
  // C^2 joins: the one-sided second differences differ by O(h)
  const double h = 1e-4;
  for (double s : {0.5, 1.0}) {
    const double d2l = (cutoff_profile(s - 2 * h) - 2 * cutoff_profile(s - h) + cutoff_profile(s)) / (h * h);
    const double d2r = (cutoff_profile(s) - 2 * cutoff_profile(s + h) + cutoff_profile(s + 2 * h)) / (h * h);
    CHECK(std::abs(d2l - d2r) < 1e3 * h);
  }
  const CutoffBubble cb{bubble(0.1, 0.5, 1), 1.0};
  CHECK(cb.radial(0.3) == cb.bubble.radial(0.3));
  CHECK(cb.radial(1.2) == 0.0);
}

TEST_CASE("Poisson kernel") {
  for (int dim : {1, 2})
    for (double a : {0.5, 1.0, 1.5}) {
      CAPTURE(a);
      for (double y : {0.1, 1.0, 7.0}) {
        const double mass = radial_integral([&](double r) { return poisson_kernel(a, dim, r, y); }, dim);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
        for (double x : {0.0, 0.4, 3.0})
          CHECK(poisson_kernel(a, dim, x, y) ==
                doctest::Approx(std::pow(y, -dim) * poisson_kernel(a, dim, x / y, 1.0)).epsilon(1e-13));
        CHECK(poisson_kernel(a, dim, 0.3, y) > 0.0);
      }
    }
  // alpha c kappa = d, the standard Riesz constant 2^a Gamma((1+a)/2) / (sqrt(pi) |Gamma(-a/2)|)
  for (double a : {0.3, 0.5, 0.9, 1.3}) {
    const double d = std::pow(2.0, a) * std::tgamma((1 + a) / 2) / (std::sqrt(kPi) * std::abs(std::tgamma(-a / 2)));
    CAPTURE(a);
    CHECK(rel(riesz_constant(a, 1), d) < 1e-8);
  }
}

TEST_CASE("Poisson extension") {
  // wide plateau stands in for u = 1
  auto plateau = [](double s) { return cutoff_profile(std::abs(s) / 1e4); };
  CHECK(poisson_extend(plateau, 1.0, 0.0, 0.01) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(poisson_extend(plateau, 0.5, 3.0, 0.01) == doctest::Approx(1.0).epsilon(5e-3));
  auto plateau2 = [](double s, double t) { return cutoff_profile(std::hypot(s, t) / 1e4); };
  CHECK(poisson_extend(plateau2, 1.0, {0.0, 0.0}, 0.01) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(poisson_extend(plateau, 1.0, 0.0, 0.0), std::invalid_argument);

  // w_eps(x, y) = eps^{(a-N)/2} w_1(x/eps, y/eps)
  const double a = 0.5;
  const Bubble b1 = bubble(1.0, a, 1);
  for (double eps : {0.25, 4.0}) {
    const Bubble be = bubble(eps, a, 1);
    for (auto [x, y] : {std::pair{0.0, 0.1}, std::pair{0.7, 0.5}, std::pair{2.0, 3.0}}) {
      const double we = poisson_extend([&](double s) { return be.radial(std::abs(s)); }, a, x, y);
      const double w1 = poisson_extend([&](double s) { return b1.radial(std::abs(s)); }, a, x / eps, y / eps);
      CHECK(rel(we, std::pow(eps, (a - 1) / 2) * w1) < 1e-6);
    }
  }
  const double a2 = 1.2;
  const Bubble c1 = bubble(1.0, a2, 2), c2 = bubble(0.5, a2, 2);
  const double we = poisson_extend([&](double s, double t) { return c2.radial(std::hypot(s, t)); }, a2, {0.2, 0.1}, 0.3);
  const double w1 = poisson_extend([&](double s, double t) { return c1.radial(std::hypot(s, t)); }, a2, {0.4, 0.2}, 0.6);
  CHECK(rel(we, std::pow(0.5, (a2 - 2) / 2) * w1) < 1e-6);
}

TEST_CASE("Riesz principal value") {
  CHECK(riesz_pv([](double) { return 0.0; }, 0.5, 0.3) == 0.0);

  // the bubble solves the critical equation with constant 2^a Gamma((1+a)/2) / Gamma((1-a)/2)
  for (double a : {0.5, 0.75}) {
    const Bubble b = bubble(1.0, a, 1);
    const double p = (1 + a) / (1 - a);
    const double c = std::pow(2.0, a) * std::tgamma((1 + a) / 2) / std::tgamma((1 - a) / 2);
    for (double x : {0.0, 0.6, 2.5}) {
      const double lhs = riesz_pv([&](double s) { return b.radial(std::abs(s)); }, a, x);
      CAPTURE(a);
      CAPTURE(x);
      CHECK(rel(lhs, c * std::pow(b.radial(std::abs(x)), p)) < 1e-6);
    }
  }

  auto u = [](double s) { return std::exp(-s * s); };
  auto v = [](double s) { return 1.0 / (1.0 + s * s * s * s); };
  for (double a : {0.4, 1.0, 1.6}) {
    for (double x : {0.0, 0.5, 1.7}) {
      const double ru = riesz_pv(u, a, x), rv = riesz_pv(v, a, x);
      const double rw = riesz_pv([&](double s) { return 2.0 * u(s) - 3.0 * v(s); }, a, x);
      CHECK(std::abs(rw - (2.0 * ru - 3.0 * rv)) < 1e-8 * (std::abs(ru) + std::abs(rv)));
      CAPTURE(a);
      CAPTURE(x);
      CHECK(rel(ru, gaussian_frac_fourier(a, x)) < 1e-6);
    }
  }
  CHECK_THROWS_AS(riesz_pv([](double s) { return std::abs(s); }, 0.5, 0.0), std::runtime_error);
}

TEST_CASE("linear fit") {
  const auto f = linear_fit({0, 1, 2, 3}, {1, 3, 5, 7});
  CHECK(f[0] == doctest::Approx(2.0));
  CHECK(f[1] == doctest::Approx(1.0));
  CHECK(f[2] == doctest::Approx(0.0));
  CHECK(f[3] == doctest::Approx(1.0));
  CHECK_THROWS(linear_fit({1.0}, {1.0}));
}

TEST_CASE("cutoff-bubble norm scaling") {
  const std::vector<double> eps{1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4};

  const auto l2 = cutoff_norm_scaling(0.5, 2, 1.0, eps, NormKind::L2Squared);
  CHECK(std::abs(l2.exponent - 0.5) < 0.05);
  CHECK(l2.rows.size() == eps.size());

  // N = 2 alpha: norm / eps^alpha is linear in log(1/eps)
  const auto lg = cutoff_norm_scaling(1.0, 2, 1.0, eps, NormKind::L2Squared);
  std::vector<double> x, y;
  for (const auto& r : lg.rows) {
    x.push_back(std::log(1.0 / r.eps));
    y.push_back(r.norm / r.eps);
  }
  CHECK(linear_fit(x, y)[3] > 0.99);
  CHECK(std::abs(lg.log_corrected_exponent - 1.0) < 0.05);

  // alpha < N < 2 alpha, critical power (N+a)/(N-a)
  const auto cr = cutoff_norm_scaling(0.75, 1, 1.0, eps, NormKind::PowerIntegral, 1.75 / 0.25);
  CHECK(std::abs(cr.exponent - 0.125) < 0.05);

  // q + 1 power of the superlinear estimate
  const auto sq = cutoff_norm_scaling(0.8, 2, 1.0, eps, NormKind::PowerIntegral, 3.0);
  CHECK(std::abs(sq.exponent - ((0.8 - 2.0) * 2.0 / 2.0 + 2.8 / 2.0)) < 0.05);

  std::ostringstream os;
  write_scaling_csv(os, l2);
  CHECK(os.str().rfind("eps,norm,fitted_exponent,stderr\n", 0) == 0);

  CHECK_THROWS_AS(cutoff_norm_scaling(0.5, 2, 1.0, {0.3, 0.1}, NormKind::L2Squared), std::invalid_argument);
  CHECK_THROWS_AS(cutoff_norm_scaling(0.5, 2, 1.0, {0.01}, NormKind::L2Squared), std::invalid_argument);
}

TEST_CASE("bubble Rayleigh quotient") {
  CHECK(rel(bubble_rayleigh(1.0, 2), std::sqrt(kPi)) < 1e-2);
  for (auto [a, dim] : {std::pair{0.5, 1}, std::pair{0.8, 2}}) {
    const double target = kappa(a).kappa_alpha * sobolev_constant(a, dim);
    CAPTURE(a);
    CHECK(rel(bubble_rayleigh(a, dim), target) < 1e-2);
  }
  CHECK(rel(bubble_rayleigh(0.8, 2, 1e-10, 2.0), bubble_rayleigh(0.8, 2, 1e-10, 1.0)) < 1e-10);
}
