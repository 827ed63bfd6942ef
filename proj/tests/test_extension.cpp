#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "fraclap/extension.hpp"
#include "support.hpp"

using namespace fraclap;
using fraclap::test::kPi;
using fraclap::test::rel;

namespace {

const std::vector<double> kAlphas{0.3, 0.5, 0.9, 1.0, 1.3, 1.7};

// 2^{1-a} Gamma(1-a/2) / Gamma(a/2)
double closed_form_energy(double a) {
  return std::pow(2.0, 1.0 - a) * boost::math::tgamma(1.0 - a / 2.0) / boost::math::tgamma(a / 2.0);
}

}  // namespace

TEST_CASE("profile at alpha = 1 is exp(-s)") {
  const ThetaProfile p = theta_profile(1.0);
  for (double s : {0.0, 0.1, 1.0, 3.0, 10.0}) CHECK(p(s) == doctest::Approx(std::exp(-s)).epsilon(1e-13));
  CHECK(p(1.0) == doctest::Approx(0.36787944117144233));
  CHECK(p.energy == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("profile boundary value and decay") {
  for (double a : kAlphas) {
    const ThetaProfile p = theta_profile(a);
    CAPTURE(a);
    CHECK(p(0.0) == 1.0);
    CHECK(1.0 - p(1e-12) < 1e-2);
    double prev = 1.0;
    for (double s = 0.05; s < p.s_max; s *= 1.3) {
      CHECK(p(s) < prev);
      CHECK(p(s) > 0.0);
      prev = p(s);
    }
    // envelope c s^{(a-1)/2} e^{-s}
    double lo = 1e300, hi = -1e300;
    for (double s = 5.0; s <= p.s_max; s += 0.5) {
      const double v = std::log(p(s)) + s;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi - lo <= std::abs(a - 1.0) / 2.0 * std::log(p.s_max / 5.0) + 1e-6);
    CHECK(std::isfinite(p.energy));
    CHECK(p.energy > 0.0);
  }
}

TEST_CASE("Bessel form and ODE shooting agree") {
  const std::vector<double> pts{0.1, 0.5, 1.0, 2.0, 5.0};
  for (double a : kAlphas) {
    const ThetaProfile p = theta_profile(a);
    const OdeProfile ode = theta_profile_ode(a, pts);
    CAPTURE(a);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(std::abs(ode.theta[i] - p(pts[i])) < 1e-8);
      CHECK(std::abs(ode.dtheta[i] - p.derivative(pts[i])) < 1e-7);
    }
    // the Neumann limit is read off the singular Frobenius branch
    CHECK(rel(-a * ode.singular_coeff, p.neumann_limit) < 1e-7);
  }
  CHECK(std::abs(theta_profile_ode(0.5, {1.0}).theta[0] - theta_profile(0.5)(1.0)) < 1e-8);
}

TEST_CASE("profile cutoff must make the tail negligible") {
  CHECK_THROWS_AS(theta_profile(0.5, 5.0, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(theta_profile(2.0), std::invalid_argument);
}

TEST_CASE("kappa") {
  CHECK(kappa(1.0).kappa_alpha == doctest::Approx(1.0).epsilon(1e-10));
  for (double a : kAlphas) {
    const Constants c = kappa(a);
    CAPTURE(a);
    CHECK(c.kappa_alpha > 0.0);
    // the profile energy is the closed form; kappa is its reciprocal
    CHECK(rel(1.0 / c.kappa_alpha, closed_form_energy(a)) < 1e-6);
    // kappa times the Neumann limit of the profile is exactly one
    CHECK(rel(c.kappa_alpha * theta_profile(a).neumann_limit, 1.0) < 1e-8);
  }
  CHECK(kappa(0.5, 1).s_alpha_N > 0.0);
}

TEST_CASE("extension of the first mode at alpha = 1") {
  const auto b = test::interval_basis(8);
  const SpectralFunction phi = SpectralFunction::unit(b, 0);
  const ExtensionField w = extend(phi, 1.0);
  for (double x : {0.3, 1.2, 2.9})
    for (double y : {0.0, 0.4, 2.0}) CHECK(w.eval({x, 0.0}, y) == doctest::Approx(phi.eval({x, 0.0}) * std::exp(-y)));
  CHECK(extend(SpectralFunction::zero(b), 0.5).eval({1.0, 0.0}, 0.5) == 0.0);
  // trace at y = 0 is u itself, coefficient by coefficient
  const SpectralFunction u = test::random_function(b, 1);
  CHECK((extend(u, 0.7).slice(0.0) - u.coeffs).norm() == 0.0);
  CHECK(extend(u, 0.7).slice(200.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("isometry on random functions") {
  for (const auto& b : {test::interval_basis(16), test::square_basis(8)}) {
    for (double a : kAlphas) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const SpectralFunction u = test::random_function(b, seed);
        const double hs = std::pow(norm_hs(u, a), 2);
        CAPTURE(a);
        CHECK(rel(extension_energy(extend(u, a)), hs) < 1e-6);
      }
    }
  }
  const auto wide = test::interval_basis(64);
  const SpectralFunction u = test::random_function(wide, 77);
  CHECK(rel(extension_energy(extend(u, 0.5)), std::pow(norm_hs(u, 0.5), 2)) < 1e-6);
}

TEST_CASE("Neumann trace examples") {
  const auto b = test::interval_basis(8);
  for (double a : kAlphas) {
    const SpectralFunction tr = neumann_trace(extend(SpectralFunction::unit(b, 0), a));
    CHECK(tr.coeffs[0] == doctest::Approx(1.0).epsilon(1e-8));
  }
  const SpectralFunction two = neumann_trace(extend(SpectralFunction::unit(b, 1), 1.0));
  CHECK(two.coeffs[1] == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("Neumann trace equals the fractional operator") {
  const auto b = test::square_basis(6);
  for (double a : {0.3, 0.5, 0.7, 0.9, 1.0, 1.3, 1.7}) {
    const SpectralFunction u = test::random_function(b, 21);
    const SpectralFunction tr = neumann_trace(extend(u, a));
    const SpectralFunction fr = apply_frac(u, a);
    CAPTURE(a);
    for (int j = 0; j < b->size(); ++j) CHECK(rel(tr.coeffs[j], fr.coeffs[j]) < 1e-6);
  }
}

TEST_CASE("trace inequality under perturbations vanishing at the boundary") {
  const auto b = test::interval_basis(10);
  const SpectralFunction u = test::random_function(b, 4);
  SeparablePerturbation pert;
  pert.coeffs = 0.1 * test::random_function(b, 5).coeffs;
  pert.chi = [](double y) { return y * std::exp(-y); };
  pert.dchi = [](double y) { return (1.0 - y) * std::exp(-y); };
  for (double a : {0.5, 1.0, 1.5}) {
    const ExtensionField w = extend(u, a);
    const double hs = std::pow(norm_hs(u, a), 2);
    CHECK(rel(extension_energy(w), hs) < 1e-6);
    CHECK(extension_energy(w, &pert) > hs * (1.0 + 1e-6));
  }
}
