#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "fraclap/domain.hpp"
#include "fraclap/spectral_basis.hpp"
#include "fraclap/spectral_function.hpp"

namespace fraclap::test {

inline constexpr double kPi = 3.14159265358979323846;

inline BasisPtr interval_basis(int modes, double length = kPi, int nodes = 0) {
  return build_basis(Domain::interval(length, nodes ? nodes : modes), modes);
}

inline BasisPtr square_basis(int modes, double side = 1.0) {
  return build_basis(Domain::rectangle(side, side, modes, modes), {modes, modes});
}

// Gaussian coefficients damped like rho^{-decay}, so the function is smooth enough
// for quadrature-based checks.
inline SpectralFunction random_function(const BasisPtr& b, std::uint64_t seed, double decay = 0.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  SpectralFunction u = SpectralFunction::zero(b);
  for (int j = 0; j < b->size(); ++j) u.coeffs[j] = n(rng) * std::pow(b->mode(j).rho, -decay);
  return u;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace fraclap::test
