#include "fraclap/spectral_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fraclap {

SpectralBasis::SpectralBasis(Domain domain, std::array<int, 2> modes) : domain_(domain), modes_(modes) {
  domain_.validate();
  if (domain_.dim == 1) modes_[1] = 1;
  for (int i = 0; i < domain_.dim; ++i) {
    if (modes_[i] < 1) throw std::invalid_argument("mode count must be >= 1 on every axis");
    if (modes_[i] > domain_.nodes[i]) {
      throw std::invalid_argument("aliasing: " + std::to_string(modes_[i]) + " modes on axis " + std::to_string(i) +
                                  " exceed " + std::to_string(domain_.nodes[i]) + " grid nodes");
    }
  }

  const double pi = std::numbers::pi;
  const int m0 = modes_[0];
  const int m1 = modes_[1];
  std::vector<Mode> lex;
  lex.reserve(static_cast<std::size_t>(m0) * m1);
  for (int k0 = 1; k0 <= m0; ++k0) {
    for (int k1 = 1; k1 <= m1; ++k1) {
      Mode m;
      m.k = {k0, domain_.dim == 2 ? k1 : 1};
      const double w0 = k0 * pi / domain_.length[0];
      m.rho = w0 * w0;
      if (domain_.dim == 2) {
        const double w1 = k1 * pi / domain_.length[1];
        m.rho += w1 * w1;
      }
      lex.push_back(m);
    }
  }

  std::vector<int> order(lex.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  // Lexicographic position already encodes the tie-break, so a stable sort suffices.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lex[a].rho < lex[b].rho; });

  sorted_.resize(lex.size());
  lex_.resize(lex.size());
  sorted_of_lex_.resize(lex.size());
  rho_.resize(static_cast<Eigen::Index>(lex.size()));
  for (std::size_t j = 0; j < order.size(); ++j) {
    sorted_[j] = lex[order[j]];
    lex_[j] = order[j];
    sorted_of_lex_[order[j]] = static_cast<int>(j);
    rho_[static_cast<Eigen::Index>(j)] = sorted_[j].rho;
  }
}

double SpectralBasis::eval_mode(int j, const std::array<double, 2>& x) const {
  const double pi = std::numbers::pi;
  const Mode& m = sorted_[j];
  double v = std::sqrt(2.0 / domain_.length[0]) * std::sin(m.k[0] * pi * x[0] / domain_.length[0]);
  if (domain_.dim == 2) v *= std::sqrt(2.0 / domain_.length[1]) * std::sin(m.k[1] * pi * x[1] / domain_.length[1]);
  return v;
}

Eigen::VectorXd SpectralBasis::frac_symbol(double alpha) const {
  return rho_.array().pow(alpha / 2.0).matrix();
}

std::shared_ptr<const SpectralBasis> SpectralBasis::with_modes(std::array<int, 2> modes) const {
  Domain d = domain_;
  for (int i = 0; i < d.dim; ++i) d.nodes[i] = std::max(d.nodes[i], modes[i]);
  return std::make_shared<const SpectralBasis>(d, modes);
}

BasisPtr build_basis(const Domain& domain, std::array<int, 2> modes) {
  return std::make_shared<const SpectralBasis>(domain, modes);
}

BasisPtr build_basis(const Domain& domain, int modes_each_axis) {
  return build_basis(domain, {modes_each_axis, domain.dim == 2 ? modes_each_axis : 1});
}

}  // namespace fraclap
