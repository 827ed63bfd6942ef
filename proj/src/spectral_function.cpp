#include "fraclap/spectral_function.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace fraclap {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("fractional order alpha must lie in (0,2)");
}

SpectralFunction SpectralFunction::zero(BasisPtr b) {
  const int n = b->size();
  return {std::move(b), Eigen::VectorXd::Zero(n)};
}

SpectralFunction SpectralFunction::unit(BasisPtr b, int j) {
  SpectralFunction u = zero(std::move(b));
  u.coeffs[j] = 1.0;
  return u;
}

double SpectralFunction::eval(const std::array<double, 2>& x) const {
  double acc = 0.0;
  for (int j = 0; j < basis->size(); ++j) acc += coeffs[j] * basis->eval_mode(j, x);
  return acc;
}

namespace {
void same_basis(const SpectralFunction& a, const SpectralFunction& b) {
  if (a.coeffs.size() != b.coeffs.size()) throw std::invalid_argument("functions live on different bases");
}
}  // namespace

SpectralFunction& SpectralFunction::operator+=(const SpectralFunction& o) {
  same_basis(*this, o);
  coeffs += o.coeffs;
  return *this;
}
SpectralFunction& SpectralFunction::operator-=(const SpectralFunction& o) {
  same_basis(*this, o);
  coeffs -= o.coeffs;
  return *this;
}
SpectralFunction& SpectralFunction::operator*=(double s) {
  coeffs *= s;
  return *this;
}
SpectralFunction operator+(SpectralFunction a, const SpectralFunction& b) { return a += b; }
SpectralFunction operator-(SpectralFunction a, const SpectralFunction& b) { return a -= b; }
SpectralFunction operator*(double s, SpectralFunction a) { return a *= s; }

SpectralFunction analyze(const Eigen::VectorXd& nodal, BasisPtr basis) {
  const SineTransform t(basis, Grid::of(basis->domain()));
  return {basis, t.analyze(nodal)};
}

Eigen::VectorXd synthesize(const SpectralFunction& u, std::optional<Grid> grid) {
  const SineTransform t(u.basis, grid ? *grid : Grid::of(u.basis->domain()));
  return t.synthesize(u.coeffs);
}

SpectralFunction apply_frac(const SpectralFunction& u, double alpha) {
  check_alpha(alpha);
  return {u.basis, u.coeffs.cwiseProduct(u.basis->frac_symbol(alpha))};
}

SpectralFunction solve_shifted(const SpectralFunction& rhs, double alpha, double shift) {
  check_alpha(alpha);
  if (!(shift >= 0.0)) throw std::invalid_argument("shift must be nonnegative");
  const Eigen::ArrayXd denom = rhs.basis->frac_symbol(alpha).array() + shift;
  return {rhs.basis, (rhs.coeffs.array() / denom).matrix()};
}

double norm_hs(const SpectralFunction& u, double alpha) {
  if (!(alpha >= 0.0 && alpha < 2.0)) throw std::invalid_argument("norm order alpha must lie in [0,2)");
  return std::sqrt(u.coeffs.cwiseAbs2().dot(u.basis->frac_symbol(alpha)));
}

double inner_hs(const SpectralFunction& u, const SpectralFunction& v, double alpha) {
  same_basis(u, v);
  return u.coeffs.cwiseProduct(v.coeffs).dot(u.basis->frac_symbol(alpha));
}

std::pair<double, SpectralFunction> first_eigenpair(const BasisPtr& basis, double alpha) {
  check_alpha(alpha);
  // Mode 0 is k = (1,1): the product of positive half-sines.
  return {std::pow(basis->rho()[0], alpha / 2.0), SpectralFunction::unit(basis, 0)};
}

SpectralFunction transfer(const SpectralFunction& u, const BasisPtr& target) {
  const auto& src = *u.basis;
  if (src.dim() != target->dim()) throw std::invalid_argument("transfer between different dimensions");
  std::map<std::array<int, 2>, int> index;
  for (int j = 0; j < target->size(); ++j) index[target->mode(j).k] = j;
  SpectralFunction out = SpectralFunction::zero(target);
  for (int j = 0; j < src.size(); ++j) {
    auto it = index.find(src.mode(j).k);
    if (it != index.end()) out.coeffs[it->second] = u.coeffs[j];
  }
  return out;
}

}  // namespace fraclap
