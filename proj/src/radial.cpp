#include "muller/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "muller/error.hpp"

namespace muller {

std::vector<double> LogGrid::nodes() const {
  if (points < 2 || !(r_min > 0.0) || !(r_max > r_min)) {
    throw InvalidArgument("LogGrid: need points >= 2 and 0 < r_min < r_max");
  }
  std::vector<double> r(static_cast<std::size_t>(points));
  const double step = std::log(r_max / r_min) / (points - 1);
  for (int k = 0; k < points; ++k) r[static_cast<std::size_t>(k)] = r_min * std::exp(step * k);
  return r;
}

double integrate_spherical(const LogGrid& grid, const std::vector<double>& values) {
  const auto r = grid.nodes();
  if (values.size() != r.size()) throw InvalidArgument("integrate_spherical: size mismatch");
  const double du = std::log(grid.r_max / grid.r_min) / (grid.points - 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double w = (k == 0 || k + 1 == r.size()) ? 0.5 : 1.0;
    sum += w * values[k] * r[k] * r[k] * r[k];
  }
  return 4.0 * std::numbers::pi * du * sum;
}

double integrate_spherical(const LogGrid& grid, const std::function<double(double)>& f) {
  const auto r = grid.nodes();
  std::vector<double> v(r.size());
  std::transform(r.begin(), r.end(), v.begin(), f);
  return integrate_spherical(grid, v);
}

LogGrid grid_for_basis(const BasisSet& basis, int points) {
  double amin = basis[0].exponent;
  double amax = basis[0].exponent;
  for (const auto& p : basis.primitives()) {
    amin = std::min(amin, p.exponent);
    amax = std::max(amax, p.exponent);
  }
  return {1e-4 / std::sqrt(amax), 12.0 / std::sqrt(amin), points};
}

RadialDensity::RadialDensity(const BasisSet& basis, const Eigen::MatrixXd& ao_density) {
  if (!basis.single_center()) {
    throw UnsupportedGeometry("radial density requires a single-center basis");
  }
  const auto n = basis.size();
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const double w = ao_density(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) *
                       basis[p].norm * basis[q].norm;
      if (w == 0.0) continue;
      pair_exponent_.push_back(basis[p].exponent + basis[q].exponent);
      pair_weight_.push_back(w);
    }
  }
}

double RadialDensity::operator()(double r) const {
  double rho = 0.0;
  for (std::size_t k = 0; k < pair_weight_.size(); ++k) {
    rho += pair_weight_[k] * std::exp(-pair_exponent_[k] * r * r);
  }
  return rho;
}

}  // namespace muller
