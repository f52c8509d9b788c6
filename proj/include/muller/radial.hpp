#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "muller/basis.hpp"

namespace muller {

/// Logarithmic radial grid r_k = r_min (r_max / r_min)^{k / (n - 1)}.
struct LogGrid {
  double r_min = 1e-6;
  double r_max = 50.0;
  int points = 200;

  std::vector<double> nodes() const;
  LogGrid doubled() const { return {r_min, r_max, 2 * points - 1}; }
};

/// int_{r_min}^{r_max} f(r) 4 pi r^2 dr, trapezoid rule in u = ln r.
double integrate_spherical(const LogGrid& grid, const std::function<double(double)>& f);

/// Same for sampled values on grid.nodes().
double integrate_spherical(const LogGrid& grid, const std::vector<double>& values);

/// Radial grid covering the basis: from 1e-4 / sqrt(alpha_max) to
/// 12 / sqrt(alpha_min).
LogGrid grid_for_basis(const BasisSet& basis, int points = 200);

/// rho(r) = sum_pq P_pq chi_p(r) chi_q(r) for a single-center basis, with P
/// the AO-coefficient density matrix.
class RadialDensity {
 public:
  RadialDensity(const BasisSet& basis, const Eigen::MatrixXd& ao_density);
  double operator()(double r) const;

 private:
  std::vector<double> pair_exponent_;
  std::vector<double> pair_weight_;
};

}  // namespace muller
