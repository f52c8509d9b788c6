#pragma once

#include <Eigen/Dense>

#include "muller/basis.hpp"
#include "muller/density_matrix.hpp"
#include "muller/integrals.hpp"

namespace muller {

/// Energy components in hartree. `exchange` is the positive Muller exchange
/// X(gamma^{1/2}); it enters the total with a minus sign.
struct EnergyBreakdown {
  double kinetic = 0.0;
  double external = 0.0;
  double direct = 0.0;
  double exchange = 0.0;
  double nuclear_repulsion = 0.0;
  double total_electronic = 0.0;
  double total = 0.0;
  double shifted = 0.0;  // total_electronic + trace / 8
  double trace = 0.0;
};

/// Everything needed to evaluate the functional on one (basis, frame) pair.
struct MullerSystem {
  BasisSet basis;
  NuclearFrame frame;
  OneElectronMatrices matrices;
  EriTensor eri;
  Orthonormalizer ortho;
  Eigen::MatrixXd core_orthonormal;  // X^T (T - V) X

  static MullerSystem build(const BasisSet& basis, const NuclearFrame& frame,
                            double prune_threshold = kDefaultPruneThreshold);
  Eigen::Index rank() const { return ortho.rank(); }
};

/// Energy of gamma = g^2 given the orthonormal-basis square root g.
///
/// Contractions run in the AO basis: P = X g^2 X^T, G = X g X^T,
/// direct = 1/2 sum P_pq P_rs (pq|rs), exchange = 1/2 sum G_pq G_rs (pr|qs).
/// The second is the orthonormal-basis form 1/2 sum g_ij g_kl (ik|jl).
EnergyBreakdown energy_breakdown(const DensityMatrix& dm, const OneElectronMatrices& mats,
                                 const EriTensor& eri, const NuclearFrame& frame,
                                 const Orthonormalizer& ortho);

EnergyBreakdown energy_of_sqrt(const Eigen::MatrixXd& g, const MullerSystem& sys);

/// dE/dg for E(g) = tr(h g^2) + D[rho_{g^2}] - X(g), g symmetric:
/// A g + g A - K(g) with A = h + J(g^2) in the orthonormal basis.
/// Entries are derivatives with respect to independent matrix entries.
Eigen::MatrixXd energy_gradient_g(const Eigen::MatrixXd& g, const OneElectronMatrices& mats,
                                  const EriTensor& eri, const NuclearFrame& frame,
                                  const Orthonormalizer& ortho);

Eigen::MatrixXd energy_gradient_g(const Eigen::MatrixXd& g, const MullerSystem& sys);

/// Slack of X(gamma^{1/2}) <= (eps/4) tr(-Delta gamma) + tr(gamma) / (4 eps).
double exchange_bound_slack(const DensityMatrix& dm, const OneElectronMatrices& mats,
                            const EriTensor& eri, const Orthonormalizer& ortho, double eps);

// Lieb-Thirring constant in the form tr(-Delta/2 gamma) >= (3/10) L int rho^{5/3}
// for gamma on scalar L^2(R^3). The semiclassical value is (6 pi^2)^{2/3};
// the proven bound used here is that value times 1.456^{-2/3} (Frank,
// Hundertmark, Jex, Nam: L_{1,3} <= 1.456 L^cl_{1,3}), about 11.83.
double default_lieb_thirring_constant();

struct LiebThirringResult {
  double slack = 0.0;
  double kinetic = 0.0;
  double rho53_integral = 0.0;
  double richardson_difference = 0.0;  // |I(2n grid) - I(n grid)|
};

/// tr(-Delta/2 gamma) - (3/10) L int rho^{5/3}; single-center bases only.
LiebThirringResult lieb_thirring_check(const DensityMatrix& dm, const OneElectronMatrices& mats,
                                       const BasisSet& basis, const Orthonormalizer& ortho,
                                       double lt_constant);

double lieb_thirring_slack(const DensityMatrix& dm, const OneElectronMatrices& mats,
                           const BasisSet& basis, const Orthonormalizer& ortho,
                           double lt_constant);

}  // namespace muller
