#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "muller/basis.hpp"
#include "muller/density_matrix.hpp"
#include "muller/energy.hpp"
#include "muller/integrals.hpp"

namespace muller {

/// Random single-center problem: 1..max_basis even-tempered Gaussians, first
/// exponent log-uniform in [0.02, 1], ratio uniform in [2, 4], and a random
/// density matrix on it.
struct RandomInstance {
  BasisSet basis;
  OneElectronMatrices mats;  ///< no nuclei
  EriTensor eri;
  Orthonormalizer ortho;
  DensityMatrix dm;
};

/// Occupations uniform in [0, 1] on random orthonormal orbitals.
RandomInstance random_atomic_instance(std::mt19937_64& rng, int max_basis = 8);

/// E_inf(gamma) + tr(gamma) / 8 with E_inf the energy without nuclei.
double free_energy_slack(const RandomInstance& inst);

/// Exhaustive active-set projection onto {0 <= l <= cap, sum l = total}:
/// every assignment of coordinates to {0, cap, free} is tried. 3^m cases.
Eigen::VectorXd brute_force_capped_simplex(const Eigen::VectorXd& x, double total,
                                           double cap = 1.0);

struct InequalityAudit {
  int trials = 0;
  std::uint64_t seed = 0;
  double free_bound_min_slack = 0.0;
  double exchange_min_slack = 0.0;        ///< over eps in {0.1, 1, 10}
  double lieb_thirring_min_slack = 0.0;
  double rank_one_max_defect = 0.0;       ///< |X - D| / max(1, D)
  double fractional_min_slack = 0.0;      ///< X - D
  double gradient_max_error = 0.0;
  double projection_max_error = 0.0;

  bool passed() const;
};

/// Runs every randomized check with `trials` instances each (the gradient
/// audit uses trials / 25, at least 1, since each costs O(m^2) energies).
InequalityAudit run_inequality_audit(int trials, std::uint64_t seed);

}  // namespace muller
