#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "muller/basis.hpp"

namespace muller {

/// One-electron matrices over a normalized s-Gaussian basis.
///
/// `attraction` holds the positive magnitude sum_C Z_C <p| 1/|r - R_C| |q>;
/// the operator entering the energy is -attraction, i.e. h = kinetic -
/// attraction.
struct OneElectronMatrices {
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd kinetic;
  Eigen::MatrixXd attraction;

  Eigen::MatrixXd core_hamiltonian() const { return kinetic - attraction; }
};

double overlap_integral(const Primitive& a, const Primitive& b);
double kinetic_integral(const Primitive& a, const Primitive& b);
/// <a| 1/|r - c| |b>, positive.
double point_charge_integral(const Primitive& a, const Primitive& b, const Vec3& c);
/// (ab|cd) in chemists' notation.
double repulsion_integral(const Primitive& a, const Primitive& b, const Primitive& c,
                          const Primitive& d);

OneElectronMatrices one_electron_matrices(const BasisSet& basis, const NuclearFrame& frame);

/// Two-electron integrals (pq|rs), stored once per 8-fold symmetry class.
///
/// Two dense n^2 x n^2 views are kept for contractions: the Coulomb layout
/// [(pq),(rs)] and the exchange layout [(pr),(qs)]. Both are filled from the
/// packed values, so every symmetry partner is bit-identical.
class EriTensor {
 public:
  EriTensor() = default;
  explicit EriTensor(const BasisSet& basis);

  std::size_t dim() const { return n_; }
  double operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const;
  std::size_t unique_count() const { return packed_.size(); }

  /// J(P)_pq = sum_rs (pq|rs) P_rs.
  Eigen::MatrixXd coulomb(const Eigen::MatrixXd& density) const;
  /// K(G)_pr = sum_qs (pq|rs) G_qs.
  Eigen::MatrixXd exchange(const Eigen::MatrixXd& kernel) const;

  const Eigen::MatrixXd& coulomb_layout() const { return coulomb_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> packed_;
  Eigen::MatrixXd coulomb_;
  Eigen::MatrixXd exchange_;
};

EriTensor eri_tensor(const BasisSet& basis);

}  // namespace muller
