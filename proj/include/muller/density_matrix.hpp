#pragma once

#include <Eigen/Dense>

namespace muller {

inline constexpr double kDefaultPruneThreshold = 1e-10;
// Eigenvalues of gamma within this band outside [0, cap] are clipped; larger
// violations are rejected.
inline constexpr double kOccupationClipBand = 1e-10;

/// Canonical orthogonalization X with X^T S X = I, columns of S-eigenvalue
/// below `threshold` dropped (m <= n).
struct Orthonormalizer {
  Eigen::MatrixXd transform;  // n x m
  double threshold = kDefaultPruneThreshold;
  double smallest_kept_eigenvalue = 0.0;
  double condition_number = 0.0;

  Eigen::Index basis_size() const { return transform.rows(); }
  Eigen::Index rank() const { return transform.cols(); }

  /// AO-coefficient matrix -> orthonormal basis, for kernels (X^T S A S X).
  Eigen::MatrixXd kernel_to_orthonormal(const Eigen::MatrixXd& ao_kernel,
                                        const Eigen::MatrixXd& overlap) const;
  /// Orthonormal-basis kernel -> AO coefficients (X a X^T).
  Eigen::MatrixXd kernel_to_ao(const Eigen::MatrixXd& orthonormal) const;
  /// AO operator matrix -> orthonormal basis (X^T A X).
  Eigen::MatrixXd operator_to_orthonormal(const Eigen::MatrixXd& ao_operator) const;
};

Orthonormalizer lowdin_orthonormalizer(const Eigen::MatrixXd& overlap,
                                       double threshold = kDefaultPruneThreshold);

/// Euclidean projection onto {0 <= l_i <= cap, sum l_i = total}.
///
/// Water-filling: l_i = clip(x_i - mu, 0, cap) with mu located exactly on the
/// piecewise-linear, nonincreasing map mu -> sum_i clip(x_i - mu, 0, cap).
Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& x, double total, double cap = 1.0,
                                       double* shift = nullptr);

/// Euclidean projection onto {0 <= l_i <= cap, sum l_i <= total}: clip first,
/// water-fill only if the clipped sum exceeds `total`.
Eigen::VectorXd project_capped_subsimplex(const Eigen::VectorXd& x, double total,
                                          double cap = 1.0);

/// Symmetric PSD square root via the spectral decomposition. Eigenvalues in
/// [-1e-10 ||M||, 0) are clipped; anything below -1e-6 ||M|| throws.
Eigen::MatrixXd matrix_sqrt_psd(const Eigen::MatrixXd& m);

/// (sqrt(a) - sqrt(b)) / (a - b), replaced by 1 / (2 sqrt(a)) when
/// |a - b| < 1e-12 max(a, b, 1).
double sqrt_divided_difference(double a, double b);

/// One-body density matrix gamma = C diag(lambda) C^T in an orthonormal basis,
/// with its square root g = C diag(sqrt lambda) C^T cached.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  const Eigen::VectorXd& occupations() const { return occupations_; }
  const Eigen::MatrixXd& orbitals() const { return orbitals_; }
  const Eigen::MatrixXd& gamma() const { return gamma_; }
  const Eigen::MatrixXd& sqrt_gamma() const { return sqrt_gamma_; }
  double cap() const { return cap_; }
  Eigen::Index dim() const { return occupations_.size(); }

  double trace() const;

  friend DensityMatrix dm_from_spectral(const Eigen::VectorXd& occupations,
                                        const Eigen::MatrixXd& orbitals, double cap);

 private:
  Eigen::VectorXd occupations_;
  Eigen::MatrixXd orbitals_;
  Eigen::MatrixXd gamma_;
  Eigen::MatrixXd sqrt_gamma_;
  double cap_ = 1.0;
};

/// Validates 0 <= lambda <= cap (within the clip band) and C^T C = I to
/// 1e-10, then fills the caches. Throws ValidationError naming the bound.
DensityMatrix dm_from_spectral(const Eigen::VectorXd& occupations,
                               const Eigen::MatrixXd& orbitals, double cap = 1.0);

/// Eigendecomposes a symmetric gamma and validates it.
DensityMatrix dm_from_gamma(const Eigen::MatrixXd& gamma, double cap = 1.0);

/// gamma = g^2 for a symmetric g; occupations are the squared eigenvalues.
DensityMatrix dm_from_sqrt(const Eigen::MatrixXd& g, double cap = 1.0);

}  // namespace muller
