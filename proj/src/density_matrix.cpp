#include "muller/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "muller/error.hpp"

namespace muller {

Eigen::MatrixXd Orthonormalizer::kernel_to_orthonormal(const Eigen::MatrixXd& ao_kernel,
                                                       const Eigen::MatrixXd& overlap) const {
  const Eigen::MatrixXd left = transform.transpose() * overlap;
  return left * ao_kernel * left.transpose();
}

Eigen::MatrixXd Orthonormalizer::kernel_to_ao(const Eigen::MatrixXd& orthonormal) const {
  return transform * orthonormal * transform.transpose();
}

Eigen::MatrixXd Orthonormalizer::operator_to_orthonormal(const Eigen::MatrixXd& ao_operator) const {
  return transform.transpose() * ao_operator * transform;
}

Orthonormalizer lowdin_orthonormalizer(const Eigen::MatrixXd& overlap, double threshold) {
  if (overlap.rows() != overlap.cols() || overlap.rows() == 0) {
    throw InvalidArgument("lowdin_orthonormalizer: overlap must be square and nonempty");
  }
  const Eigen::MatrixXd sym = 0.5 * (overlap + overlap.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  const Eigen::VectorXd& w = eig.eigenvalues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (w(k) >= threshold) keep.push_back(k);
  }
  if (keep.empty()) {
    throw DegenerateBasis("lowdin_orthonormalizer: every overlap eigenvalue is below threshold");
  }
  Orthonormalizer x;
  x.threshold = threshold;
  x.transform.resize(overlap.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    x.transform.col(static_cast<Eigen::Index>(c)) =
        eig.eigenvectors().col(keep[c]) / std::sqrt(w(keep[c]));
  }
  x.smallest_kept_eigenvalue = w(keep.front());
  x.condition_number = w(w.size() - 1) / w(keep.front());
  return x;
}

Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& x, double total, double cap,
                                       double* shift) {
  const Eigen::Index m = x.size();
  if (!(cap > 0.0)) throw InvalidArgument("project_capped_simplex: cap must be positive");
  if (!(total >= 0.0) || total > static_cast<double>(m) * cap * (1.0 + 1e-14)) {
    std::ostringstream msg;
    msg << "project_capped_simplex: total " << total << " infeasible for " << m
        << " entries with cap " << cap;
    throw InvalidArgument(msg.str());
  }
  auto filled = [&](double mu) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) s += std::clamp(x(i) - mu, 0.0, cap);
    return s;
  };
  // filled() is continuous, nonincreasing, and linear between consecutive
  // breakpoints x_i - cap and x_i.
  std::vector<double> bp;
  bp.reserve(static_cast<std::size_t>(2 * m));
  for (Eigen::Index i = 0; i < m; ++i) {
    bp.push_back(x(i) - cap);
    bp.push_back(x(i));
  }
  std::sort(bp.begin(), bp.end());
  double mu = bp.back();
  if (total >= static_cast<double>(m) * cap) {
    mu = bp.front();
  } else {
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
      const double s_lo = filled(bp[k]);
      const double s_hi = filled(bp[k + 1]);
      if (s_lo >= total && total >= s_hi) {
        mu = (s_lo == s_hi) ? bp[k] : bp[k] + (s_lo - total) * (bp[k + 1] - bp[k]) / (s_lo - s_hi);
        break;
      }
    }
  }
  if (shift != nullptr) *shift = mu;
  Eigen::VectorXd out(m);
  for (Eigen::Index i = 0; i < m; ++i) out(i) = std::clamp(x(i) - mu, 0.0, cap);
  return out;
}

Eigen::VectorXd project_capped_subsimplex(const Eigen::VectorXd& x, double total, double cap) {
  if (!(total >= 0.0)) throw InvalidArgument("project_capped_subsimplex: total must be >= 0");
  Eigen::VectorXd clipped = x.cwiseMax(0.0).cwiseMin(cap);
  if (clipped.sum() <= total) return clipped;
  return project_capped_simplex(x, total, cap);
}

Eigen::MatrixXd matrix_sqrt_psd(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix_sqrt_psd: matrix must be square");
  if (m.size() == 0) return m;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw InvalidArgument("matrix_sqrt_psd: matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (m + m.transpose()));
  Eigen::VectorXd w = eig.eigenvalues();
  if (w.minCoeff() < -1e-6 * scale) {
    std::ostringstream msg;
    msg << "matrix_sqrt_psd: eigenvalue " << w.minCoeff() << " is negative";
    throw NotPositiveSemidefinite(msg.str());
  }
  w = w.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * w.asDiagonal() * eig.eigenvectors().transpose();
}

double sqrt_divided_difference(double a, double b) {
  if (std::abs(a - b) < 1e-12 * std::max({a, b, 1.0})) {
    return 0.5 / std::sqrt(std::max(a, b));
  }
  return (std::sqrt(a) - std::sqrt(b)) / (a - b);
}

double DensityMatrix::trace() const { return occupations_.sum(); }

DensityMatrix dm_from_spectral(const Eigen::VectorXd& occupations,
                               const Eigen::MatrixXd& orbitals, double cap) {
  if (orbitals.cols() != occupations.size() || orbitals.rows() < orbitals.cols()) {
    throw ValidationError("density matrix: orbital matrix shape does not match occupations");
  }
  Eigen::VectorXd lambda = occupations;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (!(lambda(i) >= -kOccupationClipBand)) {
      std::ostringstream msg;
      msg << "density matrix: occupation " << i << " = " << lambda(i) << " violates lambda >= 0";
      throw ValidationError(msg.str());
    }
    if (!(lambda(i) <= cap + kOccupationClipBand)) {
      std::ostringstream msg;
      msg << "density matrix: occupation " << i << " = " << lambda(i) << " violates lambda <= "
          << cap;
      throw ValidationError(msg.str());
    }
    lambda(i) = std::clamp(lambda(i), 0.0, cap);
  }
  const Eigen::MatrixXd gram = orbitals.transpose() * orbitals;
  const double dev =
      (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (gram.size() > 0 && dev > 1e-10) {
    std::ostringstream msg;
    msg << "density matrix: orbitals not orthonormal (max |C^T C - I| = " << dev << ")";
    throw ValidationError(msg.str());
  }
  DensityMatrix dm;
  dm.occupations_ = lambda;
  dm.orbitals_ = orbitals;
  dm.cap_ = cap;
  dm.gamma_ = orbitals * lambda.asDiagonal() * orbitals.transpose();
  dm.sqrt_gamma_ = orbitals * lambda.cwiseSqrt().asDiagonal() * orbitals.transpose();
  return dm;
}

DensityMatrix dm_from_gamma(const Eigen::MatrixXd& gamma, double cap) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (gamma + gamma.transpose()));
  return dm_from_spectral(eig.eigenvalues(), eig.eigenvectors(), cap);
}

DensityMatrix dm_from_sqrt(const Eigen::MatrixXd& g, double cap) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (g + g.transpose()));
  return dm_from_spectral(eig.eigenvalues().cwiseAbs2(), eig.eigenvectors(), cap);
}

}  // namespace muller
