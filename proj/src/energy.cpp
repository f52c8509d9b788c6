#include "muller/energy.hpp"

#include <cmath>
#include <numbers>

#include "muller/error.hpp"
#include "muller/radial.hpp"

namespace muller {

MullerSystem MullerSystem::build(const BasisSet& basis, const NuclearFrame& frame,
                                 double prune_threshold) {
  MullerSystem sys;
  sys.basis = basis;
  sys.frame = frame;
  sys.matrices = one_electron_matrices(basis, frame);
  sys.eri = eri_tensor(basis);
  sys.ortho = lowdin_orthonormalizer(sys.matrices.overlap, prune_threshold);
  sys.core_orthonormal = sys.ortho.operator_to_orthonormal(sys.matrices.core_hamiltonian());
  return sys;
}

namespace {

void check_dims(const Eigen::MatrixXd& g, const OneElectronMatrices& mats, const EriTensor& eri,
                const Orthonormalizer& ortho) {
  if (g.rows() != g.cols() || g.rows() != ortho.rank()) {
    throw InvalidArgument("energy: density matrix dimension does not match orthonormal basis");
  }
  if (mats.overlap.rows() != ortho.basis_size() ||
      static_cast<Eigen::Index>(eri.dim()) != ortho.basis_size()) {
    throw InvalidArgument("energy: integral dimensions do not match basis");
  }
}

double frobenius_dot(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.cwiseProduct(b).sum();
}

EnergyBreakdown evaluate(const Eigen::MatrixXd& gamma, const Eigen::MatrixXd& g, double trace,
                         const OneElectronMatrices& mats, const EriTensor& eri,
                         const NuclearFrame& frame, const Orthonormalizer& ortho) {
  const Eigen::MatrixXd p = ortho.kernel_to_ao(gamma);
  const Eigen::MatrixXd kernel = ortho.kernel_to_ao(g);
  EnergyBreakdown e;
  e.kinetic = frobenius_dot(mats.kinetic, p);
  e.external = -frobenius_dot(mats.attraction, p);
  e.direct = 0.5 * frobenius_dot(eri.coulomb(p), p);
  e.exchange = 0.5 * frobenius_dot(eri.exchange(kernel), kernel);
  e.nuclear_repulsion = frame.repulsion();
  e.trace = trace;
  e.total_electronic = e.kinetic + e.external + e.direct - e.exchange;
  e.total = e.total_electronic + e.nuclear_repulsion;
  e.shifted = e.total_electronic + trace / 8.0;
  return e;
}

}  // namespace

EnergyBreakdown energy_breakdown(const DensityMatrix& dm, const OneElectronMatrices& mats,
                                 const EriTensor& eri, const NuclearFrame& frame,
                                 const Orthonormalizer& ortho) {
  check_dims(dm.gamma(), mats, eri, ortho);
  return evaluate(dm.gamma(), dm.sqrt_gamma(), dm.trace(), mats, eri, frame, ortho);
}

EnergyBreakdown energy_of_sqrt(const Eigen::MatrixXd& g, const MullerSystem& sys) {
  check_dims(g, sys.matrices, sys.eri, sys.ortho);
  const Eigen::MatrixXd gamma = g * g;
  return evaluate(gamma, g, gamma.trace(), sys.matrices, sys.eri, sys.frame, sys.ortho);
}

Eigen::MatrixXd energy_gradient_g(const Eigen::MatrixXd& g, const OneElectronMatrices& mats,
                                  const EriTensor& eri, const NuclearFrame& /*frame*/,
                                  const Orthonormalizer& ortho) {
  check_dims(g, mats, eri, ortho);
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgument("energy_gradient_g: g must be symmetric");
  }
  const Eigen::MatrixXd p = ortho.kernel_to_ao(g * g);
  const Eigen::MatrixXd kernel = ortho.kernel_to_ao(g);
  const Eigen::MatrixXd a =
      ortho.operator_to_orthonormal(mats.core_hamiltonian() + eri.coulomb(p));
  const Eigen::MatrixXd k = ortho.operator_to_orthonormal(eri.exchange(kernel));
  Eigen::MatrixXd grad = a * g + g * a - k;
  return 0.5 * (grad + grad.transpose());
}

Eigen::MatrixXd energy_gradient_g(const Eigen::MatrixXd& g, const MullerSystem& sys) {
  return energy_gradient_g(g, sys.matrices, sys.eri, sys.frame, sys.ortho);
}

double exchange_bound_slack(const DensityMatrix& dm, const OneElectronMatrices& mats,
                            const EriTensor& eri, const Orthonormalizer& ortho, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("exchange_bound_slack: eps must be positive");
  check_dims(dm.gamma(), mats, eri, ortho);
  const Eigen::MatrixXd p = ortho.kernel_to_ao(dm.gamma());
  const Eigen::MatrixXd kernel = ortho.kernel_to_ao(dm.sqrt_gamma());
  const double laplacian = 2.0 * frobenius_dot(mats.kinetic, p);  // tr(-Delta gamma)
  const double exchange = 0.5 * frobenius_dot(eri.exchange(kernel), kernel);
  return 0.25 * eps * laplacian + dm.trace() / (4.0 * eps) - exchange;
}

double default_lieb_thirring_constant() {
  const double semiclassical = std::pow(6.0 * std::numbers::pi * std::numbers::pi, 2.0 / 3.0);
  return semiclassical * std::pow(1.456, -2.0 / 3.0);
}

LiebThirringResult lieb_thirring_check(const DensityMatrix& dm, const OneElectronMatrices& mats,
                                       const BasisSet& basis, const Orthonormalizer& ortho,
                                       double lt_constant) {
  if (!(lt_constant > 0.0)) throw InvalidArgument("lieb_thirring: constant must be positive");
  if (!basis.single_center()) {
    throw UnsupportedGeometry("lieb_thirring_slack: multi-center densities are not supported");
  }
  const Eigen::MatrixXd p = ortho.kernel_to_ao(dm.gamma());
  const RadialDensity rho(basis, p);
  auto rho53 = [&](double r) { return std::pow(std::max(rho(r), 0.0), 5.0 / 3.0); };
  const LogGrid grid = grid_for_basis(basis, 200);
  const double coarse = integrate_spherical(grid, rho53);
  const double fine = integrate_spherical(grid.doubled(), rho53);
  LiebThirringResult out;
  out.kinetic = frobenius_dot(mats.kinetic, p);
  out.rho53_integral = fine;
  out.richardson_difference = std::abs(fine - coarse);
  out.slack = out.kinetic - 0.3 * lt_constant * fine;
  return out;
}

double lieb_thirring_slack(const DensityMatrix& dm, const OneElectronMatrices& mats,
                           const BasisSet& basis, const Orthonormalizer& ortho,
                           double lt_constant) {
  return lieb_thirring_check(dm, mats, basis, ortho, lt_constant).slack;
}

}  // namespace muller
