#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

namespace muller {

/// (3/10)(3 pi^2)^{2/3}.
double tf_default_kinetic_prefactor();

/// Solves chi'' = chi^{3/2} / sqrt(x), chi(0) = 1, chi(inf) = 0 by bisection
/// on chi'(0). `tolerance` is the integrator's relative and absolute error.
double tf_universal_slope(double tolerance = 1e-12);

/// Outcome of one outward integration from chi(0) = 1 with the given slope.
struct TfShot {
  enum class Fate { crosses_zero, turns_up, undecided };
  Fate fate = Fate::undecided;
  double x_end = 0.0;  ///< where the fate was decided
};
TfShot tf_shoot(double slope, double x_max = 200.0, double tolerance = 1e-12);

/// Radial Thomas-Fermi atom (or positive ion). Lengths in bohr, energies in
/// hartree. With kappa = 5 c_K / 3 the density is rho = ((phi - mu) / kappa)^{3/2}
/// and phi - mu = Z chi(r / b) / r, b = (4 pi)^{-2/3} kappa Z^{-1/3}.
struct TfAtomSolution {
  double z = 0.0;
  double n = 0.0;
  double slope = 0.0;                                    ///< chi'(0)
  double mu = 0.0;                                       ///< chemical potential
  double x0 = std::numeric_limits<double>::infinity();   ///< cutoff in x units
  double energy = 0.0;                                   ///< slope formula
  double energy_quadrature = 0.0;                        ///< direct functional
  double kinetic_prefactor = 0.0;
  double length_scale = 0.0;                             ///< b
  double electrons_quadrature = 0.0;

  std::vector<double> x;      ///< scaled radii, increasing
  std::vector<double> chi;
  std::vector<double> dchi;   ///< d chi / dx
  std::vector<double> r;      ///< b x
  std::vector<double> rho;
  std::vector<double> phi;    ///< full electrostatic potential, Z chi / r + mu
  std::vector<double> chi_cumulative;  ///< int_0^x chi at each sample

  bool neutral() const { return mu == 0.0; }
  /// chi at any x >= 0: cubic Hermite between samples, Sommerfeld x^{-3}
  /// decay past the last sample of a neutral atom, 0 past x0 for an ion.
  double chi_at(double xv) const;
  /// int_0^xv chi, consistent with chi_at.
  double chi_integral(double xv) const;
  /// phi(r) - mu, the screened nuclear potential; zero outside an ion.
  double screened_potential(double rv) const;
  /// ((phi - mu) / kappa)^{3/2}.
  double density(double rv) const;
};

TfAtomSolution tf_atom(double z, double n, double kinetic_prefactor = tf_default_kinetic_prefactor());

/// max over samples of |rho^{2/3} - q| / max(1, q), q = (3 / (5 c_K)) [phi - mu]_+.
double tf_equation_residual(const TfAtomSolution& s);

/// Header "r,rho,phi", one row per radial sample.
void write_tf_radial_csv(const TfAtomSolution& s, std::ostream& out);

/// D[f] = 1/2 int_0^inf Q(r)^2 / r^2 dr, Q(r) the charge of the spherical
/// density f inside r, by trapezoid quadrature on increasing radii r with
/// samples f(r). Q is accumulated from int f 4 pi r^2 dr; f is taken as zero
/// past the last radius, which adds Q(r_max)^2 / r_max.
double radial_coulomb_self_energy(const std::vector<double>& r, const std::vector<double>& f);

}  // namespace muller
