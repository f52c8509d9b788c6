#pragma once

#include <array>
#include <string>
#include <vector>

#include "muller/multigrid.hpp"
#include "muller/thomas_fermi.hpp"

namespace muller {

/// Cube [-L, L]^3 around the bond midpoint, n intervals per side. The bond
/// lies along z, shifted by (h/2, h/2) so that no nucleus sits on a node.
struct GridSpec {
  double half_width = 0.0;        ///< L, bohr; 0 selects R / 2 + 8
  int intervals = 96;             ///< n
  double tolerance = 1e-9;        ///< max-norm residual of the discrete equation
  int max_newton = 40;
  double kinetic_prefactor = tf_default_kinetic_prefactor();

  double box_half_width(double separation) const {
    return half_width > 0.0 ? half_width : 0.5 * separation + 8.0;
  }
  double spacing(double separation) const { return 2.0 * box_half_width(separation) / intervals; }
  void validate() const;
};

/// Neutral diatomic Thomas-Fermi solution. The potential is split as
/// phi = phi_1 + phi_2 + w with phi_i the exact radial potentials of the
/// neutral atoms; w is the smooth unknown and solves
/// L_h w = 4 pi [rho(phi) - rho(phi_1) - rho(phi_2)]. On the box boundary phi
/// is set to the potential of the neutral atom of charge Z1 + Z2 placed at the
/// charge centre, which carries the same large-distance tail.
struct TfGridSolution {
  GridSpec spec;
  double half_width = 0.0;
  double z1 = 0.0;
  double z2 = 0.0;
  double separation = 0.0;
  CubeGrid grid;
  std::vector<double> correction;  ///< w at every node
  std::vector<double> density;     ///< rho(phi) at every node
  double atom_energy_1 = 0.0;
  double atom_energy_2 = 0.0;
  double frozen_interaction = 0.0;  ///< Coulomb + kinetic-free interaction of the unrelaxed atoms
  double gamma = 0.0;               ///< E_molecule - E_atom_1 - E_atom_2 (nuclear repulsion included)
  double energy = 0.0;              ///< E_atom_1 + E_atom_2 + gamma
  double residual = 0.0;            ///< max norm of the discrete equation
  double charge_defect = 0.0;       ///< h^3 sum of rho - rho_1 - rho_2
  double boundary_potential = 0.0;  ///< max of phi on the box boundary
  int newton_iterations = 0;
  bool converged = false;

  /// (x, y, z) of node (i, j, k).
  std::array<double, 3> node(int i, int j, int k) const;
};

TfGridSolution tf_diatomic(double z1, double z2, double separation, const GridSpec& spec = {});

struct TfGammaResult {
  double separation = 0.0;
  double gamma = 0.0;
  double gamma_coarse = 0.0;  ///< same on a grid with 2/3 the intervals
  double error_bar = 0.0;     ///< |gamma - gamma_coarse| / ((3/2)^2 - 1)
  bool converged = false;
};

/// Gamma from the fine grid with a second-order error estimate from a grid of
/// 2n/3 intervals over the same box.
TfGammaResult tf_gamma(double z1, double z2, double separation, const GridSpec& spec = {});

/// Writes <prefix>_correction.f64 and <prefix>_density.f64 (raw little-endian
/// doubles, k fastest) and <prefix>.json describing shape, spacing and units.
void write_tf_grid(const TfGridSolution& s, const std::string& prefix);

}  // namespace muller
