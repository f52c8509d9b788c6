#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "muller/basis.hpp"
#include "muller/density_matrix.hpp"
#include "muller/energy.hpp"

namespace muller {

enum class TraceMode { equal, at_most };

struct SolveOptions {
  int max_iterations = 20000;
  double gradient_tolerance = 1e-6;  // hartree per unit g, projected gradient
  double initial_step = 0.05;
  double backtracking = 0.5;
  double armijo = 1e-4;
  TraceMode mode = TraceMode::equal;
  bool shift_included = false;  // minimize E + tr(gamma)/8
  std::uint64_t seed = 1;
  int starts = 3;
  double noise = 1e-3;
  double cap = 1.0;  // occupation bound; 1 is the scalar-L^2 convention
  double prune_threshold = kDefaultPruneThreshold;
  // Energy accuracy claimed for converged results; binding verdicts need a
  // margin of ten times this.
  double energy_tolerance = 1e-8;

  void validate() const;
};

struct SolveResult {
  DensityMatrix dm;
  EnergyBreakdown breakdown;
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
  double trace_at_solution = 0.0;
  std::uint64_t seed = 0;
  bool warm_started = false;
  /// Objective value after every accepted step, starting point first.
  std::vector<double> objective_history;
  /// gamma^{1/2} kernel in AO coefficients, X g X^T; basis-independent form
  /// used to warm-start a neighbouring geometry.
  Eigen::MatrixXd ao_sqrt_kernel;

  /// The minimized quantity: shifted energy when the shift is included.
  double objective(bool shift_included) const {
    return shift_included ? breakdown.shifted : breakdown.total_electronic;
  }
};

/// Radial projection of eigenvalues of g onto
/// {0 <= s_i <= sqrt(cap), sum s_i^2 = N} (TraceMode::equal) or
/// sum s_i^2 <= N (TraceMode::at_most): s_i -> clip(c x_i, 0, sqrt(cap)) with
/// the scale c > 0 solved exactly. This is exact whenever the positive
/// entries can carry N on their own; otherwise nonpositive entries are raised
/// to a tiny floor first, which gives a feasible point but not the nearest one.
///
/// This is the Euclidean projection in g. Water-filling the squares in
/// lambda space instead would leave fixed points where lambda_i dE/dlambda_i
/// is constant, which are not stationary.
Eigen::VectorXd project_sqrt_occupations(const Eigen::VectorXd& x, double electrons,
                                         TraceMode mode, double cap = 1.0);

/// Spectral projection of a symmetric matrix onto the feasible set in g.
Eigen::MatrixXd project_sqrt_density(const Eigen::MatrixXd& g, double electrons, TraceMode mode,
                                     double cap = 1.0);

/// Projected gradient descent in g = gamma^{1/2} with Barzilai-Borwein trial
/// steps and Armijo backtracking; best of `opts.starts` seeded starts.
SolveResult minimize_muller(const BasisSet& basis, const NuclearFrame& frame, double electrons,
                            const SolveOptions& opts,
                            const std::optional<Eigen::MatrixXd>& warm_ao_kernel = std::nullopt);

SolveResult minimize_muller(const MullerSystem& sys, double electrons, const SolveOptions& opts,
                            const std::optional<Eigen::MatrixXd>& warm_ao_kernel = std::nullopt);

/// Max over entries of |analytic - central difference| divided by the max
/// entry of the analytic gradient, at the given symmetric point.
double fd_gradient_error(const MullerSystem& sys, const Eigen::MatrixXd& g, double step = 1e-5);

/// Random feasible interior point: random orthogonal orbitals, occupations
/// uniform in (0.05, 0.95).
Eigen::MatrixXd random_interior_sqrt_density(Eigen::Index m, std::uint64_t seed);

double fd_gradient_audit(const BasisSet& basis, const NuclearFrame& frame, std::uint64_t seed);

}  // namespace muller
