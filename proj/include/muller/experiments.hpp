#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "muller/basis.hpp"
#include "muller/radial.hpp"
#include "muller/solver.hpp"
#include "muller/thomas_fermi.hpp"

namespace muller {

/// Basis and solver settings shared by the molecular experiments. Scans and
/// atomic references always run with trace <= N and the tr(gamma)/8 shift;
/// `solve.mode` and `solve.shift_included` are overridden there.
struct ExperimentOptions {
  int basis_per_center = 8;
  SolveOptions solve;
};

/// Single-center solve on an even-tempered basis of n_basis functions.
SolveResult solve_atom(double z, double n, int n_basis, const SolveOptions& opts);

/// Atomic energy with trace <= N, shifted and unshifted; zero for N = 0.
struct AtomicReference {
  double z = 0.0;
  double n = 0.0;
  double shifted = 0.0;
  double unshifted = 0.0;
  double trace = 0.0;
  bool converged = true;
};
AtomicReference atomic_reference(double z, double n, const ExperimentOptions& opts);

struct CurvePoint {
  double r = 0.0;
  double electronic = 0.0;
  double total = 0.0;          ///< electronic + Z1 Z2 / R
  double shifted_total = 0.0;  ///< electronic + trace / 8 + Z1 Z2 / R
  double trace = 0.0;
  bool converged = false;
  bool warm_started = false;
  int iterations = 0;
  double gradient_norm = 0.0;
};

struct DissociationCurve {
  double z1 = 0.0;
  double z2 = 0.0;
  double n = 0.0;
  std::pair<double, double> split{0.0, 0.0};
  double asymptote = 0.0;  ///< shifted E_atom(N1, Z1) + shifted E_atom(N2, Z2)
  bool asymptote_converged = true;
  std::vector<CurvePoint> points;
};

/// Solves one diatomic geometry (union basis, trace <= N, shift included).
CurvePoint solve_diatomic_point(double z1, double z2, double n, double r,
                                const ExperimentOptions& opts,
                                const std::optional<Eigen::MatrixXd>& warm = std::nullopt,
                                Eigen::MatrixXd* kernel_out = nullptr);

/// Scan over increasing R, warm-starting each point from the previous one
/// with a cold multi-start fallback. The split defaults to charge-neutral
/// atoms capped at N.
DissociationCurve dissociation_scan(double z1, double z2, double n, const std::vector<double>& r_list,
                                    const ExperimentOptions& opts,
                                    std::optional<std::pair<double, double>> split = std::nullopt);

enum class MinimumKind { interior, dissociative, collapsing };
std::string to_string(MinimumKind kind);

struct BornOppenheimerMinimum {
  double r = 0.0;
  double energy = 0.0;
  MinimumKind kind = MinimumKind::interior;
  int evaluations = 0;
};

/// Golden-section refinement of the shifted total around the discrete argmin
/// down to an R bracket of `r_tolerance`. `evaluate` re-solves at a probe R.
/// An argmin at the largest R is reported as dissociative, at the smallest as
/// collapsing, without refinement.
BornOppenheimerMinimum born_oppenheimer_min(const DissociationCurve& curve,
                                            const std::function<double(double)>& evaluate,
                                            double r_tolerance = 1e-3);

/// Re-solving evaluator for born_oppenheimer_min on the curve's system.
std::function<double(double)> diatomic_evaluator(const DissociationCurve& curve,
                                                 const ExperimentOptions& opts);

enum class Verdict { binds, no_binding, inconclusive };
std::string to_string(Verdict v);

struct SplitRecord {
  double n1 = 0.0;
  double n2 = 0.0;
  double left = 0.0;   ///< min_R [shifted E(R) + U_R]
  double right = 0.0;  ///< shifted E_atom(N1, Z1) + shifted E_atom(N2, Z2)
  double margin = 0.0;
  Verdict verdict = Verdict::inconclusive;
  // Same comparison without the tr(gamma)/8 shift, from the sampled curve and
  // the same minimizers; informational.
  double left_unshifted = 0.0;
  double right_unshifted = 0.0;
  double margin_unshifted = 0.0;
};

struct BindingReport {
  double z1 = 0.0;
  double z2 = 0.0;
  double n = 0.0;
  std::vector<SplitRecord> splits;
  BornOppenheimerMinimum minimum;
  double tolerance = 0.0;
  bool all_converged = true;  ///< every scan point and atomic reference
  DissociationCurve curve;
};

/// margin < -10 tol -> binds; margin > 10 tol -> no_binding.
Verdict binding_verdict(double margin, double tolerance);

BindingReport binding_report(double z1, double z2, double n,
                             const std::vector<std::pair<double, double>>& splits,
                             const std::vector<double>& r_list, const ExperimentOptions& opts);

struct UnitedAtomSlack {
  double r = 0.0;
  double molecule = 0.0;      ///< electronic energy, trace = N
  double united_atom = 0.0;   ///< Z1 + Z2 on one center, trace = N
  double slack = 0.0;
  bool converged = false;
};

/// Single-center basis at the origin holding every exponent of the
/// diatomic union basis and of the even-tempered set for Z1 + Z2.
BasisSet united_atom_basis(double z1, double z2, int n_per_center);

std::vector<UnitedAtomSlack> united_atom_check(double z1, double z2, double n,
                                               const std::vector<double>& r_list,
                                               const ExperimentOptions& opts);

struct SaturationRow {
  double n = 0.0;
  double trace = 0.0;
  double shifted = 0.0;
  bool converged = false;
};

std::vector<SaturationRow> saturation_scan(double z, const std::vector<double>& n_list,
                                           const ExperimentOptions& opts);

/// D[rho_gamma - rho_TF] for a single-center atomic solution, by the enclosed
/// charge formula on a logarithmic grid.
double tf_density_distance(const BasisSet& basis, const SolveResult& result,
                           const TfAtomSolution& tf, const LogGrid& grid);

}  // namespace muller
