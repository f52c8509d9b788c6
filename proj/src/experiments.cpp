#include "muller/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "muller/error.hpp"
#include "muller/integrals.hpp"

namespace muller {

namespace {

SolveOptions relaxed_shifted(const SolveOptions& base) {
  SolveOptions o = base;
  o.mode = TraceMode::at_most;
  o.shift_included = true;
  return o;
}

void check_r_list(const std::vector<double>& r_list) {
  if (r_list.empty()) throw InvalidArgument("R list must be nonempty");
  for (std::size_t k = 0; k < r_list.size(); ++k) {
    if (!(r_list[k] > 0.0)) throw InvalidArgument("R values must be positive");
    if (k > 0 && !(r_list[k] > r_list[k - 1])) {
      throw InvalidArgument("R list must be strictly increasing");
    }
  }
}

}  // namespace

SolveResult solve_atom(double z, double n, int n_basis, const SolveOptions& opts) {
  if (!(z > 0.0)) throw InvalidArgument("solve_atom: Z must be positive");
  return minimize_muller(build_even_tempered_basis(z, n_basis), NuclearFrame::atom(z), n, opts);
}

AtomicReference atomic_reference(double z, double n, const ExperimentOptions& opts) {
  if (!(n >= 0.0)) throw InvalidArgument("atomic_reference: N must be >= 0");
  AtomicReference ref;
  ref.z = z;
  ref.n = n;
  if (n == 0.0) return ref;
  const auto r = solve_atom(z, n, opts.basis_per_center, relaxed_shifted(opts.solve));
  ref.shifted = r.breakdown.shifted;
  ref.unshifted = r.breakdown.total_electronic;
  ref.trace = r.trace_at_solution;
  ref.converged = r.converged;
  return ref;
}

CurvePoint solve_diatomic_point(double z1, double z2, double n, double r,
                                const ExperimentOptions& opts,
                                const std::optional<Eigen::MatrixXd>& warm,
                                Eigen::MatrixXd* kernel_out) {
  const auto frame = NuclearFrame::diatomic(z1, z2, r);
  const auto sys = MullerSystem::build(build_union_basis(frame, opts.basis_per_center), frame,
                                       opts.solve.prune_threshold);
  const auto res = minimize_muller(sys, n, relaxed_shifted(opts.solve), warm);
  CurvePoint p;
  p.r = r;
  p.electronic = res.breakdown.total_electronic;
  p.total = res.breakdown.total;
  p.shifted_total = res.breakdown.shifted + res.breakdown.nuclear_repulsion;
  p.trace = res.trace_at_solution;
  p.converged = res.converged;
  p.warm_started = res.warm_started;
  p.iterations = res.iterations;
  p.gradient_norm = res.gradient_norm;
  if (kernel_out != nullptr) *kernel_out = res.ao_sqrt_kernel;
  return p;
}

DissociationCurve dissociation_scan(double z1, double z2, double n, const std::vector<double>& r_list,
                                    const ExperimentOptions& opts,
                                    std::optional<std::pair<double, double>> split) {
  check_r_list(r_list);
  if (!(n > 0.0)) throw InvalidArgument("dissociation_scan: N must be positive");
  DissociationCurve c;
  c.z1 = z1;
  c.z2 = z2;
  c.n = n;
  if (split) {
    c.split = *split;
  } else {
    const double n1 = std::min(z1, n);
    c.split = {n1, std::min(z2, n - n1)};
  }
  const auto a1 = atomic_reference(z1, c.split.first, opts);
  const auto a2 = atomic_reference(z2, c.split.second, opts);
  c.asymptote = a1.shifted + a2.shifted;
  c.asymptote_converged = a1.converged && a2.converged;

  std::optional<Eigen::MatrixXd> warm;
  for (double r : r_list) {
    Eigen::MatrixXd kernel;
    c.points.push_back(solve_diatomic_point(z1, z2, n, r, opts, warm, &kernel));
    warm = kernel;
  }
  return c;
}

std::string to_string(MinimumKind kind) {
  switch (kind) {
    case MinimumKind::interior:
      return "interior";
    case MinimumKind::dissociative:
      return "dissociative";
    case MinimumKind::collapsing:
      return "collapsing";
  }
  return "unknown";
}

BornOppenheimerMinimum born_oppenheimer_min(const DissociationCurve& curve,
                                            const std::function<double(double)>& evaluate,
                                            double r_tolerance) {
  std::vector<const CurvePoint*> pts;
  for (const auto& p : curve.points) {
    if (p.converged) pts.push_back(&p);
  }
  if (pts.size() < 3) {
    throw InvalidArgument("born_oppenheimer_min: need at least 3 converged points");
  }
  if (!(r_tolerance > 0.0)) throw InvalidArgument("born_oppenheimer_min: tolerance must be > 0");
  std::size_t best = 0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (pts[k]->shifted_total < pts[best]->shifted_total) best = k;
  }
  BornOppenheimerMinimum m;
  m.r = pts[best]->r;
  m.energy = pts[best]->shifted_total;
  if (best + 1 == pts.size()) {
    m.kind = MinimumKind::dissociative;
    return m;
  }
  if (best == 0) {
    m.kind = MinimumKind::collapsing;
    return m;
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = pts[best - 1]->r;
  double b = pts[best + 1]->r;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = evaluate(x1);
  double f2 = evaluate(x2);
  m.evaluations = 2;
  auto consider = [&](double x, double f) {
    if (f < m.energy) {
      m.energy = f;
      m.r = x;
    }
  };
  consider(x1, f1);
  consider(x2, f2);
  while (b - a > r_tolerance) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = evaluate(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = evaluate(x2);
      consider(x2, f2);
    }
    ++m.evaluations;
  }
  return m;
}

std::function<double(double)> diatomic_evaluator(const DissociationCurve& curve,
                                                 const ExperimentOptions& opts) {
  return [curve, opts](double r) {
    return solve_diatomic_point(curve.z1, curve.z2, curve.n, r, opts).shifted_total;
  };
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::binds:
      return "binds";
    case Verdict::no_binding:
      return "no_binding";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Verdict binding_verdict(double margin, double tolerance) {
  if (margin < -10.0 * tolerance) return Verdict::binds;
  if (margin > 10.0 * tolerance) return Verdict::no_binding;
  return Verdict::inconclusive;
}

BindingReport binding_report(double z1, double z2, double n,
                             const std::vector<std::pair<double, double>>& splits,
                             const std::vector<double>& r_list, const ExperimentOptions& opts) {
  if (splits.empty()) throw InvalidArgument("binding_report: no splits given");
  for (const auto& [n1, n2] : splits) {
    if (!(n1 >= 0.0) || !(n2 >= 0.0) || n1 + n2 > n + 1e-12) {
      throw InvalidArgument("binding_report: splits need N1, N2 >= 0 and N1 + N2 <= N");
    }
  }
  BindingReport rep;
  rep.z1 = z1;
  rep.z2 = z2;
  rep.n = n;
  rep.tolerance = opts.solve.energy_tolerance;
  rep.curve = dissociation_scan(z1, z2, n, r_list, opts);
  rep.minimum = born_oppenheimer_min(rep.curve, diatomic_evaluator(rep.curve, opts));

  double left_unshifted = std::numeric_limits<double>::infinity();
  for (const auto& p : rep.curve.points) {
    if (p.converged) left_unshifted = std::min(left_unshifted, p.total);
    rep.all_converged = rep.all_converged && p.converged;
  }

  std::map<std::pair<double, double>, AtomicReference> cache;
  auto reference = [&](double z, double count) {
    const auto key = std::make_pair(z, count);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const auto ref = atomic_reference(z, count, opts);
    cache.emplace(key, ref);
    return ref;
  };
  for (const auto& [n1, n2] : splits) {
    SplitRecord s;
    s.n1 = n1;
    s.n2 = n2;
    s.left = rep.minimum.energy;
    const auto a1 = reference(z1, n1);
    const auto a2 = reference(z2, n2);
    s.right = a1.shifted + a2.shifted;
    s.margin = s.left - s.right;
    s.verdict = binding_verdict(s.margin, rep.tolerance);
    s.left_unshifted = left_unshifted;
    s.right_unshifted = a1.unshifted + a2.unshifted;
    s.margin_unshifted = s.left_unshifted - s.right_unshifted;
    rep.all_converged = rep.all_converged && a1.converged && a2.converged;
    rep.splits.push_back(s);
  }
  return rep;
}

BasisSet united_atom_basis(double z1, double z2, int n_per_center) {
  std::vector<double> exps;
  for (double z : {z1, z2, z1 + z2}) {
    for (const auto& p : build_even_tempered_basis(z, n_per_center).primitives()) {
      exps.push_back(p.exponent);
    }
  }
  std::sort(exps.begin(), exps.end());
  std::vector<Primitive> prims;
  for (double a : exps) {
    if (!prims.empty() && std::abs(a - prims.back().exponent) <= 1e-12 * a) continue;
    prims.push_back(make_primitive({0.0, 0.0, 0.0}, a));
  }
  return BasisSet(std::move(prims));
}

std::vector<UnitedAtomSlack> united_atom_check(double z1, double z2, double n,
                                               const std::vector<double>& r_list,
                                               const ExperimentOptions& opts) {
  check_r_list(r_list);
  SolveOptions o = opts.solve;
  o.mode = TraceMode::equal;
  o.shift_included = false;
  const auto united = minimize_muller(united_atom_basis(z1, z2, opts.basis_per_center),
                                      NuclearFrame::atom(z1 + z2), n, o);
  std::vector<UnitedAtomSlack> out;
  for (double r : r_list) {
    const auto frame = NuclearFrame::diatomic(z1, z2, r);
    const auto mol = minimize_muller(build_union_basis(frame, opts.basis_per_center), frame, n, o);
    UnitedAtomSlack s;
    s.r = r;
    s.molecule = mol.breakdown.total_electronic;
    s.united_atom = united.breakdown.total_electronic;
    s.slack = s.molecule - s.united_atom;
    s.converged = mol.converged && united.converged;
    out.push_back(s);
  }
  return out;
}

std::vector<SaturationRow> saturation_scan(double z, const std::vector<double>& n_list,
                                           const ExperimentOptions& opts) {
  if (n_list.empty()) throw InvalidArgument("saturation_scan: N list must be nonempty");
  std::vector<SaturationRow> rows;
  for (double n : n_list) {
    if (!(n > 0.0)) throw InvalidArgument("saturation_scan: N must be positive");
    const auto r = solve_atom(z, n, opts.basis_per_center, relaxed_shifted(opts.solve));
    rows.push_back({n, r.trace_at_solution, r.breakdown.shifted, r.converged});
  }
  return rows;
}

double tf_density_distance(const BasisSet& basis, const SolveResult& result,
                           const TfAtomSolution& tf, const LogGrid& grid) {
  const auto mats = one_electron_matrices(basis, NuclearFrame());
  const Eigen::MatrixXd& g = result.ao_sqrt_kernel;
  if (g.rows() != static_cast<Eigen::Index>(basis.size())) {
    throw InvalidArgument("tf_density_distance: result does not belong to this basis");
  }
  // X g^2 X^T = G S G for G = X g X^T, since X^T S X = I.
  const RadialDensity rho(basis, g * mats.overlap * g);
  const auto r = grid.nodes();
  std::vector<double> f(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) f[k] = rho(r[k]) - tf.density(r[k]);
  return radial_coulomb_self_energy(r, f);
}

}  // namespace muller
