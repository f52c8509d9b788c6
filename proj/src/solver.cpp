#include "muller/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "muller/error.hpp"

namespace muller {

void SolveOptions::validate() const {
  if (max_iterations < 1) throw InvalidArgument("SolveOptions: max_iterations must be >= 1");
  if (!(gradient_tolerance > 0.0)) throw InvalidArgument("SolveOptions: tolerance must be > 0");
  if (!(initial_step > 0.0)) throw InvalidArgument("SolveOptions: initial_step must be > 0");
  if (!(backtracking > 0.0 && backtracking < 1.0)) {
    throw InvalidArgument("SolveOptions: backtracking factor must lie in (0, 1)");
  }
  if (!(armijo > 0.0 && armijo < 1.0)) throw InvalidArgument("SolveOptions: armijo in (0, 1)");
  if (starts < 1) throw InvalidArgument("SolveOptions: starts must be >= 1");
}

namespace {

// Unit-cap version of project_sqrt_occupations.
Eigen::VectorXd project_unit_cap(const Eigen::VectorXd& x, double electrons, TraceMode mode) {
  const Eigen::Index m = x.size();
  if (mode == TraceMode::at_most) {
    Eigen::VectorXd clipped = x.cwiseMax(0.0).cwiseMin(1.0);
    if (clipped.squaredNorm() <= electrons) return clipped;
  } else if (electrons > static_cast<double>(m) * (1.0 + 1e-14)) {
    throw InvalidArgument("projection: more electrons than the occupation bound allows");
  }
  if (electrons == 0.0) return Eigen::VectorXd::Zero(m);

  // Entries that cannot grow under positive scaling are floored so that any
  // N <= m stays reachable; this only matters far from a solution.
  constexpr double floor = 1e-8;
  std::vector<double> s(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) s[static_cast<std::size_t>(i)] = std::max(x(i), 0.0);
  const auto positive = std::count_if(s.begin(), s.end(), [](double v) { return v > 0.0; });
  if (static_cast<double>(positive) < electrons) {
    for (auto& v : s) v = std::max(v, floor);
  }
  std::vector<double> sorted = s;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  // With the k largest entries saturated, c^2 sum_{i>k} s_i^2 = N - k.
  std::vector<double> tail(sorted.size() + 1, 0.0);
  for (std::size_t i = sorted.size(); i-- > 0;) tail[i] = tail[i + 1] + sorted[i] * sorted[i];
  // Pick the saturation count k whose scale is consistent with the ordering.
  // Rounding can leave no exactly consistent k; the least violating one is
  // then used, and the top k entries are set to the cap explicitly so that the
  // sum of squares matches N for the chosen branch.
  std::size_t best_k = sorted.size();
  double best_scale = std::numeric_limits<double>::infinity();
  double best_violation = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double rest = electrons - static_cast<double>(k);
    if (rest <= 0.0) break;
    if (tail[k] <= 0.0) break;
    const double c = std::sqrt(rest / tail[k]);
    const double low = k == 0 ? 0.0 : std::max(0.0, 1.0 - c * sorted[k - 1]);
    const double high = std::max(0.0, c * sorted[k] - 1.0);
    const double violation = low + high;
    if (violation < best_violation) {
      best_violation = violation;
      best_k = k;
      best_scale = c;
    }
    if (violation == 0.0) break;
  }
  Eigen::VectorXd out(m);
  if (best_k == sorted.size()) {
    // N is an integer no larger than the number of positive entries: the
    // N largest are saturated.
    const auto k = static_cast<std::size_t>(std::llround(electrons));
    const double threshold = k == 0 ? std::numeric_limits<double>::infinity() : sorted[k - 1];
    for (Eigen::Index i = 0; i < m; ++i) {
      out(i) = s[static_cast<std::size_t>(i)] >= threshold && threshold > 0.0 ? 1.0 : 0.0;
    }
    return out;
  }
  const double threshold =
      best_k == 0 ? std::numeric_limits<double>::infinity() : sorted[best_k - 1];
  for (Eigen::Index i = 0; i < m; ++i) {
    const double v = s[static_cast<std::size_t>(i)];
    out(i) = v >= threshold ? 1.0 : std::min(best_scale * v, 1.0);
  }
  return out;
}

}  // namespace

Eigen::VectorXd project_sqrt_occupations(const Eigen::VectorXd& x, double electrons,
                                         TraceMode mode, double cap) {
  if (!(electrons >= 0.0)) throw InvalidArgument("projection: electron count must be >= 0");
  if (!(cap > 0.0)) throw InvalidArgument("projection: cap must be positive");
  const double root = std::sqrt(cap);
  return root * project_unit_cap(x / root, electrons / cap, mode);
}

Eigen::MatrixXd project_sqrt_density(const Eigen::MatrixXd& g, double electrons, TraceMode mode,
                                     double cap) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (g + g.transpose()));
  const Eigen::VectorXd s = project_sqrt_occupations(eig.eigenvalues(), electrons, mode, cap);
  Eigen::MatrixXd out = eig.eigenvectors() * s.asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

namespace {

Eigen::MatrixXd symmetric_noise(Eigen::Index m, std::mt19937_64& rng, double amplitude) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) a(i, j) = a(j, i) = amplitude * u(rng);
  }
  return a;
}

// Aufbau on the core Hamiltonian: the k = ceil(N / cap) lowest orbitals at
// occupation N / k.
Eigen::MatrixXd aufbau_guess(const MullerSystem& sys, double electrons, double cap) {
  const Eigen::Index m = sys.rank();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys.core_orthonormal);
  const auto k = std::min<Eigen::Index>(m, static_cast<Eigen::Index>(std::ceil(electrons / cap)));
  Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
  if (k > 0) s.head(k).setConstant(std::sqrt(electrons / static_cast<double>(k)));
  return eig.eigenvectors() * s.asDiagonal() * eig.eigenvectors().transpose();
}

double frobenius_dot(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.cwiseProduct(b).sum();
}

// Objective E(g) (+ tr g^2 / 8) with the Coulomb and exchange matrices of the
// current point cached, so that E(g + d) - E(g) is formed from d directly.
// E is a quartic polynomial in g and the difference below is exact; it avoids
// subtracting two O(1) energies when steps change E by ~1e-15.
class Objective {
 public:
  Objective(const MullerSystem& sys, bool shift) : sys_(sys), shift_(shift) {}

  void set_point(const Eigen::MatrixXd& g) {
    g_ = g;
    const Eigen::MatrixXd p = sys_.ortho.kernel_to_ao(g * g);
    const Eigen::MatrixXd kernel = sys_.ortho.kernel_to_ao(g);
    jp_ = sys_.eri.coulomb(p);
    kg_ = sys_.eri.exchange(kernel);
    const Eigen::MatrixXd a = sys_.core_orthonormal + sys_.ortho.operator_to_orthonormal(jp_);
    const Eigen::MatrixXd k = sys_.ortho.operator_to_orthonormal(kg_);
    grad_ = a * g + g * a - k;
    grad_ = 0.5 * (grad_ + grad_.transpose());
    if (shift_) grad_ += 0.25 * g;
  }

  double value() const {
    const auto e = energy_of_sqrt(g_, sys_);
    return shift_ ? e.shifted : e.total_electronic;
  }

  double difference(const Eigen::MatrixXd& d) const {
    const Eigen::MatrixXd dgamma = g_ * d + d * g_ + d * d;
    const Eigen::MatrixXd dp = sys_.ortho.kernel_to_ao(dgamma);
    const Eigen::MatrixXd dk = sys_.ortho.kernel_to_ao(d);
    double diff = frobenius_dot(sys_.core_orthonormal, dgamma) + frobenius_dot(jp_, dp) +
                  0.5 * frobenius_dot(sys_.eri.coulomb(dp), dp) - frobenius_dot(kg_, dk) -
                  0.5 * frobenius_dot(sys_.eri.exchange(dk), dk);
    if (shift_) diff += dgamma.trace() / 8.0;
    return diff;
  }

  const Eigen::MatrixXd& point() const { return g_; }
  const Eigen::MatrixXd& gradient() const { return grad_; }

 private:
  const MullerSystem& sys_;
  bool shift_;
  Eigen::MatrixXd g_;
  Eigen::MatrixXd jp_;
  Eigen::MatrixXd kg_;
  Eigen::MatrixXd grad_;
};

constexpr double kStationarityProbe = 1e-4;

SolveResult descend(const MullerSystem& sys, double electrons, const SolveOptions& opts,
                    const Eigen::MatrixXd& start) {
  auto project = [&](const Eigen::MatrixXd& m) {
    return project_sqrt_density(m, electrons, opts.mode, opts.cap);
  };
  // ||g - P(g - tau grad)|| / tau for small tau: the norm of the gradient
  // component that the constraints do not absorb.
  auto stationarity = [&](const Objective& f) {
    const Eigen::MatrixXd moved = project(f.point() - kStationarityProbe * f.gradient());
    return (f.point() - moved).norm() / kStationarityProbe;
  };

  Objective f(sys, opts.shift_included);
  f.set_point(project(start));
  double value = f.value();

  SolveResult res;
  res.objective_history.push_back(value);
  double step = opts.initial_step;
  double pg = stationarity(f);
  int it = 0;
  while (it < opts.max_iterations && pg > opts.gradient_tolerance) {
    double t = step;
    // With tr g^2 = N active, E and E - multiplier (tr g^2 - N) agree on the
    // feasible set, but the latter ignores the ~1e-15 trace drift that
    // reconstruction from eigenvectors introduces along the large normal
    // component of the gradient.
    const double multiplier = opts.mode == TraceMode::equal
                                  ? frobenius_dot(f.gradient(), f.point()) / (2.0 * f.point().squaredNorm())
                                  : 0.0;
    Eigen::MatrixXd trial;
    double diff = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      trial = project(f.point() - t * f.gradient());
      const Eigen::MatrixXd d = trial - f.point();
      diff = f.difference(d) - multiplier * (2.0 * frobenius_dot(f.point(), d) + d.squaredNorm());
      if (diff <= -opts.armijo / t * d.squaredNorm() && diff <= 0.0) {
        accepted = true;
        break;
      }
      t *= opts.backtracking;
    }
    if (!accepted) {
      break;
    }
    ++it;
    const Eigen::MatrixXd ds = trial - f.point();
    const Eigen::MatrixXd old_grad = f.gradient();
    f.set_point(trial);
    const Eigen::MatrixXd dy = f.gradient() - old_grad;
    const double sy = ds.cwiseProduct(dy).sum();
    const double ss = ds.squaredNorm();
    // Barzilai-Borwein trial step for the next iteration.
    step = (sy > 0.0 && ss > 0.0) ? std::clamp(ss / sy, 1e-6, 1e3) : std::min(2.0 * t, 1e3);
    value += diff;
    res.objective_history.push_back(value);
    pg = stationarity(f);
  }
  res.iterations = it;
  res.gradient_norm = pg;
  res.converged = pg <= opts.gradient_tolerance;
  res.dm = dm_from_sqrt(f.point(), opts.cap);
  res.breakdown = energy_breakdown(res.dm, sys.matrices, sys.eri, sys.frame, sys.ortho);
  res.trace_at_solution = res.dm.trace();
  res.ao_sqrt_kernel = sys.ortho.kernel_to_ao(res.dm.sqrt_gamma());
  return res;
}

}  // namespace

SolveResult minimize_muller(const MullerSystem& sys, double electrons, const SolveOptions& opts,
                            const std::optional<Eigen::MatrixXd>& warm_ao_kernel) {
  opts.validate();
  if (!(electrons > 0.0)) throw InvalidArgument("minimize_muller: N must be positive");
  if (opts.mode == TraceMode::equal && electrons > opts.cap * static_cast<double>(sys.rank())) {
    throw InvalidArgument("minimize_muller: N exceeds the orthonormal basis rank");
  }
  if (warm_ao_kernel) {
    if (warm_ao_kernel->rows() != sys.ortho.basis_size() ||
        warm_ao_kernel->cols() != sys.ortho.basis_size()) {
      throw InvalidArgument("minimize_muller: warm-start kernel has the wrong dimension");
    }
    const Eigen::MatrixXd g0 =
        sys.ortho.kernel_to_orthonormal(*warm_ao_kernel, sys.matrices.overlap);
    SolveResult warm = descend(sys, electrons, opts, g0);
    warm.warm_started = true;
    if (warm.converged) return warm;
  }
  std::optional<SolveResult> best;
  for (int s = 0; s < opts.starts; ++s) {
    const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(s);
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd g0 = aufbau_guess(sys, electrons, opts.cap) + symmetric_noise(sys.rank(), rng, opts.noise);
    SolveResult r = descend(sys, electrons, opts, g0);
    r.seed = seed;
    // Strict comparison keeps the lowest start index on ties.
    if (!best || r.objective(opts.shift_included) < best->objective(opts.shift_included)) {
      best = std::move(r);
    }
  }
  return std::move(*best);
}

SolveResult minimize_muller(const BasisSet& basis, const NuclearFrame& frame, double electrons,
                            const SolveOptions& opts,
                            const std::optional<Eigen::MatrixXd>& warm_ao_kernel) {
  opts.validate();
  return minimize_muller(MullerSystem::build(basis, frame, opts.prune_threshold), electrons, opts,
                         warm_ao_kernel);
}

double fd_gradient_error(const MullerSystem& sys, const Eigen::MatrixXd& g, double step) {
  const Eigen::MatrixXd analytic = energy_gradient_g(g, sys);
  const Eigen::Index m = g.rows();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      Eigen::MatrixXd dir = Eigen::MatrixXd::Zero(m, m);
      dir(i, j) = dir(j, i) = 1.0;
      const double plus = energy_of_sqrt(g + step * dir, sys).total_electronic;
      const double minus = energy_of_sqrt(g - step * dir, sys).total_electronic;
      // The symmetric direction picks up both (i, j) and (j, i).
      const double fd = (plus - minus) / (2.0 * step) / (i == j ? 1.0 : 2.0);
      worst = std::max(worst, std::abs(fd - analytic(i, j)));
    }
  }
  const double scale = analytic.cwiseAbs().maxCoeff();
  return scale > 0.0 ? worst / scale : worst;
}

Eigen::MatrixXd random_interior_sqrt_density(Eigen::Index m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> occ(0.05, 0.95);
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd s(m);
  for (Eigen::Index i = 0; i < m; ++i) s(i) = std::sqrt(occ(rng));
  Eigen::MatrixXd g = q * s.asDiagonal() * q.transpose();
  return 0.5 * (g + g.transpose());
}

double fd_gradient_audit(const BasisSet& basis, const NuclearFrame& frame, std::uint64_t seed) {
  if (basis.size() > 8) throw InvalidArgument("fd_gradient_audit: basis larger than 8");
  const auto sys = MullerSystem::build(basis, frame);
  return fd_gradient_error(sys, random_interior_sqrt_density(sys.rank(), seed));
}

}  // namespace muller
