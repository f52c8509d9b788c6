#include "muller/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "muller/error.hpp"
#include "muller/solver.hpp"

namespace muller {

namespace {

Eigen::MatrixXd random_orthogonal(Eigen::Index m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

RandomInstance random_instance_with(std::mt19937_64& rng, int max_basis,
                                    const std::function<Eigen::VectorXd(Eigen::Index)>& occupations) {
  // Even-tempered sets with a random start and ratio, the shape of every
  // atomic basis in this code; ratios below 2 make the overlap so
  // ill-conditioned that contractions lose digits.
  std::uniform_int_distribution<int> size(1, max_basis);
  std::uniform_real_distribution<double> log_start(std::log(0.02), std::log(1.0));
  std::uniform_real_distribution<double> ratio(2.0, 4.0);
  const int n = size(rng);
  const double a0 = std::exp(log_start(rng));
  const double b = ratio(rng);
  std::vector<Primitive> prims;
  for (int k = 0; k < n; ++k) prims.push_back(make_primitive({0.0, 0.0, 0.0}, a0 * std::pow(b, k)));
  RandomInstance inst;
  inst.basis = BasisSet(std::move(prims));
  inst.mats = one_electron_matrices(inst.basis, NuclearFrame());
  inst.eri = eri_tensor(inst.basis);
  inst.ortho = lowdin_orthonormalizer(inst.mats.overlap);
  const Eigen::Index m = inst.ortho.rank();
  inst.dm = dm_from_spectral(occupations(m), random_orthogonal(m, rng));
  return inst;
}

std::pair<double, double> direct_and_exchange(const RandomInstance& inst) {
  const auto e = energy_breakdown(inst.dm, inst.mats, inst.eri, NuclearFrame(), inst.ortho);
  return {e.direct, e.exchange};
}

}  // namespace

RandomInstance random_atomic_instance(std::mt19937_64& rng, int max_basis) {
  if (max_basis < 1) throw InvalidArgument("random_atomic_instance: max_basis must be >= 1");
  return random_instance_with(rng, max_basis, [&rng](Eigen::Index m) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::VectorXd occ(m);
    for (Eigen::Index i = 0; i < m; ++i) occ(i) = u(rng);
    return occ;
  });
}

double free_energy_slack(const RandomInstance& inst) {
  const auto e = energy_breakdown(inst.dm, inst.mats, inst.eri, NuclearFrame(), inst.ortho);
  return e.total_electronic + e.trace / 8.0;
}

Eigen::VectorXd brute_force_capped_simplex(const Eigen::VectorXd& x, double total, double cap) {
  const Eigen::Index m = x.size();
  if (m == 0 || m > 12) throw InvalidArgument("brute_force_capped_simplex: need 1 <= m <= 12");
  if (total < 0.0 || total > cap * static_cast<double>(m)) {
    throw InvalidArgument("brute_force_capped_simplex: infeasible total");
  }
  long cases = 1;
  for (Eigen::Index i = 0; i < m; ++i) cases *= 3;
  Eigen::VectorXd best;
  double best_dist = std::numeric_limits<double>::infinity();
  std::vector<int> state(static_cast<std::size_t>(m));
  for (long c = 0; c < cases; ++c) {
    long code = c;
    int free_count = 0;
    double fixed = 0.0;
    double free_sum = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const int s = static_cast<int>(code % 3);
      code /= 3;
      state[static_cast<std::size_t>(i)] = s;
      if (s == 1) fixed += cap;
      if (s == 2) {
        ++free_count;
        free_sum += x(i);
      }
    }
    Eigen::VectorXd l(m);
    if (free_count == 0) {
      if (std::abs(fixed - total) > 1e-12) continue;
      for (Eigen::Index i = 0; i < m; ++i) l(i) = state[static_cast<std::size_t>(i)] == 1 ? cap : 0.0;
    } else {
      const double mu = (free_sum + fixed - total) / free_count;
      bool ok = true;
      for (Eigen::Index i = 0; i < m && ok; ++i) {
        const int s = state[static_cast<std::size_t>(i)];
        l(i) = s == 0 ? 0.0 : s == 1 ? cap : x(i) - mu;
        if (s == 2 && (l(i) < -1e-14 || l(i) > cap + 1e-14)) ok = false;
      }
      if (!ok) continue;
    }
    const double dist = (l - x).norm();
    if (dist < best_dist) {
      best_dist = dist;
      best = l;
    }
  }
  return best;
}

bool InequalityAudit::passed() const {
  return free_bound_min_slack >= -1e-9 && exchange_min_slack >= -1e-9 &&
         lieb_thirring_min_slack >= 0.0 && rank_one_max_defect <= 1e-10 &&
         fractional_min_slack >= -1e-10 && gradient_max_error < 1e-6 &&
         projection_max_error <= 1e-8;
}

InequalityAudit run_inequality_audit(int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("run_inequality_audit: trials must be >= 1");
  const double inf = std::numeric_limits<double>::infinity();
  InequalityAudit a;
  a.trials = trials;
  a.seed = seed;
  a.free_bound_min_slack = inf;
  a.exchange_min_slack = inf;
  a.lieb_thirring_min_slack = inf;
  a.fractional_min_slack = inf;
  std::mt19937_64 rng(seed);
  const double lt = default_lieb_thirring_constant();

  for (int t = 0; t < trials; ++t) {
    const auto inst = random_atomic_instance(rng, 8);
    a.free_bound_min_slack = std::min(a.free_bound_min_slack, free_energy_slack(inst));
    for (double eps : {0.1, 1.0, 10.0}) {
      a.exchange_min_slack = std::min(
          a.exchange_min_slack, exchange_bound_slack(inst.dm, inst.mats, inst.eri, inst.ortho, eps));
    }
    a.lieb_thirring_min_slack = std::min(
        a.lieb_thirring_min_slack, lieb_thirring_slack(inst.dm, inst.mats, inst.basis, inst.ortho, lt));
  }

  for (int t = 0; t < trials; ++t) {
    const auto proj = random_instance_with(rng, 8, [&rng](Eigen::Index m) {
      std::uniform_int_distribution<Eigen::Index> pick(0, m - 1);
      Eigen::VectorXd occ = Eigen::VectorXd::Zero(m);
      occ(pick(rng)) = 1.0;
      return occ;
    });
    const auto [d, x] = direct_and_exchange(proj);
    a.rank_one_max_defect = std::max(a.rank_one_max_defect, std::abs(x - d) / std::max(1.0, d));

    const auto frac = random_instance_with(rng, 8, [&rng](Eigen::Index m) {
      std::uniform_real_distribution<double> u(0.05, 0.95);
      Eigen::VectorXd occ(m);
      for (Eigen::Index i = 0; i < m; ++i) occ(i) = u(rng);
      return occ;
    });
    const auto [df, xf] = direct_and_exchange(frac);
    a.fractional_min_slack = std::min(a.fractional_min_slack, xf - df);
  }

  const int grad_trials = std::max(1, trials / 25);
  std::uniform_real_distribution<double> charge(0.5, 4.0);
  for (int t = 0; t < grad_trials; ++t) {
    const auto inst = random_instance_with(rng, 6, [](Eigen::Index m) {
      return Eigen::VectorXd::Constant(m, 0.5);
    });
    const auto frame = NuclearFrame::atom(charge(rng));
    a.gradient_max_error = std::max(a.gradient_max_error, fd_gradient_audit(inst.basis, frame, rng()));
  }

  std::uniform_int_distribution<int> dim(1, 4);
  std::normal_distribution<double> normal(0.5, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    const int m = dim(rng);
    Eigen::VectorXd x(m);
    for (int i = 0; i < m; ++i) x(i) = normal(rng);
    const double total = u(rng) * m;
    const Eigen::VectorXd fast = project_capped_simplex(x, total);
    const Eigen::VectorXd slow = brute_force_capped_simplex(x, total);
    a.projection_max_error = std::max(a.projection_max_error, (fast - slow).norm());
  }
  return a;
}

}  // namespace muller
