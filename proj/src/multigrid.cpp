#include "muller/multigrid.hpp"

#include <algorithm>
#include <cmath>

#include "muller/error.hpp"

namespace muller {

namespace {

void smooth(const CubeGrid& g, const std::vector<double>& c, std::vector<double>& u,
            const std::vector<double>& f, int sweeps) {
  const int n = g.n;
  const double h2 = g.h * g.h;
  const std::size_t s1 = g.side();
  const std::size_t s2 = s1 * s1;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (int color = 0; color < 2; ++color) {
      for (int i = 1; i < n; ++i) {
        for (int j = 1; j < n; ++j) {
          const int k0 = 1 + ((i + j + 1 + color) & 1);
          std::size_t p = g.index(i, j, k0);
          for (int k = k0; k < n; k += 2, p += 2) {
            const double nb = u[p - s2] + u[p + s2] + u[p - s1] + u[p + s1] + u[p - 1] + u[p + 1];
            u[p] = (nb - h2 * f[p]) / (6.0 + h2 * c[p]);
          }
        }
      }
    }
  }
}

std::vector<double> residual(const CubeGrid& g, const std::vector<double>& c,
                             const std::vector<double>& u, const std::vector<double>& f) {
  std::vector<double> r(g.size(), 0.0);
  const int n = g.n;
  const double inv_h2 = 1.0 / (g.h * g.h);
  const std::size_t s1 = g.side();
  const std::size_t s2 = s1 * s1;
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j < n; ++j) {
      std::size_t p = g.index(i, j, 1);
      for (int k = 1; k < n; ++k, ++p) {
        const double lap =
            (u[p - s2] + u[p + s2] + u[p - s1] + u[p + s1] + u[p - 1] + u[p + 1] - 6.0 * u[p]) *
            inv_h2;
        r[p] = f[p] - (lap - c[p] * u[p]);
      }
    }
  }
  return r;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Full weighting: tensor product of (1/4, 1/2, 1/4).
std::vector<double> restrict_full(const CubeGrid& fine, const CubeGrid& coarse,
                                  const std::vector<double>& r) {
  std::vector<double> out(coarse.size(), 0.0);
  constexpr double w[3] = {0.25, 0.5, 0.25};
  for (int i = 1; i < coarse.n; ++i) {
    for (int j = 1; j < coarse.n; ++j) {
      for (int k = 1; k < coarse.n; ++k) {
        double sum = 0.0;
        for (int a = -1; a <= 1; ++a) {
          for (int b = -1; b <= 1; ++b) {
            for (int d = -1; d <= 1; ++d) {
              sum += w[a + 1] * w[b + 1] * w[d + 1] * r[fine.index(2 * i + a, 2 * j + b, 2 * k + d)];
            }
          }
        }
        out[coarse.index(i, j, k)] = sum;
      }
    }
  }
  return out;
}

void prolong_add(const CubeGrid& coarse, const CubeGrid& fine, const std::vector<double>& e,
                 std::vector<double>& u) {
  for (int i = 1; i < fine.n; ++i) {
    const int i0 = i / 2;
    const int i1 = (i + 1) / 2;
    for (int j = 1; j < fine.n; ++j) {
      const int j0 = j / 2;
      const int j1 = (j + 1) / 2;
      for (int k = 1; k < fine.n; ++k) {
        const int k0 = k / 2;
        const int k1 = (k + 1) / 2;
        const double v = e[coarse.index(i0, j0, k0)] + e[coarse.index(i0, j0, k1)] +
                         e[coarse.index(i0, j1, k0)] + e[coarse.index(i0, j1, k1)] +
                         e[coarse.index(i1, j0, k0)] + e[coarse.index(i1, j0, k1)] +
                         e[coarse.index(i1, j1, k0)] + e[coarse.index(i1, j1, k1)];
        u[fine.index(i, j, k)] += 0.125 * v;
      }
    }
  }
}

}  // namespace

ScreenedPoissonSolver::ScreenedPoissonSolver(const CubeGrid& grid, std::vector<double> c) {
  if (grid.n < 2 || !(grid.h > 0.0)) throw InvalidArgument("multigrid: need n >= 2 and h > 0");
  if (c.size() != grid.size()) throw InvalidArgument("multigrid: coefficient size mismatch");
  for (double v : c) {
    if (!(v >= 0.0)) throw InvalidArgument("multigrid: screening coefficient must be >= 0");
  }
  levels_.push_back({grid, std::move(c)});
  while (levels_.back().grid.n % 2 == 0 && levels_.back().grid.n > 4) {
    const Level& fine = levels_.back();
    CubeGrid coarse{fine.grid.n / 2, 2.0 * fine.grid.h};
    std::vector<double> cc(coarse.size(), 0.0);
    for (int i = 0; i <= coarse.n; ++i) {
      for (int j = 0; j <= coarse.n; ++j) {
        for (int k = 0; k <= coarse.n; ++k) {
          cc[coarse.index(i, j, k)] = fine.c[fine.grid.index(2 * i, 2 * j, 2 * k)];
        }
      }
    }
    levels_.push_back({coarse, std::move(cc)});
  }
}

void ScreenedPoissonSolver::cycle(std::size_t level, std::vector<double>& u,
                                  const std::vector<double>& f) const {
  const Level& lv = levels_[level];
  if (level + 1 == levels_.size()) {
    smooth(lv.grid, lv.c, u, f, 4 * lv.grid.n * lv.grid.n);
    return;
  }
  smooth(lv.grid, lv.c, u, f, 2);
  const Level& next = levels_[level + 1];
  const auto r = residual(lv.grid, lv.c, u, f);
  const auto rc = restrict_full(lv.grid, next.grid, r);
  std::vector<double> e(next.grid.size(), 0.0);
  cycle(level + 1, e, rc);
  prolong_add(next.grid, lv.grid, e, u);
  smooth(lv.grid, lv.c, u, f, 2);
}

double ScreenedPoissonSolver::residual_norm(const std::vector<double>& u,
                                            const std::vector<double>& f) const {
  return max_abs(residual(levels_[0].grid, levels_[0].c, u, f));
}

MultigridStats ScreenedPoissonSolver::solve(std::vector<double>& u, const std::vector<double>& f,
                                            double tol, int max_cycles) const {
  const auto& g = levels_[0].grid;
  if (u.size() != g.size() || f.size() != g.size()) {
    throw InvalidArgument("multigrid: field size mismatch");
  }
  MultigridStats st;
  st.initial_residual = residual_norm(u, f);
  st.final_residual = st.initial_residual;
  while (st.final_residual > tol && st.cycles < max_cycles) {
    cycle(0, u, f);
    ++st.cycles;
    st.final_residual = residual_norm(u, f);
  }
  st.converged = st.final_residual <= tol;
  return st;
}

std::vector<double> apply_laplacian(const CubeGrid& grid, const std::vector<double>& u) {
  if (u.size() != grid.size()) throw InvalidArgument("apply_laplacian: size mismatch");
  const std::vector<double> zero(grid.size(), 0.0);
  auto r = residual(grid, zero, u, zero);
  for (double& v : r) v = -v;
  return r;
}

}  // namespace muller
