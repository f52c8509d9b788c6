#pragma once

#include <cstddef>
#include <vector>

namespace muller {

/// Vertex grid on a cube with n intervals of width h per side; values are
/// stored for all (n + 1)^3 nodes, boundary included, k fastest.
struct CubeGrid {
  int n = 0;
  double h = 0.0;

  std::size_t side() const { return static_cast<std::size_t>(n) + 1; }
  std::size_t size() const { return side() * side() * side(); }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * side() + static_cast<std::size_t>(j)) * side() +
           static_cast<std::size_t>(k);
  }
};

struct MultigridStats {
  int cycles = 0;
  double initial_residual = 0.0;  ///< max norm
  double final_residual = 0.0;
  bool converged = false;
};

/// Solves (L_h - c) u = f with u = 0 on the boundary, where L_h is the
/// 7-point Laplacian and c >= 0 is given per node. V(2,2) cycles with
/// red-black Gauss-Seidel, full weighting, trilinear prolongation; levels are
/// halved while the interval count stays even and above 4.
class ScreenedPoissonSolver {
 public:
  ScreenedPoissonSolver(const CubeGrid& grid, std::vector<double> c);

  /// Cycles until the residual max norm is below tol (absolute) or
  /// max_cycles is reached. u holds the initial guess on entry.
  MultigridStats solve(std::vector<double>& u, const std::vector<double>& f, double tol,
                       int max_cycles = 100) const;

  /// Max norm of f - (L_h - c) u over interior nodes.
  double residual_norm(const std::vector<double>& u, const std::vector<double>& f) const;

  int levels() const { return static_cast<int>(levels_.size()); }

 private:
  struct Level {
    CubeGrid grid;
    std::vector<double> c;
  };
  void cycle(std::size_t level, std::vector<double>& u, const std::vector<double>& f) const;

  std::vector<Level> levels_;
};

/// (L_h u)(node) at interior nodes, 0 on the boundary.
std::vector<double> apply_laplacian(const CubeGrid& grid, const std::vector<double>& u);

}  // namespace muller
