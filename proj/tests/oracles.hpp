#pragma once

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace oracle {

// Minimizes |l - x| over {0 <= l <= cap, sum l = total} by enumerating the
// lower and upper active sets as bit masks.
inline Eigen::VectorXd active_set_projection(const Eigen::VectorXd& x, double total, double cap) {
  const int m = static_cast<int>(x.size());
  Eigen::VectorXd best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int lower = 0; lower < (1 << m); ++lower) {
    for (int upper = 0; upper < (1 << m); ++upper) {
      if (lower & upper) continue;
      int nfree = 0;
      double rest = total;
      double xs = 0.0;
      for (int i = 0; i < m; ++i) {
        if (upper >> i & 1) rest -= cap;
        if (!((lower | upper) >> i & 1)) {
          ++nfree;
          xs += x(i);
        }
      }
      if (nfree == 0 && std::abs(rest) > 1e-12) continue;
      const double shift = nfree ? (xs - rest) / nfree : 0.0;
      Eigen::VectorXd l(m);
      bool ok = true;
      for (int i = 0; i < m; ++i) {
        l(i) = (lower >> i & 1) ? 0.0 : (upper >> i & 1) ? cap : x(i) - shift;
        if (l(i) < -1e-13 || l(i) > cap + 1e-13) ok = false;
      }
      if (ok && (l - x).norm() < best_d) {
        best_d = (l - x).norm();
        best = l;
      }
    }
  }
  return best;
}

}  // namespace oracle
