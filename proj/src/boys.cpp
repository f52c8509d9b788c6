#include "muller/boys.hpp"

#include <cmath>
#include <numbers>

#include "muller/error.hpp"

namespace muller {

double boys_f0(double t) {
  if (!(t >= 0.0)) throw InvalidArgument("boys_f0: argument must be nonnegative");
  if (t < kBoysSeriesMax) {
    // Terms fall by ~t per order; 12 orders leave < 1e-24 at the switch point.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 12; ++k) {
      term *= -t / k;
      sum += term / (2 * k + 1);
    }
    return sum;
  }
  const double half_root_pi_over_t = 0.5 * std::sqrt(std::numbers::pi / t);
  if (t > kBoysAsymptoticMin) return half_root_pi_over_t;
  return half_root_pi_over_t * std::erf(std::sqrt(t));
}

}  // namespace muller
