#pragma once

namespace muller {

// Switch points for boys_f0. Below kBoysSeriesMax the Taylor series
// sum_k (-t)^k / (k! (2k+1)) is used; above kBoysAsymptoticMin the erf term
// equals 1 to double precision and F0 = sqrt(pi/t)/2; in between,
// F0 = sqrt(pi/t) erf(sqrt t) / 2.
inline constexpr double kBoysSeriesMax = 1e-2;
inline constexpr double kBoysAsymptoticMin = 40.0;

/// F0(t) = int_0^1 exp(-t u^2) du for t >= 0.
double boys_f0(double t);

}  // namespace muller
