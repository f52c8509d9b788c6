#include "muller/thomas_fermi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>

#include <boost/numeric/odeint.hpp>

#include "muller/error.hpp"

namespace muller {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kPi = std::numbers::pi;

// The kinetic prefactor (3/10)(3 pi^2)^{2/3} and the constant
// 2^{5/3}(6 pi^2)^{-2/3} of the TF equation rho^{2/3} = const (phi - mu) are
// linked by const = 3 / (5 c_K).
const bool kConstantsConsistent = [] {
  const double ck = 0.3 * std::pow(3.0 * kPi * kPi, 2.0 / 3.0);
  const double eq = std::pow(2.0, 5.0 / 3.0) * std::pow(6.0 * kPi * kPi, -2.0 / 3.0);
  if (std::abs(3.0 / (5.0 * ck) - eq) > 1e-14 * eq) {
    throw InternalError("Thomas-Fermi constants are inconsistent");
  }
  return true;
}();

// In t = sqrt(x): d chi / dt = 2 t p, dp / dt = 2 chi^{3/2}, with p = d chi / dx.
using State = std::array<double, 2>;

void tf_rhs(const State& y, State& dy, double t) {
  dy[0] = 2.0 * t * y[1];
  const double c = std::max(y[0], 0.0);
  dy[1] = 2.0 * c * std::sqrt(c);
}

// Integrates from (t0, y0) through the sample times (monotone, in the
// direction of travel) and hands each dense-output sample to `visit`, which
// returns false to stop. `leave` is checked on the state after every step;
// when it holds the march stops and that state is returned.
std::optional<State> march(const State& y0, double t0, const std::vector<double>& times,
                           double tolerance,
                           const std::function<bool(std::size_t, const State&)>& visit,
                           const std::function<bool(const State&)>& leave = nullptr) {
  if (times.empty()) return std::nullopt;
  const double direction = times.back() >= t0 ? 1.0 : -1.0;
  auto stepper = odeint::make_dense_output(tolerance, tolerance, odeint::runge_kutta_dopri5<State>());
  stepper.initialize(y0, t0, direction * 1e-3);
  std::size_t k = 0;
  State y{};
  while (k < times.size()) {
    while (k < times.size() && direction * (times[k] - stepper.current_time()) <= 0.0) {
      stepper.calc_state(times[k], y);
      if (!visit(k, y)) return std::nullopt;
      ++k;
    }
    if (k == times.size()) return std::nullopt;
    stepper.do_step(tf_rhs);
    const auto& cur = stepper.current_state();
    if (!std::isfinite(cur[0]) || !std::isfinite(cur[1])) {
      throw InternalError("Thomas-Fermi integration produced a non-finite state");
    }
    if (leave && leave(cur)) return cur;
  }
  return std::nullopt;
}

bool decided(const State& y) { return y[0] < 0.0 || y[1] > 0.0; }

std::vector<double> log_spaced(double lo, double hi, int points) {
  std::vector<double> v(static_cast<std::size_t>(points));
  const double step = std::log(hi / lo) / (points - 1);
  for (int k = 0; k < points; ++k) v[static_cast<std::size_t>(k)] = lo * std::exp(step * k);
  v.back() = hi;
  return v;
}

constexpr double kXMin = 1e-8;
constexpr double kXMaxNeutral = 100.0;
constexpr int kSamples = 4001;
constexpr double kOdeTolerance = 1e-13;

struct Trajectory {
  std::vector<double> chi;
  std::vector<double> dchi;
  std::size_t valid = 0;  // samples before chi < 0 or chi' > 0
};

Trajectory outward(double slope, const std::vector<double>& x, double tolerance) {
  std::vector<double> times(x.size());
  std::transform(x.begin(), x.end(), times.begin(), [](double v) { return std::sqrt(v); });
  Trajectory tr;
  march({1.0, slope}, 0.0, times, tolerance, [&](std::size_t, const State& y) {
    if (y[0] <= 0.0 || y[1] >= 0.0) return false;
    tr.chi.push_back(y[0]);
    tr.dchi.push_back(y[1]);
    return true;
  }, decided);
  tr.valid = tr.chi.size();
  return tr;
}

struct Bracket {
  double steep;    // crosses zero
  double shallow;  // turns up
};

Bracket neutral_bracket(double tolerance) {
  double steep = -1.7;
  double shallow = -1.5;
  if (tf_shoot(steep, 200.0, tolerance).fate != TfShot::Fate::crosses_zero ||
      tf_shoot(shallow, 200.0, tolerance).fate != TfShot::Fate::turns_up) {
    throw InternalError("tf_universal_slope: initial bracket does not straddle the solution");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (steep + shallow);
    if (mid == steep || mid == shallow) break;
    const auto shot = tf_shoot(mid, 200.0, tolerance);
    if (shot.fate == TfShot::Fate::crosses_zero) {
      steep = mid;
    } else if (shot.fate == TfShot::Fate::turns_up) {
      shallow = mid;
    } else {
      steep = shallow = mid;
      break;
    }
  }
  return {steep, shallow};
}

// chi(0) from an inward integration that starts at the ion edge x0 with
// chi(x0) = 0 and x0 chi'(x0) = -q.
double inward_chi0(double x0, double q) {
  double chi0 = 0.0;
  // Past chi = 2 the inward solution can only grow (and may blow up).
  const auto left = march({0.0, -q / x0}, std::sqrt(x0), {0.0}, kOdeTolerance,
                          [&](std::size_t, const State& y) {
                            chi0 = y[0];
                            return true;
                          },
                          [](const State& y) { return y[0] > 2.0; });
  return left ? (*left)[0] : chi0;
}

double hermite(double x0, double x1, double f0, double f1, double d0, double d1, double xv) {
  const double h = x1 - x0;
  const double s = (xv - x0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * f1 +
         (s3 - s2) * h * d1;
}

// Trapezoid rule in u = ln r for int g(r) dr = int g r du over the samples.
double log_trapezoid(const std::vector<double>& r, const std::vector<double>& g_times_r) {
  double sum = 0.0;
  for (std::size_t k = 1; k < r.size(); ++k) {
    sum += 0.5 * (g_times_r[k] + g_times_r[k - 1]) * std::log(r[k] / r[k - 1]);
  }
  return sum;
}

}  // namespace

double tf_default_kinetic_prefactor() { return 0.3 * std::pow(3.0 * kPi * kPi, 2.0 / 3.0); }

TfShot tf_shoot(double slope, double x_max, double tolerance) {
  TfShot shot;
  const auto x = log_spaced(1e-6, x_max, 2001);
  std::vector<double> times(x.size());
  std::transform(x.begin(), x.end(), times.begin(), [](double v) { return std::sqrt(v); });
  const auto left = march({1.0, slope}, 0.0, times, tolerance, [&](std::size_t k, const State& y) {
    shot.x_end = x[k];
    if (y[0] < 0.0) {
      shot.fate = TfShot::Fate::crosses_zero;
      return false;
    }
    if (y[1] > 0.0) {
      shot.fate = TfShot::Fate::turns_up;
      return false;
    }
    return true;
  }, decided);
  if (left) {
    shot.fate = (*left)[0] < 0.0 ? TfShot::Fate::crosses_zero : TfShot::Fate::turns_up;
  }
  return shot;
}

double tf_universal_slope(double tolerance) {
  if (!(tolerance > 0.0)) throw InvalidArgument("tf_universal_slope: tolerance must be positive");
  const auto b = neutral_bracket(tolerance);
  return 0.5 * (b.steep + b.shallow);
}

double TfAtomSolution::chi_at(double xv) const {
  if (xv < 0.0) throw InvalidArgument("chi_at: negative x");
  if (x.empty()) throw InvalidArgument("chi_at: empty solution");
  if (xv <= x.front()) return 1.0 + slope * xv + 4.0 / 3.0 * xv * std::sqrt(xv);
  if (xv >= x.back()) {
    if (!neutral()) return 0.0;
    const double ratio = x.back() / xv;
    return chi.back() * ratio * ratio * ratio;
  }
  const auto it = std::upper_bound(x.begin(), x.end(), xv);
  const auto k = static_cast<std::size_t>(it - x.begin());
  return hermite(x[k - 1], x[k], chi[k - 1], chi[k], dchi[k - 1], dchi[k], xv);
}

double TfAtomSolution::chi_integral(double xv) const {
  if (xv < 0.0) throw InvalidArgument("chi_integral: negative x");
  if (x.empty()) throw InvalidArgument("chi_integral: empty solution");
  auto head = [&](double v) { return v + 0.5 * slope * v * v + 8.0 / 15.0 * v * v * std::sqrt(v); };
  if (xv <= x.front()) return head(xv);
  if (xv >= x.back()) {
    if (!neutral()) return chi_cumulative.back();
    const double xl = x.back();
    return chi_cumulative.back() + 0.5 * chi.back() * xl * (1.0 - (xl / xv) * (xl / xv));
  }
  const auto it = std::upper_bound(x.begin(), x.end(), xv);
  const auto k = static_cast<std::size_t>(it - x.begin());
  // Exact integral of the Hermite cubic from x[k-1] to xv.
  const double h = x[k] - x[k - 1];
  const double t = (xv - x[k - 1]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double t4 = t3 * t;
  const double a = 0.5 * t4 - t3 + t;
  const double bcoef = 0.25 * t4 - 2.0 / 3.0 * t3 + 0.5 * t2;
  const double c = -0.5 * t4 + t3;
  const double d = 0.25 * t4 - t3 / 3.0;
  return chi_cumulative[k - 1] +
         h * (a * chi[k - 1] + bcoef * h * dchi[k - 1] + c * chi[k] + d * h * dchi[k]);
}

double TfAtomSolution::screened_potential(double rv) const {
  if (!(rv > 0.0)) throw InvalidArgument("screened_potential: r must be positive");
  return std::max(z * chi_at(rv / length_scale) / rv, 0.0);
}

double TfAtomSolution::density(double rv) const {
  const double kappa = 5.0 * kinetic_prefactor / 3.0;
  const double v = screened_potential(rv) / kappa;
  return v * std::sqrt(v);
}

TfAtomSolution tf_atom(double z, double n, double kinetic_prefactor) {
  if (!(z > 0.0) || !(n > 0.0)) throw InvalidArgument("tf_atom: Z and N must be positive");
  if (!(kinetic_prefactor > 0.0)) throw InvalidArgument("tf_atom: c_K must be positive");
  (void)kConstantsConsistent;

  TfAtomSolution s;
  s.z = z;
  s.n = std::min(n, z);
  s.kinetic_prefactor = kinetic_prefactor;
  const double kappa = 5.0 * kinetic_prefactor / 3.0;
  const double b = std::pow(4.0 * kPi, -2.0 / 3.0) * kappa * std::pow(z, -1.0 / 3.0);
  s.length_scale = b;

  if (n >= z) {
    // Average the two final bracketing trajectories while they agree.
    const auto br = neutral_bracket(kOdeTolerance);
    const auto x = log_spaced(kXMin, kXMaxNeutral, kSamples);
    const auto steep = outward(br.steep, x, kOdeTolerance);
    const auto shallow = outward(br.shallow, x, kOdeTolerance);
    const std::size_t common = std::min(steep.valid, shallow.valid);
    std::size_t keep = 0;
    while (keep < common &&
           std::abs(steep.chi[keep] - shallow.chi[keep]) <= 1e-9 * steep.chi[keep]) {
      ++keep;
    }
    if (keep < 2 || x[keep - 1] < 20.0) {
      throw InternalError("tf_atom: neutral trajectory not resolved far enough");
    }
    s.slope = 0.5 * (br.steep + br.shallow);
    s.mu = 0.0;
    for (std::size_t k = 0; k < keep; ++k) {
      s.x.push_back(x[k]);
      s.chi.push_back(0.5 * (steep.chi[k] + shallow.chi[k]));
      s.dchi.push_back(0.5 * (steep.dchi[k] + shallow.dchi[k]));
    }
  } else {
    const double q = 1.0 - n / z;
    // chi(0) increases with the edge x0; bracket then bisect in ln x0.
    double lo = 1.0;
    double hi = 1.0;
    while (inward_chi0(lo, q) > 1.0) lo *= 0.5;
    while (inward_chi0(hi, q) < 1.0) {
      hi *= 2.0;
      if (hi > 1e6) throw InternalError("tf_atom: ion edge bracket failed");
    }
    for (int it = 0; it < 200 && hi / lo > 1.0 + 1e-15; ++it) {
      const double mid = std::sqrt(lo * hi);
      (inward_chi0(mid, q) < 1.0 ? lo : hi) = mid;
    }
    const double x0 = std::sqrt(lo * hi);
    s.x0 = x0;
    s.mu = (z - n) / (b * x0);
    auto x = log_spaced(kXMin, x0, kSamples);
    std::vector<double> times(x.size());
    std::transform(x.rbegin(), x.rend(), times.begin(), [](double v) { return std::sqrt(v); });
    std::vector<double> chi(x.size());
    std::vector<double> dchi(x.size());
    double p0 = 0.0;
    march({0.0, -q / x0}, std::sqrt(x0), times, kOdeTolerance, [&](std::size_t k, const State& y) {
      chi[x.size() - 1 - k] = y[0];
      dchi[x.size() - 1 - k] = y[1];
      return true;
    });
    march({0.0, -q / x0}, std::sqrt(x0), {0.0}, kOdeTolerance, [&](std::size_t, const State& y) {
      p0 = y[1];
      return true;
    });
    s.slope = p0;
    chi.back() = 0.0;
    s.x = std::move(x);
    s.chi = std::move(chi);
    s.dchi = std::move(dchi);
  }

  // Samples.
  const std::size_t m = s.x.size();
  s.chi_cumulative.resize(m);
  s.chi_cumulative[0] = s.x[0] + 0.5 * s.slope * s.x[0] * s.x[0] +
                        8.0 / 15.0 * s.x[0] * s.x[0] * std::sqrt(s.x[0]);
  for (std::size_t k = 1; k < m; ++k) {
    const double h = s.x[k] - s.x[k - 1];
    s.chi_cumulative[k] = s.chi_cumulative[k - 1] + 0.5 * h * (s.chi[k - 1] + s.chi[k]) +
                          h * h * (s.dchi[k - 1] - s.dchi[k]) / 12.0;
  }
  s.r.resize(m);
  s.rho.resize(m);
  s.phi.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    s.r[k] = b * s.x[k];
    const double screened = std::max(z * s.chi[k] / s.r[k], 0.0);
    const double v = screened / kappa;
    s.rho[k] = v * std::sqrt(v);
    s.phi[k] = screened + s.mu;
  }

  // E = -K with K = (3/7)(A + mu N) and A = Z^2 (chi'(x0) - chi'(0)) / b.
  const double edge_slope = s.neutral() ? 0.0 : -(1.0 - s.n / z) / s.x0;
  const double attraction = z * z * (edge_slope - s.slope) / b;
  s.energy = -3.0 / 7.0 * (attraction + s.mu * s.n);

  // Direct quadrature of c_K int rho^{5/3} - Z int rho / r + D[rho].
  std::vector<double> kin(m), att(m), chg(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double r = s.r[k];
    const double w = 4.0 * kPi * r * r * r;  // 4 pi r^2 dr = w du
    kin[k] = w * std::pow(s.rho[k], 5.0 / 3.0);
    att[k] = w * s.rho[k] / r;
    chg[k] = w * s.rho[k];
  }
  // Near the nucleus rho ~ r^{-3/2}: the integrands above behave as r^{1/2},
  // r^{1/2} and r^{3/2}, so int_0^{r_0} = value / power.
  double kinetic = kin[0] / 0.5 + log_trapezoid(s.r, kin);
  double attr = att[0] / 0.5 + log_trapezoid(s.r, att);
  double electrons = chg[0] / 1.5 + log_trapezoid(s.r, chg);

  std::vector<double> q(m);
  q[0] = chg[0] / 1.5;
  for (std::size_t k = 1; k < m; ++k) {
    q[k] = q[k - 1] + 0.5 * (chg[k] + chg[k - 1]) * std::log(s.r[k] / s.r[k - 1]);
  }
  std::vector<double> self(m);
  for (std::size_t k = 0; k < m; ++k) self[k] = q[k] * q[k] / s.r[k];  // (Q^2 / r^2) r
  double direct = 0.5 * (self[0] / 2.0 + log_trapezoid(s.r, self));

  const double rl = s.r.back();
  if (s.neutral()) {
    // Charge and attraction outside the last sample follow from Poisson's
    // equation, (r phi)'' = 4 pi r rho: Q_out = Z (chi - x chi') and
    // int_out 4 pi r rho dr = -Z chi' / b.
    const double xl = s.x.back();
    const double q_out = z * (s.chi.back() - xl * s.dchi.back());
    electrons += q_out;
    attr += -z * s.dchi.back() / b;
    kinetic += kin.back() / 7.0;  // rho ~ r^{-6}
    // Q(r) = Q_inf - c r^{-3} outside.
    const double q_inf = q.back() + q_out;
    const double c = q_out * rl * rl * rl;
    direct += 0.5 * (q_inf * q_inf / rl - 0.5 * q_inf * c / std::pow(rl, 4) +
                     c * c / (7.0 * std::pow(rl, 7)));
  } else {
    direct += 0.5 * q.back() * q.back() / rl;
  }
  s.electrons_quadrature = electrons;
  s.energy_quadrature = kinetic_prefactor * kinetic - z * attr + direct;
  return s;
}

double tf_equation_residual(const TfAtomSolution& s) {
  const double c = 3.0 / (5.0 * s.kinetic_prefactor);
  double worst = 0.0;
  for (std::size_t k = 0; k < s.r.size(); ++k) {
    const double lhs = std::pow(s.rho[k], 2.0 / 3.0);
    const double rhs = c * std::max(s.phi[k] - s.mu, 0.0);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rhs));
  }
  return worst;
}

void write_tf_radial_csv(const TfAtomSolution& s, std::ostream& out) {
  out << "r,rho,phi\n";
  out.precision(17);
  for (std::size_t k = 0; k < s.r.size(); ++k) {
    out << s.r[k] << ',' << s.rho[k] << ',' << s.phi[k] << '\n';
  }
}

double radial_coulomb_self_energy(const std::vector<double>& r, const std::vector<double>& f) {
  if (r.size() != f.size() || r.size() < 2) {
    throw InvalidArgument("radial_coulomb_self_energy: need matching samples, at least two");
  }
  for (std::size_t k = 1; k < r.size(); ++k) {
    if (!(r[k] > r[k - 1]) || !(r[0] > 0.0)) {
      throw InvalidArgument("radial_coulomb_self_energy: radii must be positive and increasing");
    }
  }
  double q = 0.0;
  double prev_charge = 4.0 * kPi * r[0] * r[0] * r[0] * f[0];
  double prev = 0.0;
  double sum = 0.0;
  for (std::size_t k = 1; k < r.size(); ++k) {
    const double du = std::log(r[k] / r[k - 1]);
    const double charge = 4.0 * kPi * r[k] * r[k] * r[k] * f[k];
    q += 0.5 * (charge + prev_charge) * du;
    const double cur = q * q / r[k];
    sum += 0.5 * (cur + prev) * du;
    prev = cur;
    prev_charge = charge;
  }
  // f vanishes past the last radius; the enclosed charge is then constant.
  sum += q * q / r.back();
  return 0.5 * sum;
}

}  // namespace muller
