#include "muller/tf_grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "json.hpp"
#include "muller/error.hpp"

namespace muller {

namespace {

constexpr double kPi = std::numbers::pi;

double tf_density(double phi, double kappa) {
  const double v = std::max(phi, 0.0) / kappa;
  return v * std::sqrt(v);
}

double tf_density_derivative(double phi, double kappa) {
  return phi > 0.0 ? 1.5 * std::sqrt(phi / kappa) / kappa : 0.0;
}

double gk(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-11);
}

// Interaction of two frozen neutral atoms at distance R:
// Z2 phi1(R) - int rho2 phi1, with the spherical average of phi1 over the
// sphere of radius s around atom 2,
// <phi1>(s) = Z1 / (2 s R) int_{|R - s|}^{R + s} chi1(t / b1) dt.
double frozen_interaction(const TfAtomSolution& a1, const TfAtomSolution& a2, double r) {
  const double b1 = a1.length_scale;
  auto averaged = [&](double s) {
    if (s == 0.0) return a1.screened_potential(r);
    const double lo = std::abs(r - s) / b1;
    const double hi = (r + s) / b1;
    return a1.z * b1 / (2.0 * s * r) * (a1.chi_integral(hi) - a1.chi_integral(lo));
  };
  auto integrand = [&](double s) {
    if (s == 0.0) return 0.0;
    return 4.0 * kPi * s * s * a2.density(s) * averaged(s);
  };
  // s = u^2 on [0, R] removes the s^{1/2} behaviour at the nucleus.
  const double inner = gk([&](double u) { return 2.0 * u * integrand(u * u); }, 0.0, std::sqrt(r));
  const double outer = gk(integrand, r, std::numeric_limits<double>::infinity());
  return a2.z * a1.screened_potential(r) - (inner + outer);
}

}  // namespace

void GridSpec::validate() const {
  if (!(half_width >= 0.0)) throw InvalidArgument("GridSpec: half_width must be >= 0");
  if (intervals < 4 || intervals % 2 != 0) {
    throw InvalidArgument("GridSpec: intervals must be even and >= 4");
  }
  if (!(tolerance > 0.0)) throw InvalidArgument("GridSpec: tolerance must be positive");
  if (max_newton < 1) throw InvalidArgument("GridSpec: max_newton must be >= 1");
  if (!(kinetic_prefactor > 0.0)) throw InvalidArgument("GridSpec: c_K must be positive");
}

std::array<double, 3> TfGridSolution::node(int i, int j, int k) const {
  const double l = half_width;
  return {-l + i * grid.h, -l + j * grid.h, -l + k * grid.h};
}

TfGridSolution tf_diatomic(double z1, double z2, double separation, const GridSpec& spec) {
  spec.validate();
  if (!(z1 > 0.0) || !(z2 > 0.0)) throw InvalidArgument("tf_diatomic: charges must be positive");
  if (!(separation > 0.0)) throw InvalidArgument("tf_diatomic: R must be positive");
  const double h = spec.spacing(separation);
  if (separation < 8.0 * h) {
    throw InvalidArgument("tf_diatomic: fewer than 8 grid cells between the nuclei");
  }
  if (separation / 2.0 + 4.0 * h >= spec.box_half_width(separation)) {
    throw InvalidArgument("tf_diatomic: nuclei too close to the box boundary");
  }

  TfGridSolution s;
  s.spec = spec;
  s.half_width = spec.box_half_width(separation);
  s.z1 = z1;
  s.z2 = z2;
  s.separation = separation;
  s.grid = CubeGrid{spec.intervals, h};
  const auto& g = s.grid;
  const int n = g.n;
  const double kappa = 5.0 * spec.kinetic_prefactor / 3.0;

  const auto atom1 = tf_atom(z1, z1, spec.kinetic_prefactor);
  const auto atom2 = z2 == z1 ? atom1 : tf_atom(z2, z2, spec.kinetic_prefactor);
  s.atom_energy_1 = atom1.energy;
  s.atom_energy_2 = atom2.energy;
  const std::array<double, 3> c1{0.5 * h, 0.5 * h, -0.5 * separation};
  const std::array<double, 3> c2{0.5 * h, 0.5 * h, 0.5 * separation};

  std::vector<double> phi12(g.size());
  std::vector<double> rho12(g.size());
  std::vector<double> kin12(g.size());
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) {
        const auto x = s.node(i, j, k);
        const double r1 = std::hypot(x[0] - c1[0], x[1] - c1[1], x[2] - c1[2]);
        const double r2 = std::hypot(x[0] - c2[0], x[1] - c2[1], x[2] - c2[2]);
        const double p1 = atom1.screened_potential(r1);
        const double p2 = atom2.screened_potential(r2);
        const double d1 = tf_density(p1, kappa);
        const double d2 = tf_density(p2, kappa);
        const std::size_t p = g.index(i, j, k);
        phi12[p] = p1 + p2;
        rho12[p] = d1 + d2;
        kin12[p] = std::pow(d1, 5.0 / 3.0) + std::pow(d2, 5.0 / 3.0);
      }
    }
  }

  auto interior = [n](int i, int j, int k) {
    return i > 0 && j > 0 && k > 0 && i < n && j < n && k < n;
  };
  // F(w) = L_h w - 4 pi [rho(phi12 + w) - rho12] at interior nodes.
  auto equation = [&](const std::vector<double>& w) {
    auto f = apply_laplacian(g, w);
    for (int i = 1; i < n; ++i) {
      for (int j = 1; j < n; ++j) {
        for (int k = 1; k < n; ++k) {
          const std::size_t p = g.index(i, j, k);
          f[p] -= 4.0 * kPi * (tf_density(phi12[p] + w[p], kappa) - rho12[p]);
        }
      }
    }
    return f;
  };
  auto max_abs = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };

  // Far away the molecule looks like a neutral atom of charge Z1 + Z2 at the
  // charge centre, whose potential is the boundary value of phi.
  const auto united = tf_atom(z1 + z2, z1 + z2, spec.kinetic_prefactor);
  const double zc = (z2 - z1) / (z1 + z2) * 0.5 * separation;
  std::vector<double> w(g.size(), 0.0);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) {
        if (interior(i, j, k)) continue;
        const auto x = s.node(i, j, k);
        const double rc = std::hypot(x[0] - 0.5 * h, x[1] - 0.5 * h, x[2] - zc);
        const std::size_t p = g.index(i, j, k);
        w[p] = united.screened_potential(rc) - phi12[p];
      }
    }
  }
  auto f = equation(w);
  double norm = max_abs(f);
  int it = 0;
  while (norm > spec.tolerance && it < spec.max_newton) {
    std::vector<double> c(g.size(), 0.0);
    std::vector<double> rhs(g.size(), 0.0);
    for (std::size_t p = 0; p < g.size(); ++p) {
      c[p] = 4.0 * kPi * tf_density_derivative(phi12[p] + w[p], kappa);
      rhs[p] = -f[p];
    }
    const ScreenedPoissonSolver solver(g, std::move(c));
    std::vector<double> delta(g.size(), 0.0);
    solver.solve(delta, rhs, std::max(1e-3 * norm, 0.1 * spec.tolerance), 200);
    double lambda = 1.0;
    bool improved = false;
    for (int bt = 0; bt < 30; ++bt) {
      std::vector<double> trial = w;
      for (std::size_t p = 0; p < g.size(); ++p) trial[p] += lambda * delta[p];
      auto ft = equation(trial);
      const double nt = max_abs(ft);
      if (nt <= (1.0 - 1e-4 * lambda) * norm) {
        w = std::move(trial);
        f = std::move(ft);
        norm = nt;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    ++it;
    if (!improved) break;
  }
  s.newton_iterations = it;
  s.residual = norm;
  s.converged = norm <= spec.tolerance;

  // Gamma = W12 + c_K int (rho^{5/3} - rho1^{5/3} - rho2^{5/3})
  //         - int (phi1 + phi2) sigma - 1/2 int sigma w,  sigma = rho - rho1 - rho2.
  const double cell = h * h * h;
  double kinetic = 0.0;
  double potential = 0.0;
  double self = 0.0;
  double charge = 0.0;
  double boundary = 0.0;
  s.density.assign(g.size(), 0.0);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) {
        const std::size_t p = g.index(i, j, k);
        const double rho = tf_density(phi12[p] + w[p], kappa);
        s.density[p] = rho;
        if (!interior(i, j, k)) {
          boundary = std::max(boundary, phi12[p] + w[p]);
          continue;
        }
        const double sigma = rho - rho12[p];
        kinetic += std::pow(rho, 5.0 / 3.0) - kin12[p];
        potential -= phi12[p] * sigma;
        self -= 0.5 * sigma * w[p];
        charge += sigma;
      }
    }
  }
  s.frozen_interaction = frozen_interaction(atom1, atom2, separation);
  s.gamma = s.frozen_interaction +
            cell * (spec.kinetic_prefactor * kinetic + potential + self);
  s.energy = s.atom_energy_1 + s.atom_energy_2 + s.gamma;
  s.charge_defect = cell * charge;
  s.boundary_potential = boundary;
  s.correction = std::move(w);
  return s;
}

TfGammaResult tf_gamma(double z1, double z2, double separation, const GridSpec& spec) {
  TfGammaResult out;
  out.separation = separation;
  const auto fine = tf_diatomic(z1, z2, separation, spec);
  GridSpec coarse_spec = spec;
  coarse_spec.intervals = (2 * spec.intervals / 3) / 2 * 2;
  const auto coarse = tf_diatomic(z1, z2, separation, coarse_spec);
  out.gamma = fine.gamma;
  out.gamma_coarse = coarse.gamma;
  out.error_bar = std::abs(fine.gamma - coarse.gamma) / (2.25 - 1.0);
  out.converged = fine.converged && coarse.converged;
  return out;
}

void write_tf_grid(const TfGridSolution& s, const std::string& prefix) {
  auto dump = [](const std::string& path, const std::vector<double>& v) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("write_tf_grid: cannot open " + path);
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
  };
  dump(prefix + "_correction.f64", s.correction);
  dump(prefix + "_density.f64", s.density);
  nlohmann::json meta;
  const int side = s.grid.n + 1;
  meta["shape"] = {side, side, side};
  meta["order"] = "k fastest (z), then j (y), then i (x)";
  meta["dtype"] = "float64 little-endian";
  meta["spacing_bohr"] = s.grid.h;
  meta["origin_bohr"] = {-s.half_width, -s.half_width, -s.half_width};
  meta["nuclei_bohr"] = {{0.5 * s.grid.h, 0.5 * s.grid.h, -0.5 * s.separation},
                         {0.5 * s.grid.h, 0.5 * s.grid.h, 0.5 * s.separation}};
  meta["charges"] = {s.z1, s.z2};
  meta["files"] = {{"correction", prefix + "_correction.f64"}, {"density", prefix + "_density.f64"}};
  meta["units"] = {{"correction", "hartree per unit charge"}, {"density", "electrons per bohr^3"}};
  std::ofstream out(prefix + ".json");
  if (!out) throw InvalidArgument("write_tf_grid: cannot open " + prefix + ".json");
  out << meta.dump(2) << '\n';
}

}  // namespace muller
