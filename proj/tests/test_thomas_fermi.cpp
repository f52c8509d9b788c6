#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "muller/error.hpp"
#include "muller/multigrid.hpp"
#include "muller/thomas_fermi.hpp"

using namespace muller;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("printed constants satisfy the Euler-Lagrange identity") {
  const double ck = tf_default_kinetic_prefactor();
  CHECK(ck == doctest::Approx(0.3 * std::pow(3.0 * kPi * kPi, 2.0 / 3.0)).epsilon(1e-15));
  CHECK(3.0 / (5.0 * ck) ==
        doctest::Approx(std::pow(2.0, 5.0 / 3.0) * std::pow(6.0 * kPi * kPi, -2.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("universal slope and the shooting dichotomy") {
  const double s = tf_universal_slope();
  CHECK(s == doctest::Approx(-1.588071).epsilon(1e-6));
  CHECK(tf_universal_slope(1e-13) == doctest::Approx(s).epsilon(1e-9));
  CHECK(tf_shoot(s + 1e-3).fate == TfShot::Fate::turns_up);
  CHECK(tf_shoot(s - 1e-3).fate == TfShot::Fate::crosses_zero);
}

TEST_CASE("neutral atom: decreasing convex chi, charge, energy two ways") {
  const auto a = tf_atom(10.0, 10.0);
  CHECK(a.neutral());
  CHECK(std::isinf(a.x0));
  for (std::size_t k = 1; k < a.chi.size(); ++k) {
    CHECK(a.chi[k] < a.chi[k - 1]);
    CHECK(a.dchi[k] > a.dchi[k - 1]);
  }
  CHECK(a.electrons_quadrature == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(a.energy_quadrature == doctest::Approx(a.energy).epsilon(1e-3));
  CHECK(a.energy / std::pow(10.0, 7.0 / 3.0) == doctest::Approx(-0.768745).epsilon(1e-4));
  CHECK(tf_equation_residual(a) < 1e-8);
}

TEST_CASE("scaling: E(Z) / Z^{7/3} is Z-independent") {
  const double e1 = tf_atom(1.0, 1.0).energy;
  for (double z : {10.0, 100.0}) {
    CHECK(tf_atom(z, z).energy / std::pow(z, 7.0 / 3.0) == doctest::Approx(e1).epsilon(1e-6));
  }
}

TEST_CASE("positive ions: finite edge, mu decreasing towards neutrality") {
  double prev_mu = 1e300;
  for (double frac : {0.5, 0.9, 0.99}) {
    const auto ion = tf_atom(4.0, 4.0 * frac);
    CHECK(std::isfinite(ion.x0));
    CHECK(ion.mu > 0.0);
    CHECK(ion.mu < prev_mu);
    prev_mu = ion.mu;
    CHECK(ion.electrons_quadrature == doctest::Approx(4.0 * frac).epsilon(1e-6));
    CHECK(ion.energy_quadrature == doctest::Approx(ion.energy).epsilon(1e-3));
    CHECK(tf_equation_residual(ion) < 1e-8);
    CHECK(ion.density(ion.length_scale * ion.x0 * 1.01) == 0.0);
  }
}

TEST_CASE("N above Z falls back to the neutral solution bit for bit") {
  const auto a = tf_atom(3.0, 3.0);
  const auto b = tf_atom(3.0, 5.0);
  CHECK(a.energy == b.energy);
  CHECK(a.rho == b.rho);
  CHECK(b.n == 3.0);
  CHECK_THROWS_AS(tf_atom(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(tf_atom(1.0, -1.0), InvalidArgument);
}

TEST_CASE("chi interpolation and antiderivative are consistent") {
  const auto a = tf_atom(1.0, 1.0);
  CHECK(a.chi_at(0.0) == doctest::Approx(1.0));
  const double x = 2.7;
  const double h = 1e-4;
  const double deriv = (a.chi_integral(x + h) - a.chi_integral(x - h)) / (2.0 * h);
  CHECK(deriv == doctest::Approx(a.chi_at(x)).epsilon(1e-7));
  CHECK(a.chi_at(1e4) > 0.0);
}

TEST_CASE("Coulomb self-energy of a uniform ball") {
  const double radius = 1.5;
  const double q = 2.0;
  const double dens = q / (4.0 / 3.0 * kPi * radius * radius * radius);
  std::vector<double> r;
  std::vector<double> f;
  const int n = 20001;
  for (int k = 0; k < n; ++k) {
    const double rv = 1e-6 + (10.0 - 1e-6) * k / (n - 1);
    r.push_back(rv);
    f.push_back(rv <= radius ? dens : 0.0);
  }
  CHECK(radial_coulomb_self_energy(r, f) == doctest::Approx(0.6 * q * q / radius).epsilon(2e-3));
  std::fill(f.begin(), f.end(), 0.0);
  CHECK(radial_coulomb_self_energy(r, f) == 0.0);
}

TEST_CASE("radial CSV export") {
  const auto a = tf_atom(2.0, 2.0);
  std::ostringstream out;
  write_tf_radial_csv(a, out);
  const std::string text = out.str();
  CHECK(text.rfind("r,rho,phi\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == a.r.size() + 1);
}

TEST_CASE("multigrid solves a manufactured screened Poisson problem") {
  const int n = 32;
  CubeGrid g{n, 1.0 / n};
  std::vector<double> c(g.size(), 2.0);
  std::vector<double> exact(g.size());
  std::vector<double> f(g.size());
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) {
        exact[g.index(i, j, k)] = std::sin(kPi * i * g.h) * std::sin(kPi * j * g.h) * std::sin(kPi * k * g.h);
      }
    }
  }
  const auto lap = apply_laplacian(g, exact);
  for (std::size_t p = 0; p < g.size(); ++p) f[p] = lap[p] - c[p] * exact[p];
  const ScreenedPoissonSolver solver(g, c);
  CHECK(solver.levels() >= 3);
  std::vector<double> u(g.size(), 0.0);
  const auto stats = solver.solve(u, f, 1e-10, 50);
  CHECK(stats.converged);
  CHECK(stats.cycles < 20);
  double err = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p) err = std::max(err, std::abs(u[p] - exact[p]));
  CHECK(err < 1e-9);
}
