#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "muller/error.hpp"
#include "muller/tf_grid.hpp"

using namespace muller;

namespace {

GridSpec small_grid() {
  GridSpec s;
  s.intervals = 48;
  return s;
}

}  // namespace

TEST_CASE("homonuclear solution is mirror symmetric and converged") {
  const auto s = tf_diatomic(1.0, 1.0, 4.0, small_grid());
  CHECK(s.converged);
  CHECK(s.residual < s.spec.tolerance);
  const int n = s.grid.n;
  double worst = 0.0;
  double peak = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) {
        const double a = s.density[s.grid.index(i, j, k)];
        const double b = s.density[s.grid.index(i, j, n - k)];
        worst = std::max(worst, std::abs(a - b));
        peak = std::max(peak, a);
      }
    }
  }
  CHECK(worst <= 1e-8 * peak);
  CHECK(s.gamma > 0.0);
  CHECK(s.energy == doctest::Approx(s.atom_energy_1 + s.atom_energy_2 + s.gamma));
}

TEST_CASE("swapping the nuclei leaves the energy unchanged") {
  const auto a = tf_diatomic(1.0, 2.0, 4.0, small_grid());
  const auto b = tf_diatomic(2.0, 1.0, 4.0, small_grid());
  CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-8));
}

TEST_CASE("gamma decays with separation and carries an error bar") {
  GridSpec spec;
  spec.intervals = 64;
  const auto near = tf_gamma(1.0, 1.0, 4.0, spec);
  const auto far = tf_gamma(1.0, 1.0, 8.0, spec);
  CHECK(near.converged);
  CHECK(far.converged);
  CHECK(near.gamma > far.gamma);
  CHECK(far.gamma > 0.0);
  CHECK(near.error_bar == doctest::Approx(std::abs(near.gamma - near.gamma_coarse) / 1.25));
}

TEST_CASE("grid validation") {
  GridSpec odd;
  odd.intervals = 47;
  CHECK_THROWS_AS(tf_diatomic(1.0, 1.0, 4.0, odd), InvalidArgument);
  CHECK_THROWS_AS(tf_diatomic(1.0, 1.0, 0.5, small_grid()), InvalidArgument);
  GridSpec tight;
  tight.half_width = 2.0;
  tight.intervals = 96;
  CHECK_THROWS_AS(tf_diatomic(1.0, 1.0, 3.8, tight), InvalidArgument);
  CHECK_THROWS_AS(tf_diatomic(-1.0, 1.0, 4.0, small_grid()), InvalidArgument);
}

TEST_CASE("binary export with JSON sidecar") {
  GridSpec s;
  s.intervals = 32;
  s.half_width = 6.0;
  const auto sol = tf_diatomic(1.0, 1.0, 3.5, s);
  const auto dir = std::filesystem::temp_directory_path() / "muller_tf_grid_test";
  std::filesystem::create_directories(dir);
  const std::string prefix = (dir / "h2").string();
  write_tf_grid(sol, prefix);
  CHECK(std::filesystem::file_size(prefix + "_density.f64") == sol.grid.size() * sizeof(double));
  CHECK(std::filesystem::file_size(prefix + "_correction.f64") == sol.grid.size() * sizeof(double));
  std::ifstream meta(prefix + ".json");
  const auto j = nlohmann::json::parse(meta);
  CHECK(j.contains("shape"));
  std::filesystem::remove_all(dir);
}
