#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "muller/checks.hpp"
#include "muller/experiments.hpp"
#include "muller/solver.hpp"
#include "muller/tf_grid.hpp"
#include "muller/thomas_fermi.hpp"
#include "oracles.hpp"

using namespace muller;

namespace {

struct Line {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, double limit_s, const std::function<Line()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Line l;
  try {
    l = body();
  } catch (const std::exception& e) {
    l = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = l.pass && secs < limit_s;
  if (!ok) ++failures;
  std::printf("criterion %2d: %s  %s [%.1f s, limit %.0f s]\n", id, ok ? "PASS" : "FAIL",
              l.detail.c_str(), secs, limit_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Atomic minimizers produced along the way, audited by criterion 13.
struct AtomRecord {
  double z;
  int n_basis;
  SolveResult result;
};
std::vector<AtomRecord> atoms;

SolveResult atom(double z, double n, int n_basis, const SolveOptions& o) {
  auto r = solve_atom(z, n, n_basis, o);
  atoms.push_back({z, n_basis, r});
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  std::mt19937_64 rng(20240601);
  std::vector<RandomInstance> sample;

  report(1, 30, [&] {
    double worst = 1e300;
    for (int t = 0; t < 500; ++t) {
      sample.push_back(random_atomic_instance(rng, 8));
      worst = std::min(worst, free_energy_slack(sample.back()));
    }
    return Line{worst >= -1e-9, fmt("free bound: min E_inf + tr/8 = %.3e over 500", worst)};
  });

  report(2, 30, [&] {
    double worst = 1e300;
    for (const auto& s : sample) {
      for (double eps : {0.1, 1.0, 10.0}) {
        worst = std::min(worst, exchange_bound_slack(s.dm, s.mats, s.eri, s.ortho, eps));
      }
    }
    return Line{worst >= -1e-9, fmt("exchange bound: min slack = %.3e over 1500", worst)};
  });

  report(3, 10, [&] {
    double rank_one = 0.0;
    double frac = 1e300;
    for (int t = 0; t < 100; ++t) {
      auto s = random_atomic_instance(rng, 8);
      const auto m = s.ortho.rank();
      Eigen::VectorXd occ = Eigen::VectorXd::Zero(m);
      occ(t % m) = 1.0;
      s.dm = dm_from_spectral(occ, s.dm.orbitals());
      auto e = energy_breakdown(s.dm, s.mats, s.eri, NuclearFrame(), s.ortho);
      rank_one = std::max(rank_one, std::abs(e.exchange - e.direct) / std::max(1.0, e.direct));

      std::uniform_real_distribution<double> u(0.05, 0.95);
      for (Eigen::Index i = 0; i < m; ++i) occ(i) = u(rng);
      s.dm = dm_from_spectral(occ, s.dm.orbitals());
      e = energy_breakdown(s.dm, s.mats, s.eri, NuclearFrame(), s.ortho);
      frac = std::min(frac, e.exchange - e.direct);
    }
    return Line{rank_one <= 1e-10 && frac >= -1e-10,
                fmt("rank-1 max |X-D|/max(1,D) = %.3e; fractional min X-D = %.3e", rank_one, frac)};
  });

  report(4, 60, [&] {
    double worst = 0.0;
    std::uniform_int_distribution<int> size(1, 6);
    std::uniform_real_distribution<double> z(0.5, 4.0);
    std::uniform_real_distribution<double> r(0.8, 3.0);
    for (int t = 0; t < 20; ++t) {
      const int n = size(rng);
      NuclearFrame frame = t % 2 ? NuclearFrame::atom(z(rng)) : NuclearFrame::diatomic(z(rng), z(rng), r(rng));
      BasisSet basis = t % 2 ? build_even_tempered_basis(frame.charges()[0], n)
                             : build_union_basis(frame, std::max(1, n / 2));
      worst = std::max(worst, fd_gradient_audit(basis, frame, rng()));
    }
    return Line{worst < 1e-6, fmt("gradient audit: max relative error = %.3e over 20", worst)};
  });

  report(5, 5, [&] {
    double worst = 0.0;
    std::uniform_int_distribution<int> dim(1, 4);
    std::normal_distribution<double> normal(0.4, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
      const int m = dim(rng);
      Eigen::VectorXd x(m);
      for (int i = 0; i < m; ++i) x(i) = normal(rng);
      const double total = u(rng) * m;
      worst = std::max(worst, (project_capped_simplex(x, total) -
                               oracle::active_set_projection(x, total, 1.0)).norm());
    }
    return Line{worst <= 1e-8, fmt("projection vs active-set oracle: max distance = %.3e", worst)};
  });

  report(6, 10, [&] {
    // Lower end: max over eps of -1/(2(1-eps)) - 1/(4 eps), by a 1-D scan.
    double lower = -1e300;
    for (int k = 1; k < 100000; ++k) {
      const double eps = k / 100000.0;
      lower = std::max(lower, -1.0 / (2.0 * (1.0 - eps)) - 1.0 / (4.0 * eps));
    }
    const auto r = atom(1.0, 1.0, 8, SolveOptions{});
    const double e = r.breakdown.total_electronic;
    return Line{r.converged && e >= -1.46 && e <= -0.49,
                fmt("H atom E = %.8f in [-1.46, -0.49] (scan lower bound %.5f), converged = %g", e,
                    lower, r.converged ? 1.0 : 0.0)};
  });

  report(7, 60, [&] {
    const auto rows = united_atom_check(1.0, 1.0, 2.0, {1.0, 1.4, 2.0}, ExperimentOptions{});
    double worst = 1e300;
    bool converged = true;
    for (const auto& s : rows) {
      worst = std::min(worst, s.slack);
      converged = converged && s.converged;
    }
    return Line{converged && worst >= -1e-6,
                fmt("united atom: min slack = %.6e (E_united = %.8f), converged = %g", worst,
                    rows.front().united_atom, converged ? 1.0 : 0.0)};
  });

  std::vector<double> r_grid;
  for (double r = 0.6; r <= 8.01; r += 0.4) r_grid.push_back(r);
  report(8, 300, [&] {
    const auto rep = binding_report(1.0, 1.0, 2.0, {{1.0, 1.0}}, r_grid, ExperimentOptions{});
    const auto& s = rep.splits.front();
    const bool ok = s.margin < -1e-3 && rep.minimum.kind == MinimumKind::interior &&
                    rep.minimum.r > 0.5 && rep.minimum.r < 4.0;
    return Line{ok, fmt("H2 cap 1: margin = %.6e, R* = %.4f, min E^ = %.8f, 2 E^_atom = %.8f",
                        s.margin, rep.minimum.r, s.left, s.right)};
  });
  {
    // Informational: the same inequality with spin-summed occupations (cap 2).
    ExperimentOptions o;
    o.solve.cap = 2.0;
    const auto rep = binding_report(1.0, 1.0, 2.0, {{1.0, 1.0}}, r_grid, o);
    std::printf("      info: H2 cap 2: margin = %.6e, R* = %.4f, kind = %s\n", rep.splits.front().margin,
                rep.minimum.r, to_string(rep.minimum.kind).c_str());
  }

  report(9, 30, [&] {
    const double r = 50.0;
    const auto c = dissociation_scan(1.0, 1.0, 2.0, {r}, ExperimentOptions{});
    const double diff = c.points[0].shifted_total - (c.asymptote + 1.0 / r);
    return Line{std::abs(diff) <= 1e-3,
                fmt("R = 50: shifted total - (asymptote + 1/R) = %.6e (vs asymptote alone %.6e)", diff,
                    c.points[0].shifted_total - c.asymptote)};
  });

  report(10, 30, [&] {
    SolveOptions relaxed;
    relaxed.mode = TraceMode::at_most;
    const auto one = atom(1.0, 1.0, 8, relaxed);
    SolveOptions shifted = relaxed;
    shifted.shift_included = true;
    const auto three = atom(1.0, 3.0, 8, shifted);
    const bool ok = std::abs(one.trace_at_solution - 1.0) <= 1e-6 && three.trace_at_solution < 3.0;
    return Line{ok, fmt("trace(Z=1,N=1) = %.9f, trace(Z=1,N=3,shift) = %.6f", one.trace_at_solution,
                        three.trace_at_solution)};
  });

  report(11, 10, [&] {
    const double s = tf_universal_slope(1e-12);
    const double fine = tf_universal_slope(1e-14);
    const double e1 = tf_atom(1.0, 1.0).energy;
    double spread = 0.0;
    for (double z : {10.0, 100.0}) {
      spread = std::max(spread, std::abs(tf_atom(z, z).energy / std::pow(z, 7.0 / 3.0) / e1 - 1.0));
    }
    const bool ok = std::abs(s + 1.588071) <= 1e-4 && std::abs(s - fine) <= 1e-4 && spread <= 1e-6;
    return Line{ok, fmt("slope = %.9f (fine %.9f), E/Z^(7/3) = %.8f, relative spread %.2e", s, fine, e1,
                        spread)};
  });

  {
    const std::vector<double> rs{3.0, 4.0, 5.0, 6.0};
    std::vector<TfGammaResult> g;
    double slowest = 0.0;
    report(12, 4 * 120, [&] {
      GridSpec spec;
      spec.intervals = 96;
      bool ok = true;
      for (double r : rs) {
        const auto t0 = std::chrono::steady_clock::now();
        g.push_back(tf_gamma(1.0, 1.0, r, spec));
        slowest = std::max(slowest,
                           std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        ok = ok && g.back().converged && g.back().gamma > 0.0;
      }
      std::string detail = "Gamma R^7:";
      for (std::size_t k = 0; k < g.size(); ++k) {
        const double scale = std::pow(rs[k], 7.0);
        detail += fmt(" %.3f+-%.3f", g[k].gamma * scale, g[k].error_bar * scale);
        if (k > 0) {
          const double prev = g[k - 1].gamma * std::pow(rs[k - 1], 7.0);
          const double bars = g[k - 1].error_bar * std::pow(rs[k - 1], 7.0) + g[k].error_bar * scale;
          ok = ok && g[k].gamma * scale >= prev - bars;
        }
      }
      detail += fmt("; slowest solve %.1f s", slowest);
      return Line{ok && slowest < 120.0, detail};
    });
  }

  report(13, 30, [&] {
    atoms.push_back({2.0, 8, solve_atom(2.0, 2.0, 8, SolveOptions{})});
    double worst = 1e300;
    for (const auto& a : atoms) {
      const auto basis = build_even_tempered_basis(a.z, a.n_basis);
      const auto sys = MullerSystem::build(basis, NuclearFrame::atom(a.z));
      worst = std::min(worst, lieb_thirring_slack(a.result.dm, sys.matrices, basis, sys.ortho,
                                                  default_lieb_thirring_constant()));
    }
    return Line{worst >= 0.0, fmt("Lieb-Thirring (L = %.4f): min slack = %.6e over %g minimizers",
                                  default_lieb_thirring_constant(), worst, static_cast<double>(atoms.size()))};
  });

  report(14, 10, [&] {
    if (cli.empty()) return Line{false, "CLI path not given"};
    const auto dir = std::filesystem::temp_directory_path();
    const std::string a = (dir / "muller_repro_a.json").string();
    const std::string b = (dir / "muller_repro_b.json").string();
    const std::string cmd = "\"" + cli + "\" atom solve --Z 2 --N 2 --relaxed --shift --seed 7 > ";
    const int ra = std::system((cmd + "\"" + a + "\"").c_str());
    const int rb = std::system((cmd + "\"" + b + "\"").c_str());
    const std::string ta = read_file(a);
    const std::string tb = read_file(b);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    const bool ok = ra == rb && !ta.empty() && ta == tb;
    return Line{ok, fmt("two runs: %g bytes, identical = %g", static_cast<double>(ta.size()),
                        ta == tb ? 1.0 : 0.0)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
