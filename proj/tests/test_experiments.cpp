#include <cmath>

#include "doctest.h"
#include "muller/error.hpp"
#include "muller/experiments.hpp"
#include "muller/radial.hpp"

using namespace muller;

namespace {

DissociationCurve synthetic(const std::vector<double>& r, const std::function<double(double)>& f) {
  DissociationCurve c;
  for (double x : r) {
    CurvePoint p;
    p.r = x;
    p.shifted_total = f(x);
    p.converged = true;
    c.points.push_back(p);
  }
  return c;
}

}  // namespace

TEST_CASE("golden-section refinement recovers a parabola vertex") {
  auto f = [](double r) { return std::pow(r - 2.37, 2) - 1.0; };
  const auto c = synthetic({1.0, 1.5, 2.0, 2.5, 3.0, 3.5}, f);
  const auto m = born_oppenheimer_min(c, f);
  CHECK(m.kind == MinimumKind::interior);
  CHECK(m.r == doctest::Approx(2.37).epsilon(1e-3 / 2.37));
  CHECK(m.energy <= -1.0 + 1e-6);
  CHECK(m.evaluations > 2);
}

TEST_CASE("monotone curves are flagged without refinement") {
  int calls = 0;
  auto count = [&](double) {
    ++calls;
    return 0.0;
  };
  const auto down = synthetic({1.0, 2.0, 3.0, 4.0}, [](double r) { return -1.0 / r; });
  CHECK(born_oppenheimer_min(down, count).kind == MinimumKind::collapsing);
  const auto up = synthetic({1.0, 2.0, 3.0, 4.0}, [](double r) { return -r; });
  CHECK(born_oppenheimer_min(up, count).kind == MinimumKind::dissociative);
  CHECK(calls == 0);
  auto few = synthetic({1.0, 2.0, 3.0}, [](double r) { return r; });
  few.points[1].converged = false;
  CHECK_THROWS_AS(born_oppenheimer_min(few, count), InvalidArgument);
}

TEST_CASE("binding verdict uses ten times the tolerance") {
  CHECK(binding_verdict(-1.1e-7, 1e-8) == Verdict::binds);
  CHECK(binding_verdict(-0.9e-7, 1e-8) == Verdict::inconclusive);
  CHECK(binding_verdict(0.9e-7, 1e-8) == Verdict::inconclusive);
  CHECK(binding_verdict(1.1e-7, 1e-8) == Verdict::no_binding);
  CHECK(to_string(Verdict::binds) == "binds");
}

TEST_CASE("an empty atom contributes zero") {
  const auto ref = atomic_reference(3.0, 0.0, ExperimentOptions{});
  CHECK(ref.shifted == 0.0);
  CHECK(ref.converged);
}

TEST_CASE("large separation: shifted total approaches the atomic asymptote") {
  ExperimentOptions o;
  const auto c = dissociation_scan(1.0, 1.0, 2.0, {50.0}, o);
  REQUIRE(c.points.size() == 1);
  CHECK(c.points[0].converged);
  CHECK(c.split == std::make_pair(1.0, 1.0));
  CHECK(std::abs(c.points[0].shifted_total - c.asymptote) < 1e-3);
}

TEST_CASE("relabeling the nuclei leaves the energy unchanged") {
  ExperimentOptions o;
  o.basis_per_center = 5;
  const auto a = solve_diatomic_point(1.0, 2.0, 2.0, 2.0, o);
  const auto b = solve_diatomic_point(2.0, 1.0, 2.0, 2.0, o);
  CHECK(a.shifted_total == doctest::Approx(b.shifted_total).epsilon(1e-7));
}

TEST_CASE("scans warm start after the first point and reject bad R lists") {
  ExperimentOptions o;
  o.basis_per_center = 5;
  const auto c = dissociation_scan(1.0, 1.0, 2.0, {1.0, 1.5, 2.0}, o);
  CHECK_FALSE(c.points[0].warm_started);
  CHECK(c.points[1].warm_started);
  CHECK_THROWS_AS(dissociation_scan(1.0, 1.0, 2.0, {}, o), InvalidArgument);
  CHECK_THROWS_AS(dissociation_scan(1.0, 1.0, 2.0, {2.0, 1.0}, o), InvalidArgument);
}

TEST_CASE("binding report: mirrored splits coincide for equal charges") {
  ExperimentOptions o;
  o.basis_per_center = 5;
  const auto rep = binding_report(1.0, 1.0, 2.0, {{2.0, 0.0}, {0.0, 2.0}, {1.0, 1.0}}, {1.0, 2.0, 3.0, 4.0}, o);
  REQUIRE(rep.splits.size() == 3);
  CHECK(std::abs(rep.splits[0].right - rep.splits[1].right) <= 1e-8);
  CHECK(rep.splits[0].right == doctest::Approx(atomic_reference(1.0, 2.0, o).shifted));
  CHECK(rep.splits[2].margin == doctest::Approx(rep.splits[2].left - rep.splits[2].right));
  CHECK_THROWS_AS(binding_report(1.0, 1.0, 2.0, {{2.0, 1.0}}, {1.0, 2.0, 3.0}, o), InvalidArgument);
}

TEST_CASE("united atom basis holds every exponent once") {
  // Every even-tempered set starts at the same diffuse exponent.
  const auto b = united_atom_basis(1.0, 1.0, 4);
  CHECK(b.size() == 7);
  CHECK(b.single_center());
  const auto c = united_atom_basis(1.0, 2.0, 4);
  CHECK(c.size() == 10);
  for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k].exponent > c[k - 1].exponent);
}

TEST_CASE("united atom slack is positive for H2 at 1.4 bohr") {
  ExperimentOptions o;
  const auto rows = united_atom_check(1.0, 1.0, 2.0, {1.4}, o);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].slack > 0.0);
  // The merged 15-function united basis is the stiffest solve in the suite.
  CHECK(rows[0].converged);
}

TEST_CASE("saturation: trace N below Z, nondecreasing, unsaturated above") {
  ExperimentOptions o;
  o.basis_per_center = 6;
  const auto rows = saturation_scan(1.0, {0.5, 1.0, 2.0, 3.0}, o);
  CHECK(rows[0].trace == doctest::Approx(0.5).epsilon(2e-6));
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].trace >= rows[k - 1].trace - 1e-9);
  CHECK(rows[3].trace < 3.0);
}

TEST_CASE("density distance to Thomas-Fermi is finite and positive") {
  SolveOptions so;
  const auto basis = build_even_tempered_basis(1.0, 8);
  const auto r = minimize_muller(basis, NuclearFrame::atom(1.0), 1.0, so);
  const auto tf = tf_atom(1.0, 1.0);
  const LogGrid grid{1e-5, 60.0, 2000};
  const double d = tf_density_distance(basis, r, tf, grid);
  CHECK(std::isfinite(d));
  CHECK(d > 0.0);
}
