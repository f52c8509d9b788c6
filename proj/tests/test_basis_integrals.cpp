#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

#include "doctest.h"
#include "muller/basis.hpp"
#include "muller/boys.hpp"
#include "muller/error.hpp"
#include "muller/integrals.hpp"

using namespace muller;

namespace {

constexpr double kPi = std::numbers::pi;

double norm_of(double a) { return std::pow(2.0 * a / kPi, 0.75); }

double f0_oracle(double t) {
  if (t == 0.0) return 1.0;
  return 0.5 * std::sqrt(kPi / t) * boost::math::erf(std::sqrt(t));
}

double overlap_oracle(double a, double b, double d) {
  const double p = a + b;
  return norm_of(a) * norm_of(b) * std::pow(kPi / p, 1.5) * std::exp(-a * b / p * d * d);
}

}  // namespace

TEST_CASE("boys function matches the erf closed form across its branches") {
  for (double t : {0.0, 1e-8, 1e-3, 9.99e-3, 1e-2, 1.01e-2, 0.3, 1.0, 7.5, 39.9, 40.0, 40.1, 300.0}) {
    CHECK(boys_f0(t) == doctest::Approx(f0_oracle(t)).epsilon(1e-14));
  }
}

TEST_CASE("normalized primitives have unit overlap") {
  for (double a : {0.02, 0.7, 45.0}) {
    const auto p = make_primitive({0.3, -1.0, 2.0}, a);
    CHECK(overlap_integral(p, p) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("two-center overlap, kinetic and attraction against closed forms") {
  const double a = 0.8;
  const double b = 2.3;
  const Vec3 ca{0.0, 0.0, 0.0};
  const Vec3 cb{0.0, 0.4, 1.1};
  const double d = distance(ca, cb);
  const auto pa = make_primitive(ca, a);
  const auto pb = make_primitive(cb, b);
  const double s = overlap_oracle(a, b, d);
  CHECK(overlap_integral(pa, pb) == doctest::Approx(s).epsilon(1e-13));

  const double mu = a * b / (a + b);
  CHECK(kinetic_integral(pa, pb) == doctest::Approx(mu * (3.0 - 2.0 * mu * d * d) * s).epsilon(1e-13));

  const Vec3 c{0.5, -0.2, 0.3};
  const double p = a + b;
  Vec3 centre{};
  for (int i = 0; i < 3; ++i) centre[i] = (a * ca[i] + b * cb[i]) / p;
  const double t = p * std::pow(distance(centre, c), 2);
  CHECK(point_charge_integral(pa, pb, c) ==
        doctest::Approx(s * 2.0 * std::sqrt(p / kPi) * f0_oracle(t)).epsilon(1e-12));
}

TEST_CASE("one-center repulsion integrals against the closed form") {
  const Vec3 o{0.0, 0.0, 0.0};
  const double e[4] = {0.1, 0.9, 3.0, 12.0};
  const auto p = make_primitive(o, e[0]);
  const auto q = make_primitive(o, e[1]);
  const auto r = make_primitive(o, e[2]);
  const auto s = make_primitive(o, e[3]);
  const double pp = e[0] + e[1];
  const double qq = e[2] + e[3];
  const double oracle = norm_of(e[0]) * norm_of(e[1]) * norm_of(e[2]) * norm_of(e[3]) * 2.0 *
                        std::pow(kPi, 2.5) / (pp * qq * std::sqrt(pp + qq));
  CHECK(repulsion_integral(p, q, r, s) == doctest::Approx(oracle).epsilon(1e-13));
  // Self-repulsion of a normalized Gaussian: 2 sqrt(a / pi).
  CHECK(repulsion_integral(q, q, q, q) == doctest::Approx(2.0 * std::sqrt(e[1] / kPi)).epsilon(1e-13));
}

TEST_CASE("repulsion tensor has eightfold symmetry and is positive on densities") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-1.0, 1.0);
  std::vector<Primitive> prims;
  for (double a : {0.3, 1.1, 4.0}) prims.push_back(make_primitive({pos(rng), pos(rng), pos(rng)}, a));
  const BasisSet basis(prims);
  const auto eri = eri_tensor(basis);
  for (std::size_t p = 0; p < 3; ++p) {
    for (std::size_t q = 0; q < 3; ++q) {
      for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t s = 0; s < 3; ++s) {
          const double v = eri(p, q, r, s);
          CHECK(eri(q, p, r, s) == v);
          CHECK(eri(p, q, s, r) == v);
          CHECK(eri(r, s, p, q) == v);
          CHECK(v == doctest::Approx(repulsion_integral(prims[p], prims[q], prims[r], prims[s])).epsilon(1e-14));
        }
      }
    }
  }
  Eigen::MatrixXd dens = Eigen::MatrixXd::Random(3, 3);
  dens = dens * dens.transpose();
  const Eigen::MatrixXd j = eri.coulomb(dens);
  CHECK((j.array() * dens.array()).sum() > 0.0);
}

TEST_CASE("even-tempered rule fixes both ends") {
  const auto b = build_even_tempered_basis(2.0, 8);
  REQUIRE(b.size() == 8);
  CHECK(b[0].exponent == doctest::Approx(kDiffuseExponent));
  CHECK(b[7].exponent == doctest::Approx(kTightExponentPerZ2 * 4.0));
  const double ratio = b[1].exponent / b[0].exponent;
  for (std::size_t k = 1; k < 8; ++k) CHECK(b[k].exponent / b[k - 1].exponent == doctest::Approx(ratio));
  const auto one = build_even_tempered_basis(3.0, 1);
  CHECK(one[0].exponent == doctest::Approx(8.0 * 9.0 / (9.0 * kPi)));
  CHECK_THROWS_AS(build_even_tempered_basis(0.0, 4), InvalidArgument);
  CHECK_THROWS_AS(build_even_tempered_basis(1.0, 0), InvalidArgument);
}

TEST_CASE("nuclear frames validate and sum pair repulsion") {
  const auto f = NuclearFrame::diatomic(1.0, 3.0, 2.0);
  CHECK(f.repulsion() == doctest::Approx(1.5));
  CHECK(NuclearFrame().repulsion() == 0.0);
  CHECK_THROWS_AS(NuclearFrame({1.0, -1.0}, {Vec3{0, 0, 0}, Vec3{0, 0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(NuclearFrame({1.0, 1.0}, {Vec3{0, 0, 0}, Vec3{0, 0, 0}}), InvalidArgument);
  CHECK_THROWS_AS(NuclearFrame::diatomic(1.0, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("one-electron matrices are symmetric with the attraction summed over nuclei") {
  const auto frame = NuclearFrame::diatomic(1.0, 2.0, 1.4);
  const auto basis = build_union_basis(frame, 3);
  const auto m = one_electron_matrices(basis, frame);
  CHECK((m.overlap - m.overlap.transpose()).norm() < 1e-15);
  CHECK((m.kinetic - m.kinetic.transpose()).norm() < 1e-14);
  CHECK((m.attraction - m.attraction.transpose()).norm() < 1e-13);
  const double expect = point_charge_integral(basis[0], basis[4], frame.positions()[0]) +
                        2.0 * point_charge_integral(basis[0], basis[4], frame.positions()[1]);
  CHECK(m.attraction(0, 4) == doctest::Approx(expect).epsilon(1e-14));
  CHECK_THROWS_AS(one_electron_matrices(BasisSet(), frame), InvalidArgument);
}

TEST_CASE("basis JSON lines round trip exactly") {
  const auto basis = build_union_basis(NuclearFrame::diatomic(1.0, 1.0, 1.4), 4);
  std::stringstream ss;
  write_basis_jsonl(ss, basis);
  const auto back = read_basis_jsonl(ss);
  REQUIRE(back.size() == basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    CHECK(back[k].exponent == basis[k].exponent);
    CHECK(back[k].center == basis[k].center);
  }
}
