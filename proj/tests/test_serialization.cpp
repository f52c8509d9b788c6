#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "muller/error.hpp"
#include "muller/serialization.hpp"

using namespace muller;

TEST_CASE("solve results survive a JSON round trip bit for bit") {
  SolveOptions o;
  const auto r = solve_atom(1.0, 1.0, 4, o);
  const Json j = to_json(r);
  const auto back = solve_result_from_json(Json::parse(j.dump()));
  CHECK(back.dm.gamma() == r.dm.gamma());
  CHECK(back.ao_sqrt_kernel == r.ao_sqrt_kernel);
  CHECK(back.breakdown.shifted == r.breakdown.shifted);
  CHECK(back.converged == r.converged);
  CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("energy breakdown is a flat object with stable field names") {
  EnergyBreakdown e;
  const Json j = to_json(e);
  CHECK(j.size() == 9);
  for (const char* key : {"kinetic", "external", "direct", "exchange", "nuclear_repulsion",
                          "total_electronic", "total", "shifted", "trace"}) {
    CHECK(j.contains(key));
  }
}

TEST_CASE("malformed matrices are rejected") {
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, 2], [3]]")), ValidationError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("3")), ValidationError);
}

TEST_CASE("neutral TF atoms write a null edge") {
  const auto a = tf_atom(1.0, 1.0);
  CHECK(to_json(a)["x0"].is_null());
  CHECK(to_json(tf_atom(2.0, 1.0))["x0"].is_number());
}

TEST_CASE("curve CSV has one row per point") {
  DissociationCurve c;
  c.points.resize(3);
  std::ostringstream out;
  write_curve_csv(c, out);
  const auto s = out.str();
  CHECK(s.rfind("R,electronic,total,shifted_total,trace,converged,warm_started\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
}
