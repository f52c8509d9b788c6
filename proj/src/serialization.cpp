#include "muller/serialization.hpp"

#include <cmath>
#include <ostream>

#include "muller/error.hpp"

namespace muller {

namespace {

// JSON has no infinity; an unbounded ion radius is written as null.
Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("matrix JSON must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError("matrix JSON rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

Json to_json(const DensityMatrix& dm) {
  Json j;
  j["cap"] = dm.cap();
  Json occ = Json::array();
  for (Eigen::Index i = 0; i < dm.dim(); ++i) occ.push_back(dm.occupations()(i));
  j["occupations"] = std::move(occ);
  j["orbitals"] = matrix_to_json(dm.orbitals());
  return j;
}

DensityMatrix density_matrix_from_json(const Json& j) {
  const auto& occ = j.at("occupations");
  Eigen::VectorXd v(static_cast<Eigen::Index>(occ.size()));
  for (std::size_t i = 0; i < occ.size(); ++i) v(static_cast<Eigen::Index>(i)) = occ[i].get<double>();
  return dm_from_spectral(v, matrix_from_json(j.at("orbitals")), j.at("cap").get<double>());
}

Json to_json(const EnergyBreakdown& e) {
  Json j;
  j["kinetic"] = e.kinetic;
  j["external"] = e.external;
  j["direct"] = e.direct;
  j["exchange"] = e.exchange;
  j["nuclear_repulsion"] = e.nuclear_repulsion;
  j["total_electronic"] = e.total_electronic;
  j["total"] = e.total;
  j["shifted"] = e.shifted;
  j["trace"] = e.trace;
  return j;
}

Json to_json(const SolveResult& r) {
  Json j;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["gradient_norm"] = r.gradient_norm;
  j["trace_at_solution"] = r.trace_at_solution;
  j["seed"] = r.seed;
  j["warm_started"] = r.warm_started;
  j["breakdown"] = to_json(r.breakdown);
  j["dm"] = to_json(r.dm);
  j["ao_sqrt_kernel"] = matrix_to_json(r.ao_sqrt_kernel);
  return j;
}

SolveResult solve_result_from_json(const Json& j) {
  SolveResult r;
  r.converged = j.at("converged").get<bool>();
  r.iterations = j.at("iterations").get<int>();
  r.gradient_norm = j.at("gradient_norm").get<double>();
  r.trace_at_solution = j.at("trace_at_solution").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.warm_started = j.at("warm_started").get<bool>();
  const auto& b = j.at("breakdown");
  r.breakdown.kinetic = b.at("kinetic").get<double>();
  r.breakdown.external = b.at("external").get<double>();
  r.breakdown.direct = b.at("direct").get<double>();
  r.breakdown.exchange = b.at("exchange").get<double>();
  r.breakdown.nuclear_repulsion = b.at("nuclear_repulsion").get<double>();
  r.breakdown.total_electronic = b.at("total_electronic").get<double>();
  r.breakdown.total = b.at("total").get<double>();
  r.breakdown.shifted = b.at("shifted").get<double>();
  r.breakdown.trace = b.at("trace").get<double>();
  r.dm = density_matrix_from_json(j.at("dm"));
  r.ao_sqrt_kernel = matrix_from_json(j.at("ao_sqrt_kernel"));
  return r;
}

Json to_json(const CurvePoint& p) {
  Json j;
  j["R"] = p.r;
  j["electronic"] = p.electronic;
  j["total"] = p.total;
  j["shifted_total"] = p.shifted_total;
  j["trace"] = p.trace;
  j["converged"] = p.converged;
  j["warm_started"] = p.warm_started;
  j["iterations"] = p.iterations;
  j["gradient_norm"] = p.gradient_norm;
  return j;
}

Json to_json(const DissociationCurve& c) {
  Json j;
  j["Z1"] = c.z1;
  j["Z2"] = c.z2;
  j["N"] = c.n;
  j["split"] = {c.split.first, c.split.second};
  j["asymptote"] = c.asymptote;
  j["asymptote_converged"] = c.asymptote_converged;
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(to_json(p));
  j["points"] = std::move(pts);
  return j;
}

void write_curve_csv(const DissociationCurve& c, std::ostream& out) {
  out << "R,electronic,total,shifted_total,trace,converged,warm_started\n";
  out.precision(17);
  for (const auto& p : c.points) {
    out << p.r << ',' << p.electronic << ',' << p.total << ',' << p.shifted_total << ','
        << p.trace << ',' << (p.converged ? 1 : 0) << ',' << (p.warm_started ? 1 : 0) << '\n';
  }
}

Json to_json(const BornOppenheimerMinimum& m) {
  Json j;
  j["R"] = m.r;
  j["energy"] = m.energy;
  j["kind"] = to_string(m.kind);
  j["evaluations"] = m.evaluations;
  return j;
}

Json to_json(const BindingReport& r) {
  Json j;
  j["Z1"] = r.z1;
  j["Z2"] = r.z2;
  j["N"] = r.n;
  j["tolerance"] = r.tolerance;
  j["convention"] = "shifted";
  j["minimum"] = to_json(r.minimum);
  j["all_converged"] = r.all_converged;
  Json rows = Json::array();
  for (const auto& s : r.splits) {
    Json row;
    row["N1"] = s.n1;
    row["N2"] = s.n2;
    row["left"] = s.left;
    row["right"] = s.right;
    row["margin"] = s.margin;
    row["verdict"] = to_string(s.verdict);
    row["left_unshifted"] = s.left_unshifted;
    row["right_unshifted"] = s.right_unshifted;
    row["margin_unshifted"] = s.margin_unshifted;
    rows.push_back(std::move(row));
  }
  j["splits"] = std::move(rows);
  j["curve"] = to_json(r.curve);
  return j;
}

Json to_json(const UnitedAtomSlack& s) {
  Json j;
  j["R"] = s.r;
  j["molecule"] = s.molecule;
  j["united_atom"] = s.united_atom;
  j["slack"] = s.slack;
  j["converged"] = s.converged;
  return j;
}

Json to_json(const SaturationRow& r) {
  Json j;
  j["N"] = r.n;
  j["trace"] = r.trace;
  j["shifted"] = r.shifted;
  j["converged"] = r.converged;
  return j;
}

Json to_json(const TfAtomSolution& s) {
  Json j;
  j["Z"] = s.z;
  j["N"] = s.n;
  j["slope"] = s.slope;
  j["mu"] = s.mu;
  j["x0"] = finite_or_null(s.x0);
  j["length_scale"] = s.length_scale;
  j["energy"] = s.energy;
  j["energy_quadrature"] = s.energy_quadrature;
  j["electrons_quadrature"] = s.electrons_quadrature;
  j["kinetic_prefactor"] = s.kinetic_prefactor;
  j["samples"] = s.r.size();
  return j;
}

Json to_json(const TfGridSolution& s) {
  Json j;
  j["Z1"] = s.z1;
  j["Z2"] = s.z2;
  j["R"] = s.separation;
  j["half_width"] = s.half_width;
  j["intervals"] = s.grid.n;
  j["spacing"] = s.grid.h;
  j["energy"] = s.energy;
  j["gamma"] = s.gamma;
  j["atom_energies"] = {s.atom_energy_1, s.atom_energy_2};
  j["frozen_interaction"] = s.frozen_interaction;
  j["residual"] = s.residual;
  j["charge_defect"] = s.charge_defect;
  j["boundary_potential"] = s.boundary_potential;
  j["newton_iterations"] = s.newton_iterations;
  j["converged"] = s.converged;
  return j;
}

Json to_json(const TfGammaResult& g) {
  Json j;
  j["R"] = g.separation;
  j["gamma"] = g.gamma;
  j["gamma_coarse"] = g.gamma_coarse;
  j["error_bar"] = g.error_bar;
  j["converged"] = g.converged;
  return j;
}

}  // namespace muller
