#pragma once

#include <iosfwd>

#include <Eigen/Dense>

#include "json.hpp"
#include "muller/density_matrix.hpp"
#include "muller/energy.hpp"
#include "muller/experiments.hpp"
#include "muller/solver.hpp"
#include "muller/tf_grid.hpp"
#include "muller/thomas_fermi.hpp"

namespace muller {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j);

/// {"cap", "occupations", "orbitals"}; orbitals as rows of columns' entries.
Json to_json(const DensityMatrix& dm);
DensityMatrix density_matrix_from_json(const Json& j);

/// Flat object with every EnergyBreakdown field, trace included.
Json to_json(const EnergyBreakdown& e);

/// Restart record: dm, breakdown, diagnostics and the AO square-root kernel.
Json to_json(const SolveResult& r);
/// Recovers dm, breakdown, diagnostics and kernel; the objective history is
/// not stored.
SolveResult solve_result_from_json(const Json& j);

Json to_json(const CurvePoint& p);
Json to_json(const DissociationCurve& c);
/// Header R,electronic,total,shifted_total,trace,converged,warm_started.
void write_curve_csv(const DissociationCurve& c, std::ostream& out);

Json to_json(const BornOppenheimerMinimum& m);
Json to_json(const BindingReport& r);
Json to_json(const UnitedAtomSlack& s);
Json to_json(const SaturationRow& r);

/// Scalars only; the radial samples go to CSV.
Json to_json(const TfAtomSolution& s);
/// Scalars only; the fields go to binary files.
Json to_json(const TfGridSolution& s);
Json to_json(const TfGammaResult& g);

}  // namespace muller
