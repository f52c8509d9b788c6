#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "muller/checks.hpp"
#include "muller/error.hpp"
#include "muller/experiments.hpp"
#include "muller/serialization.hpp"
#include "muller/tf_grid.hpp"
#include "muller/thomas_fermi.hpp"

namespace py = pybind11;
using namespace muller;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Muller density-matrix functional toolkit";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::enum_<TraceMode>(m, "TraceMode")
      .value("equal", TraceMode::equal)
      .value("at_most", TraceMode::at_most);

  py::class_<SolveOptions>(m, "SolveOptions")
      .def(py::init<>())
      .def_readwrite("max_iterations", &SolveOptions::max_iterations)
      .def_readwrite("gradient_tolerance", &SolveOptions::gradient_tolerance)
      .def_readwrite("mode", &SolveOptions::mode)
      .def_readwrite("shift_included", &SolveOptions::shift_included)
      .def_readwrite("seed", &SolveOptions::seed)
      .def_readwrite("starts", &SolveOptions::starts)
      .def_readwrite("cap", &SolveOptions::cap);

  py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
      .def_readonly("kinetic", &EnergyBreakdown::kinetic)
      .def_readonly("external", &EnergyBreakdown::external)
      .def_readonly("direct", &EnergyBreakdown::direct)
      .def_readonly("exchange", &EnergyBreakdown::exchange)
      .def_readonly("nuclear_repulsion", &EnergyBreakdown::nuclear_repulsion)
      .def_readonly("total_electronic", &EnergyBreakdown::total_electronic)
      .def_readonly("total", &EnergyBreakdown::total)
      .def_readonly("shifted", &EnergyBreakdown::shifted)
      .def_readonly("trace", &EnergyBreakdown::trace);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("breakdown", &SolveResult::breakdown)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("gradient_norm", &SolveResult::gradient_norm)
      .def_readonly("converged", &SolveResult::converged)
      .def_readonly("trace_at_solution", &SolveResult::trace_at_solution)
      .def_property_readonly("occupations", [](const SolveResult& r) { return r.dm.occupations(); })
      .def_property_readonly("gamma", [](const SolveResult& r) { return r.dm.gamma(); })
      .def("to_json", [](const SolveResult& r) { return to_json(r).dump(); });

  m.def("solve_atom", &solve_atom, py::arg("z"), py::arg("n"), py::arg("n_basis") = 8,
        py::arg("options") = SolveOptions{});

  m.def("project_capped_simplex",
        [](const Eigen::VectorXd& x, double total, double cap) { return project_capped_simplex(x, total, cap); },
        py::arg("x"), py::arg("total"), py::arg("cap") = 1.0);

  py::class_<CurvePoint>(m, "CurvePoint")
      .def_readonly("r", &CurvePoint::r)
      .def_readonly("electronic", &CurvePoint::electronic)
      .def_readonly("total", &CurvePoint::total)
      .def_readonly("shifted_total", &CurvePoint::shifted_total)
      .def_readonly("trace", &CurvePoint::trace)
      .def_readonly("converged", &CurvePoint::converged);

  py::class_<DissociationCurve>(m, "DissociationCurve")
      .def_readonly("points", &DissociationCurve::points)
      .def_readonly("asymptote", &DissociationCurve::asymptote)
      .def_readonly("split", &DissociationCurve::split)
      .def("to_json", [](const DissociationCurve& c) { return to_json(c).dump(); });

  m.def(
      "dissociation_scan",
      [](double z1, double z2, double n, const std::vector<double>& r_list, int basis_per_center) {
        ExperimentOptions o;
        o.basis_per_center = basis_per_center;
        return dissociation_scan(z1, z2, n, r_list, o);
      },
      py::arg("z1"), py::arg("z2"), py::arg("n"), py::arg("r_list"), py::arg("basis_per_center") = 8);

  py::class_<TfAtomSolution>(m, "TfAtomSolution")
      .def_readonly("z", &TfAtomSolution::z)
      .def_readonly("n", &TfAtomSolution::n)
      .def_readonly("slope", &TfAtomSolution::slope)
      .def_readonly("mu", &TfAtomSolution::mu)
      .def_readonly("x0", &TfAtomSolution::x0)
      .def_readonly("energy", &TfAtomSolution::energy)
      .def_readonly("energy_quadrature", &TfAtomSolution::energy_quadrature)
      .def_readonly("electrons_quadrature", &TfAtomSolution::electrons_quadrature)
      .def_readonly("r", &TfAtomSolution::r)
      .def_readonly("rho", &TfAtomSolution::rho)
      .def("density", &TfAtomSolution::density);

  m.def("tf_universal_slope", &tf_universal_slope, py::arg("tolerance") = 1e-12);
  m.def("tf_atom", [](double z, double n) { return tf_atom(z, n); }, py::arg("z"), py::arg("n"));

  py::class_<TfGammaResult>(m, "TfGammaResult")
      .def_readonly("separation", &TfGammaResult::separation)
      .def_readonly("gamma", &TfGammaResult::gamma)
      .def_readonly("gamma_coarse", &TfGammaResult::gamma_coarse)
      .def_readonly("error_bar", &TfGammaResult::error_bar)
      .def_readonly("converged", &TfGammaResult::converged);

  m.def(
      "tf_gamma",
      [](double z1, double z2, double r, int intervals) {
        GridSpec spec;
        spec.intervals = intervals;
        return tf_gamma(z1, z2, r, spec);
      },
      py::arg("z1"), py::arg("z2"), py::arg("r"), py::arg("intervals") = 96);

  py::class_<InequalityAudit>(m, "InequalityAudit")
      .def_readonly("free_bound_min_slack", &InequalityAudit::free_bound_min_slack)
      .def_readonly("exchange_min_slack", &InequalityAudit::exchange_min_slack)
      .def_readonly("lieb_thirring_min_slack", &InequalityAudit::lieb_thirring_min_slack)
      .def_readonly("rank_one_max_defect", &InequalityAudit::rank_one_max_defect)
      .def_readonly("fractional_min_slack", &InequalityAudit::fractional_min_slack)
      .def_readonly("gradient_max_error", &InequalityAudit::gradient_max_error)
      .def_readonly("projection_max_error", &InequalityAudit::projection_max_error);

  m.def("run_inequality_audit", &run_inequality_audit, py::arg("trials"), py::arg("seed") = 1);
}
