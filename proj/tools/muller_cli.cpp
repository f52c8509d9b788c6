#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "muller/checks.hpp"
#include "muller/error.hpp"
#include "muller/experiments.hpp"
#include "muller/serialization.hpp"
#include "muller/tf_grid.hpp"
#include "muller/thomas_fermi.hpp"

namespace {

using muller::Json;

constexpr int kExitInvalid = 2;
constexpr int kExitNotConverged = 3;

struct Outcome {
  Json json;
  bool converged = true;
};

std::vector<double> linspace(double a, double b, int steps) {
  if (steps < 1) throw muller::InvalidArgument("--steps must be >= 1");
  if (!(b > a) && steps > 1) throw muller::InvalidArgument("--r-max must exceed --r-min");
  std::vector<double> out;
  for (int k = 0; k < steps; ++k) {
    out.push_back(steps == 1 ? a : a + (b - a) * k / (steps - 1));
  }
  return out;
}

std::vector<std::pair<double, double>> parse_splits(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw muller::InvalidArgument("split '" + item + "' is not a:b");
    try {
      std::size_t used = 0;
      const double a = std::stod(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument(item);
      const std::string rest = item.substr(colon + 1);
      const double b = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(item);
      out.emplace_back(a, b);
    } catch (const std::logic_error&) {
      throw muller::InvalidArgument("split '" + item + "' is not a:b");
    }
  }
  if (out.empty()) throw muller::InvalidArgument("--splits is empty");
  return out;
}

muller::ExperimentOptions experiment_options(int n_basis, std::uint64_t seed) {
  muller::ExperimentOptions o;
  o.basis_per_center = n_basis;
  o.solve.seed = seed;
  return o;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw muller::InvalidArgument("cannot open " + path + " for writing");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Muller density-matrix functional toolkit"};
  app.require_subcommand(1);
  int indent = 2;
  app.add_option("--indent", indent, "JSON indentation (-1 for one line)")->capture_default_str();

  std::function<Outcome()> run;

  // atom solve
  auto* atom = app.add_subcommand("atom", "Single-atom Muller solves");
  atom->require_subcommand(1);
  auto* atom_solve = atom->add_subcommand("solve", "Minimize the Muller energy of one atom");
  double z = 1.0;
  double n = 1.0;
  bool relaxed = false;
  bool shift = false;
  int n_basis = 8;
  std::uint64_t seed = 1;
  std::string restart_out;
  int max_iterations = muller::SolveOptions{}.max_iterations;
  atom_solve->add_option("--Z", z, "Nuclear charge")->required();
  atom_solve->add_option("--N", n, "Electron number")->required();
  atom_solve->add_flag("--relaxed", relaxed, "Constrain tr(gamma) <= N instead of = N");
  atom_solve->add_flag("--shift", shift, "Minimize E + tr(gamma)/8");
  atom_solve->add_option("--n-basis", n_basis, "Even-tempered basis size")->capture_default_str();
  atom_solve->add_option("--seed", seed, "Seed of the multi-start")->capture_default_str();
  atom_solve->add_option("--restart-out", restart_out, "Write the full SolveResult JSON here");
  atom_solve->add_option("--max-iterations", max_iterations, "Iteration limit per start")
      ->capture_default_str();
  atom_solve->callback([&] {
    run = [&] {
      muller::SolveOptions o;
      o.mode = relaxed ? muller::TraceMode::at_most : muller::TraceMode::equal;
      o.shift_included = shift;
      o.seed = seed;
      o.max_iterations = max_iterations;
      const auto r = muller::solve_atom(z, n, n_basis, o);
      const Json full = muller::to_json(r);
      if (!restart_out.empty()) write_text(restart_out, full.dump(1) + "\n");
      Json j;
      j["command"] = "atom solve";
      j["Z"] = z;
      j["N"] = n;
      j["mode"] = relaxed ? "trace_le" : "trace_eq";
      j["shift_included"] = shift;
      j["n_basis"] = n_basis;
      j["converged"] = r.converged;
      j["iterations"] = r.iterations;
      j["gradient_norm"] = r.gradient_norm;
      j["seed"] = r.seed;
      j["trace"] = r.trace_at_solution;
      j["breakdown"] = full["breakdown"];
      j["occupations"] = full["dm"]["occupations"];
      return Outcome{j, r.converged};
    };
  });

  // diatomic scan
  auto* diatomic = app.add_subcommand("diatomic", "Diatomic Muller experiments");
  diatomic->require_subcommand(1);
  auto* scan = diatomic->add_subcommand("scan", "Dissociation curve over an R grid");
  double z1 = 1.0;
  double z2 = 1.0;
  double r_min = 0.8;
  double r_max = 6.0;
  int steps = 14;
  bool refine = false;
  std::string out_path;
  scan->add_option("--Z1", z1, "Charge of the first nucleus")->required();
  scan->add_option("--Z2", z2, "Charge of the second nucleus")->required();
  scan->add_option("--N", n, "Electron number")->required();
  scan->add_option("--r-min", r_min, "Smallest separation (bohr)")->capture_default_str();
  scan->add_option("--r-max", r_max, "Largest separation (bohr)")->capture_default_str();
  scan->add_option("--steps", steps, "Number of separations")->capture_default_str();
  scan->add_flag("--refine", refine, "Golden-section refinement of the minimum");
  scan->add_option("--n-basis", n_basis, "Even-tempered functions per center")->capture_default_str();
  scan->add_option("--seed", seed, "Solver seed")->capture_default_str();
  scan->add_option("--out", out_path, "CSV file for the curve");
  scan->callback([&] {
    run = [&] {
      const auto opts = experiment_options(n_basis, seed);
      const auto curve = muller::dissociation_scan(z1, z2, n, linspace(r_min, r_max, steps), opts);
      bool ok = curve.asymptote_converged;
      for (const auto& p : curve.points) ok = ok && p.converged;
      Json j;
      j["command"] = "diatomic scan";
      j["curve"] = muller::to_json(curve);
      if (refine) {
        const auto m = muller::born_oppenheimer_min(curve, muller::diatomic_evaluator(curve, opts));
        j["minimum"] = muller::to_json(m);
      }
      if (!out_path.empty()) {
        std::ostringstream csv;
        muller::write_curve_csv(curve, csv);
        write_text(out_path, csv.str());
      }
      return Outcome{j, ok};
    };
  });

  // report binding
  auto* report = app.add_subcommand("report", "Inequality reports");
  report->require_subcommand(1);
  auto* binding = report->add_subcommand("binding", "Binding inequality for given splits");
  std::string splits;
  binding->add_option("--Z1", z1, "Charge of the first nucleus")->required();
  binding->add_option("--Z2", z2, "Charge of the second nucleus")->required();
  binding->add_option("--N", n, "Electron number")->required();
  binding->add_option("--splits", splits, "Splits N1:N2,N1:N2,...")->required();
  binding->add_option("--r-min", r_min, "Smallest separation (bohr)")->capture_default_str();
  binding->add_option("--r-max", r_max, "Largest separation (bohr)")->capture_default_str();
  binding->add_option("--steps", steps, "Number of separations")->capture_default_str();
  binding->add_option("--n-basis", n_basis, "Even-tempered functions per center")->capture_default_str();
  binding->add_option("--seed", seed, "Solver seed")->capture_default_str();
  binding->callback([&] {
    run = [&] {
      const auto rep = muller::binding_report(z1, z2, n, parse_splits(splits),
                                              linspace(r_min, r_max, steps),
                                              experiment_options(n_basis, seed));
      Json j;
      j["command"] = "report binding";
      j["report"] = muller::to_json(rep);
      return Outcome{j, rep.all_converged};
    };
  });

  // tf
  auto* tf = app.add_subcommand("tf", "Thomas-Fermi computations");
  tf->require_subcommand(1);
  auto* tf_atom_cmd = tf->add_subcommand("atom", "Radial TF atom or positive ion");
  tf_atom_cmd->add_option("--Z", z, "Nuclear charge")->required();
  tf_atom_cmd->add_option("--N", n, "Electron number, 0 < N <= Z")->required();
  tf_atom_cmd->add_option("--out", out_path, "CSV file with r,rho,phi");
  tf_atom_cmd->callback([&] {
    run = [&] {
      const auto s = muller::tf_atom(z, n);
      if (!out_path.empty()) {
        std::ostringstream csv;
        muller::write_tf_radial_csv(s, csv);
        write_text(out_path, csv.str());
      }
      Json j;
      j["command"] = "tf atom";
      j["solution"] = muller::to_json(s);
      j["equation_residual"] = muller::tf_equation_residual(s);
      return Outcome{j, true};
    };
  });

  auto* tf_diatomic_cmd = tf->add_subcommand("diatomic", "Neutral TF molecule on a cubic grid");
  double r_sep = 4.0;
  int grid = 96;
  double half_width = 0.0;
  tf_diatomic_cmd->add_option("--Z1", z1, "Charge of the first nucleus")->required();
  tf_diatomic_cmd->add_option("--Z2", z2, "Charge of the second nucleus")->required();
  tf_diatomic_cmd->add_option("--R", r_sep, "Separation (bohr)")->required();
  tf_diatomic_cmd->add_option("--grid", grid, "Intervals per side (even)")->capture_default_str();
  tf_diatomic_cmd->add_option("--half-width", half_width, "Box half width L (0 = R/2 + 8)")
      ->capture_default_str();
  tf_diatomic_cmd->add_option("--out", out_path, "Prefix for the binary field files");
  tf_diatomic_cmd->callback([&] {
    run = [&] {
      muller::GridSpec spec;
      spec.intervals = grid;
      spec.half_width = half_width;
      const auto s = muller::tf_diatomic(z1, z2, r_sep, spec);
      if (!out_path.empty()) muller::write_tf_grid(s, out_path);
      Json j;
      j["command"] = "tf diatomic";
      j["solution"] = muller::to_json(s);
      return Outcome{j, s.converged};
    };
  });

  auto* tf_gamma_cmd = tf->add_subcommand("gamma", "TF binding energy Gamma(R) with error bars");
  std::vector<double> r_list;
  tf_gamma_cmd->add_option("--Z1", z1, "Charge of the first nucleus")->required();
  tf_gamma_cmd->add_option("--Z2", z2, "Charge of the second nucleus")->required();
  tf_gamma_cmd->add_option("--r-list", r_list, "Separations, comma separated")
      ->required()
      ->delimiter(',');
  tf_gamma_cmd->add_option("--grid", grid, "Intervals per side (even)")->capture_default_str();
  tf_gamma_cmd->add_option("--half-width", half_width, "Box half width L (0 = R/2 + 8)")
      ->capture_default_str();
  tf_gamma_cmd->callback([&] {
    run = [&] {
      muller::GridSpec spec;
      spec.intervals = grid;
      spec.half_width = half_width;
      Json rows = Json::array();
      bool ok = true;
      for (double r : r_list) {
        const auto g = muller::tf_gamma(z1, z2, r, spec);
        Json row = muller::to_json(g);
        row["gamma_r7"] = g.gamma * std::pow(r, 7.0);
        rows.push_back(std::move(row));
        ok = ok && g.converged;
      }
      Json j;
      j["command"] = "tf gamma";
      j["Z1"] = z1;
      j["Z2"] = z2;
      j["intervals"] = grid;
      j["rows"] = std::move(rows);
      return Outcome{j, ok};
    };
  });

  // check inequalities
  auto* check = app.add_subcommand("check", "Randomized property audits");
  check->require_subcommand(1);
  auto* ineq = check->add_subcommand("inequalities", "Free bound, exchange bound, Lieb-Thirring, "
                                                     "rank-1 identity, gradient and projection audits");
  int trials = 500;
  ineq->add_option("--trials", trials, "Random instances per check")->capture_default_str();
  ineq->add_option("--seed", seed, "RNG seed")->capture_default_str();
  ineq->callback([&] {
    run = [&] {
      const auto a = muller::run_inequality_audit(trials, seed);
      Json j;
      j["command"] = "check inequalities";
      j["trials"] = a.trials;
      j["seed"] = a.seed;
      j["free_bound_min_slack"] = a.free_bound_min_slack;
      j["exchange_min_slack"] = a.exchange_min_slack;
      j["lieb_thirring_constant"] = muller::default_lieb_thirring_constant();
      j["lieb_thirring_min_slack"] = a.lieb_thirring_min_slack;
      j["rank_one_max_defect"] = a.rank_one_max_defect;
      j["fractional_min_slack"] = a.fractional_min_slack;
      j["gradient_max_error"] = a.gradient_max_error;
      j["projection_max_error"] = a.projection_max_error;
      j["passed"] = a.passed();
      return Outcome{j, true};
    };
  });

  // united-atom
  auto* united = app.add_subcommand("united-atom", "Molecule versus united atom energies");
  united->add_option("--Z1", z1, "Charge of the first nucleus")->required();
  united->add_option("--Z2", z2, "Charge of the second nucleus")->required();
  united->add_option("--N", n, "Electron number")->required();
  united->add_option("--r-list", r_list, "Separations, comma separated")->required()->delimiter(',');
  united->add_option("--n-basis", n_basis, "Even-tempered functions per center")->capture_default_str();
  united->add_option("--seed", seed, "Solver seed")->capture_default_str();
  united->callback([&] {
    run = [&] {
      const auto rows = muller::united_atom_check(z1, z2, n, r_list, experiment_options(n_basis, seed));
      Json arr = Json::array();
      bool ok = true;
      for (const auto& r : rows) {
        arr.push_back(muller::to_json(r));
        ok = ok && r.converged;
      }
      Json j;
      j["command"] = "united-atom";
      j["Z1"] = z1;
      j["Z2"] = z2;
      j["N"] = n;
      j["rows"] = std::move(arr);
      return Outcome{j, ok};
    };
  });

  // saturation
  auto* saturation = app.add_subcommand("saturation", "Trace at the relaxed, shifted minimizer");
  std::vector<double> n_list;
  saturation->add_option("--Z", z, "Nuclear charge")->required();
  saturation->add_option("--n-list", n_list, "Electron numbers, comma separated")
      ->required()
      ->delimiter(',');
  saturation->add_option("--n-basis", n_basis, "Even-tempered basis size")->capture_default_str();
  saturation->add_option("--seed", seed, "Solver seed")->capture_default_str();
  saturation->callback([&] {
    run = [&] {
      const auto rows = muller::saturation_scan(z, n_list, experiment_options(n_basis, seed));
      Json arr = Json::array();
      bool ok = true;
      for (const auto& r : rows) {
        arr.push_back(muller::to_json(r));
        ok = ok && r.converged;
      }
      Json j;
      j["command"] = "saturation";
      j["Z"] = z;
      j["rows"] = std::move(arr);
      return Outcome{j, ok};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    const Outcome out = run();
    std::cout << out.json.dump(indent) << '\n';
    return out.converged ? 0 : kExitNotConverged;
  } catch (const muller::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const muller::UnsupportedGeometry& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
