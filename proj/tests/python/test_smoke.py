import math

import numpy as np
import pytest

import muller


def test_hydrogen_window():
    r = muller.solve_atom(1.0, 1.0)
    assert r.converged
    assert -1.46 <= r.breakdown.total_electronic <= -0.49
    assert r.gamma.shape == (8, 8)
    assert math.isclose(float(np.trace(r.gamma)), 1.0, rel_tol=1e-10)


def test_relaxed_shifted_options():
    opts = muller.SolveOptions()
    opts.mode = muller.TraceMode.at_most
    opts.shift_included = True
    r = muller.solve_atom(1.0, 3.0, 6, opts)
    assert r.trace_at_solution < 3.0


def test_projection_sums_to_total():
    p = muller.project_capped_simplex(np.array([0.3, 1.7, -0.2]), 1.5)
    assert math.isclose(p.sum(), 1.5, rel_tol=1e-12)
    assert p.min() >= 0.0 and p.max() <= 1.0


def test_invalid_arguments_raise():
    with pytest.raises(ValueError):
        muller.solve_atom(-1.0, 1.0)


def test_tf_slope_and_scaling():
    assert abs(muller.tf_universal_slope() + 1.588071) < 1e-6
    e1 = muller.tf_atom(1.0, 1.0).energy
    e10 = muller.tf_atom(10.0, 10.0).energy
    assert math.isclose(e10 / 10.0 ** (7.0 / 3.0), e1, rel_tol=1e-6)


def test_scan_tail_matches_atoms():
    c = muller.dissociation_scan(1.0, 1.0, 2.0, [50.0], 6)
    assert abs(c.points[0].shifted_total - c.asymptote) < 1e-3


def test_audit_runs():
    a = muller.run_inequality_audit(20, 4)
    assert a.free_bound_min_slack >= -1e-9
    assert a.projection_max_error <= 1e-8
