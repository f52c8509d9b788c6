"""Muller density-matrix functional toolkit."""

from ._core import (
    InvalidArgument,
    SolveOptions,
    TraceMode,
    ValidationError,
    dissociation_scan,
    project_capped_simplex,
    run_inequality_audit,
    solve_atom,
    tf_atom,
    tf_gamma,
    tf_universal_slope,
)

__all__ = [
    "InvalidArgument",
    "SolveOptions",
    "TraceMode",
    "ValidationError",
    "dissociation_scan",
    "project_capped_simplex",
    "run_inequality_audit",
    "solve_atom",
    "tf_atom",
    "tf_gamma",
    "tf_universal_slope",
]
