"""Reaction-diffusion SIR model with noncompliance (C++ core)."""

from ._core import (  # noqa: F401
    PRESETS,
    Grid,
    InvalidArgument,
    InvariantViolation,
    IoError,
    ParseError,
    Scenario,
    SolverError,
    helmholtz_solve,
    integrate,
    laplacian,
    linearization_check,
    parse_scenario,
    preset,
    principal_eigenpair,
    read_snapshot,
    reproduction_number,
    run,
    sign_consistency,
    steady_state,
)

__all__ = [name for name in dir() if not name.startswith("_")]
