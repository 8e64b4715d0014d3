"""Coupled activity-current large deviations of a three-qubit open system."""

from ._core import (
    ModelParams,
    Sector,
    SymldfError,
    hamiltonian,
    kinks,
    liouvillian,
    mean_xi,
    mu,
    run_command,
    sector_averages,
    steady_state,
    theta,
    zeta,
)

__all__ = [
    "ModelParams",
    "Sector",
    "SymldfError",
    "hamiltonian",
    "kinks",
    "liouvillian",
    "mean_xi",
    "mu",
    "run_command",
    "sector_averages",
    "steady_state",
    "theta",
    "zeta",
]
