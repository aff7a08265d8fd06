"""
Quantum core
Value types (states, density matrices, Bloch vectors, time grids) and observables.
"""

from .states import (
    BLOCH_TOL,
    EIGEN_TOL,
    NORM_TOL,
    BlochVector,
    DensityMatrix,
    PhaseConventionError,
    StateVector,
    TimeGrid,
    bloch_from_three_state,
    fidelity_to,
    populations,
)

__all__ = [
    "BLOCH_TOL",
    "EIGEN_TOL",
    "NORM_TOL",
    "BlochVector",
    "DensityMatrix",
    "PhaseConventionError",
    "StateVector",
    "TimeGrid",
    "bloch_from_three_state",
    "fidelity_to",
    "populations",
]
