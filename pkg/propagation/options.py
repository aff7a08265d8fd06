# propagation/options.py
"""Integrator options, the propagation error and the dense SimResult both propagators return."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from core import DensityMatrix, StateVector, TimeGrid

METHODS = ("exp_midpoint", "rk_adaptive")
STEPS_PER_WIDTH = 64


class PropagationError(RuntimeError):
    """Integration fault (step underflow, trace drift). `partial` holds what was computed."""

    def __init__(self, message: str, partial: Any = None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class IntegratorOptions:
    method: str = "exp_midpoint"
    rel_tol: float = 1e-6
    abs_tol: float = 1e-10
    max_step: Optional[float] = None
    min_step: float = 1e-9
    dense_output_samples: int = 1025

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown integrator method {self.method!r}; expected one of {METHODS}")
        if not 1e-14 <= self.rel_tol <= 1e-3:
            raise ValueError(f"rel_tol must lie in [1e-14, 1e-3], got {self.rel_tol}")
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be > 0, got {self.abs_tol}")
        if not self.min_step > 0:
            raise ValueError(f"min_step must be > 0, got {self.min_step}")
        if self.max_step is not None and self.max_step < self.min_step:
            raise ValueError(f"max_step ({self.max_step}) must be >= min_step ({self.min_step})")
        if int(self.dense_output_samples) < 2:
            raise ValueError(f"dense_output_samples must be >= 2, got {self.dense_output_samples}")

    def step_cap(self, time_scale: float) -> float:
        """Explicit max_step, else the shortest pulse width / 64."""
        if self.max_step is not None:
            return float(self.max_step)
        return max(float(time_scale) / STEPS_PER_WIDTH, self.min_step)


@dataclass(frozen=True)
class SimResult:
    """
    Dense output of one propagation.

    data: (n_t, dim) amplitudes for TDSE runs, (n_t, dim, dim) density
    matrices for Liouville runs.
    """

    grid: TimeGrid
    kind: str
    data: np.ndarray = field(compare=False, repr=False)
    populations: np.ndarray = field(compare=False, repr=False)
    loss_accumulated: np.ndarray = field(compare=False, repr=False)
    diagnostics: Dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def dim(self) -> int:
        return int(self.populations.shape[1])

    @property
    def states(self) -> Tuple:
        if self.kind == "liouville":
            return tuple(DensityMatrix(r) for r in self.data)
        return tuple(StateVector(a) for a in self.data)

    @property
    def final_state(self):
        if self.kind == "liouville":
            return DensityMatrix(self.data[-1])
        return StateVector(self.data[-1])

    @property
    def final_populations(self) -> np.ndarray:
        return np.array(self.populations[-1])

    def coherence(self, m: int, n: int) -> np.ndarray:
        """|rho_mn| (Liouville) or |C_m C_n*| (TDSE), 1-based levels."""
        if self.kind == "liouville":
            return np.abs(self.data[:, m - 1, n - 1])
        return np.abs(self.data[:, m - 1] * np.conj(self.data[:, n - 1]))
