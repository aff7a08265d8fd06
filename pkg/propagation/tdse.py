# propagation/tdse.py
"""Amplitude propagation i dC/dt = H(t) C."""

import logging
from typing import Optional, Union

import numpy as np
from scipy import linalg

from core import NORM_TOL, StateVector, TimeGrid
from models import ModelSpec

from .options import IntegratorOptions, PropagationError, SimResult
from .stepper import LinearFlow, integrate

logger = logging.getLogger(__name__)


def hermitian_propagator(h: np.ndarray, dt: float) -> np.ndarray:
    """exp(-i H dt) for Hermitian H via eigendecomposition."""
    vals, vecs = linalg.eigh(h)
    return (vecs * np.exp(-1j * vals * dt)) @ vecs.conj().T


def general_propagator(h: np.ndarray, dt: float) -> np.ndarray:
    """exp(-i H dt) for non-Hermitian H (scaling and squaring)."""
    return linalg.expm(-1j * dt * h)


def default_grid(model: ModelSpec, opts: IntegratorOptions) -> TimeGrid:
    lo, hi = model.pulse_set.span()
    return TimeGrid.uniform(lo, hi, int(opts.dense_output_samples))


def _initial_state(model: ModelSpec, psi0: Union[StateVector, np.ndarray, None]) -> np.ndarray:
    if psi0 is None:
        return StateVector.basis(model.dim, 1).amplitudes.copy()
    amps = psi0.amplitudes if isinstance(psi0, StateVector) else np.asarray(psi0, dtype=complex)
    if amps.size != model.dim:
        raise ValueError(f"initial state has dim {amps.size}, model has {model.dim}")
    norm = float(np.vdot(amps, amps).real)
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"initial state must be normalized, got norm {norm:.12f}")
    return np.array(amps, dtype=complex)


def tdse_flow(model: ModelSpec) -> LinearFlow:
    step = general_propagator if model.has_loss else hermitian_propagator

    def advance(t_mid: float, h: float, y: np.ndarray) -> np.ndarray:
        return step(model.matrix(t_mid), h) @ y

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return -1j * (model.matrix(t) @ y)

    return LinearFlow(advance, rhs)


def propagate_tdse(model: ModelSpec, psi0: Union[StateVector, np.ndarray, None] = None,
                   grid: Optional[TimeGrid] = None,
                   opts: Optional[IntegratorOptions] = None) -> SimResult:
    opts = opts or IntegratorOptions()
    grid = grid if grid is not None else default_grid(model, opts)
    y0 = _initial_state(model, psi0)
    max_step = opts.step_cap(model.pulse_set.time_scale())
    try:
        amps, stats = integrate(tdse_flow(model), y0, grid.samples, opts, max_step)
    except PropagationError as e:
        times, partial = e.partial
        result = None
        if len(times) >= 2:
            result = _result(model, TimeGrid.from_samples(times), np.asarray(partial), {"aborted": True})
        raise PropagationError(str(e), partial=result) from e
    diag = stats.as_dict()
    diag["method"] = opts.method
    return _result(model, grid, amps, diag)


def _result(model: ModelSpec, grid: TimeGrid, amps: np.ndarray, diag: dict) -> SimResult:
    pops = np.abs(amps) ** 2
    norm = pops.sum(axis=1)
    if model.has_loss:
        loss = 1.0 - norm
    else:
        loss = np.zeros_like(norm)
        drift = float(np.max(np.abs(1.0 - norm)))
        diag["norm_drift"] = drift
        if drift > 1e3 * NORM_TOL:
            logger.warning("norm drift %.3e in a Hermitian run", drift)
    diag["max_p2"] = float(np.max(pops[:, 1]))
    diag["max_middle"] = float(np.max(pops[:, 1:-1])) if model.dim > 2 else 0.0
    return SimResult(grid, "tdse", amps, pops, loss, diag)
