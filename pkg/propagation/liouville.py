# propagation/liouville.py
"""
Density-matrix propagation  d(rho)/dt = -i (H rho - rho H^dagger) - D(rho)

on row-major vec(rho):  L = -i (H (x) 1 - 1 (x) conj(H)) - diag(vec gamma).

All dim**2 entries are propagated rather than the upper triangle alone; each
step is hermitized, so the lower triangle stays the conjugate of the upper.
"""

import logging
from typing import Optional, Union

import numpy as np
from scipy import linalg

from core import DensityMatrix, StateVector, TimeGrid
from models import ModelSpec, build_dissipator

from .options import IntegratorOptions, PropagationError, SimResult
from .stepper import LinearFlow, integrate
from .tdse import default_grid

logger = logging.getLogger(__name__)

TRACE_TOL = 1e-6


def liouvillian(h: np.ndarray, dephasing_super: np.ndarray) -> np.ndarray:
    eye = np.eye(h.shape[0])
    return -1j * (np.kron(h, eye) - np.kron(eye, h.conj())) - dephasing_super


def hermitize(rho: np.ndarray) -> np.ndarray:
    """Rebuild rho from its upper triangle."""
    upper = np.triu(rho, 1)
    out = upper + upper.conj().T
    out[np.diag_indices_from(out)] = np.real(np.diag(rho))
    return out


def _initial_rho(model: ModelSpec, rho0) -> np.ndarray:
    if rho0 is None:
        rho0 = DensityMatrix.from_state(StateVector.basis(model.dim, 1))
    elif isinstance(rho0, StateVector):
        rho0 = DensityMatrix.from_state(rho0)
    elif not isinstance(rho0, DensityMatrix):
        rho0 = DensityMatrix(rho0)
    if rho0.dim != model.dim:
        raise ValueError(f"initial density matrix has dim {rho0.dim}, model has {model.dim}")
    if abs(rho0.trace() - 1.0) > 1e-8:
        raise ValueError(f"initial density matrix must have unit trace, got {rho0.trace():.12f}")
    if rho0.min_eigenvalue() < -1e-10:
        raise ValueError(f"initial density matrix is not positive semidefinite (min eig {rho0.min_eigenvalue():.3e})")
    return np.array(rho0.entries)


def propagate_liouville(model: ModelSpec, rho0: Union[DensityMatrix, StateVector, np.ndarray, None] = None,
                        grid: Optional[TimeGrid] = None,
                        opts: Optional[IntegratorOptions] = None) -> SimResult:
    opts = opts or IntegratorOptions()
    grid = grid if grid is not None else default_grid(model, opts)
    dim = model.dim
    rho = _initial_rho(model, rho0)
    d_super = build_dissipator(model.dephasing).superoperator()

    def advance(t_mid: float, h: float, y: np.ndarray) -> np.ndarray:
        return linalg.expm(liouvillian(model.matrix(t_mid), d_super) * h) @ y

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return liouvillian(model.matrix(t), d_super) @ y

    def project(y: np.ndarray) -> np.ndarray:
        return hermitize(y.reshape(dim, dim)).reshape(-1)

    flow = LinearFlow(advance, rhs, project)
    max_step = opts.step_cap(model.pulse_set.time_scale())
    try:
        vecs, stats = integrate(flow, rho.reshape(-1), grid.samples, opts, max_step)
    except PropagationError as e:
        times, partial = e.partial
        result = None
        if len(times) >= 2:
            part = np.asarray(partial).reshape(len(times), dim, dim)
            result = _result(model, TimeGrid.from_samples(times), part, {"aborted": True})
        raise PropagationError(str(e), partial=result) from e
    rhos = vecs.reshape(grid.samples.size, dim, dim)
    diag = stats.as_dict()
    diag["method"] = opts.method
    result = _result(model, grid, rhos, diag)
    if not model.has_loss and result.diagnostics["trace_drift"] > TRACE_TOL:
        raise PropagationError(
            f"trace drift {result.diagnostics['trace_drift']:.3e} exceeds {TRACE_TOL:.0e}", partial=result
        )
    return result


def _result(model: ModelSpec, grid: TimeGrid, rhos: np.ndarray, diag: dict) -> SimResult:
    pops = np.real(np.einsum("kii->ki", rhos))
    trace = pops.sum(axis=1)
    loss = 1.0 - trace if model.has_loss else np.zeros_like(trace)
    diag["trace_drift"] = 0.0 if model.has_loss else float(np.max(np.abs(trace - 1.0)))
    diag["min_eigenvalue"] = float(min(np.linalg.eigvalsh(r)[0] for r in rhos))
    diag["max_p2"] = float(np.max(pops[:, 1]))
    diag["max_middle"] = float(np.max(pops[:, 1:-1])) if model.dim > 2 else 0.0
    if diag["min_eigenvalue"] < -1e-7:
        logger.warning("density matrix eigenvalue %.3e below zero", diag["min_eigenvalue"])
    return SimResult(grid, "liouville", rhos, pops, loss, diag)
