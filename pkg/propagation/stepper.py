# propagation/stepper.py
"""
Adaptive time stepping shared by the TDSE, Liouville and torque propagators.

exp_midpoint: y <- exp(A(t + h/2) h) y, where the flow supplies `advance`.
Each step is compared with two half steps; the half-step result is kept and
the difference / 3 is the local error estimate. Steps land exactly on the
requested output samples.

rk_adaptive: scipy DOP853 on y' = rhs(t, y).
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np
from scipy.integrate import solve_ivp

from .options import IntegratorOptions, PropagationError

logger = logging.getLogger(__name__)

GROW_MAX = 4.0
SHRINK_MIN = 0.2
SAFETY = 0.9


@dataclass(frozen=True)
class LinearFlow:
    advance: Callable[[float, float, np.ndarray], np.ndarray]
    rhs: Callable[[float, np.ndarray], np.ndarray]
    project: Optional[Callable[[np.ndarray], np.ndarray]] = None


@dataclass
class StepStats:
    steps: int = 0
    rejected: int = 0
    min_step_taken: float = np.inf
    extra: Dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, float]:
        out = {"steps": self.steps, "rejected": self.rejected,
               "min_step_taken": float(self.min_step_taken)}
        out.update(self.extra)
        return out


def _factor(err: float, tol: float) -> float:
    if err == 0.0:
        return GROW_MAX
    return min(GROW_MAX, max(SHRINK_MIN, SAFETY * (tol / err) ** (1.0 / 3.0)))


def _integrate_midpoint(flow: LinearFlow, y0: np.ndarray, times: np.ndarray,
                        opts: IntegratorOptions, max_step: float):
    out = np.empty((times.size,) + y0.shape, dtype=y0.dtype)
    out[0] = y0
    stats = StepStats()
    y = y0
    t = float(times[0])
    h_nat = max_step
    for k in range(1, times.size):
        t_next = float(times[k])
        while True:
            remaining = t_next - t
            if remaining <= 1e-13 * max(1.0, abs(t_next)):
                t = t_next
                break
            h = min(h_nat, remaining, max_step)
            clipped = h < h_nat
            y1 = flow.advance(t + 0.5 * h, h, y)
            yh = flow.advance(t + 0.25 * h, 0.5 * h, y)
            y2 = flow.advance(t + 0.75 * h, 0.5 * h, yh)
            err = float(np.linalg.norm(y2 - y1)) / 3.0
            tol = opts.abs_tol + opts.rel_tol * float(np.linalg.norm(y2))
            if err <= tol:
                t += h
                y = flow.project(y2) if flow.project is not None else y2
                stats.steps += 1
                stats.min_step_taken = min(stats.min_step_taken, h)
                grown = min(max_step, h * _factor(err, tol))
                h_nat = max(h_nat, grown) if clipped else grown
                continue
            stats.rejected += 1
            h_nat = h * _factor(err, tol)
            if h_nat < opts.min_step and remaining > opts.min_step:
                out = out[:k]
                raise PropagationError(
                    f"step size underflow at t={t:.6g}: needed h={h_nat:.3e} < min_step={opts.min_step:.1e}",
                    partial=(times[:k], out),
                )
        out[k] = y
    return out, stats


def _integrate_rk(flow: LinearFlow, y0: np.ndarray, times: np.ndarray,
                  opts: IntegratorOptions, max_step: float):
    shape = y0.shape
    try:
        sol = solve_ivp(lambda t, y: flow.rhs(t, y.reshape(shape)).reshape(-1),
                        (float(times[0]), float(times[-1])), y0.reshape(-1),
                        method="DOP853", t_eval=times, rtol=opts.rel_tol, atol=opts.abs_tol,
                        max_step=max_step)
    except Exception as e:
        raise RuntimeError(f"DOP853 integration failed: {e}") from e
    if sol.status < 0 or sol.y.shape[1] != times.size:
        done = sol.y.shape[1]
        partial = (times[:done], sol.y.T.reshape((done,) + shape))
        raise PropagationError(f"DOP853 integration failed: {sol.message}", partial=partial)
    ys = sol.y.T.reshape((times.size,) + shape)
    if flow.project is not None:
        ys = np.array([flow.project(y) for y in ys])
    stats = StepStats(steps=int(sol.nfev), rejected=0)
    stats.extra["nfev"] = int(sol.nfev)
    return ys, stats


def integrate(flow: LinearFlow, y0: np.ndarray, times: np.ndarray, opts: IntegratorOptions,
              max_step: float):
    """Solution at every entry of `times` (times[0] is the initial time)."""
    times = np.asarray(times, dtype=float)
    y0 = np.asarray(y0)
    if opts.method == "rk_adaptive":
        ys, stats = _integrate_rk(flow, y0, times, opts, max_step)
    else:
        ys, stats = _integrate_midpoint(flow, y0, times, opts, max_step)
    logger.debug("%s: %d steps, %d rejected", opts.method, stats.steps, stats.rejected)
    return ys, stats
