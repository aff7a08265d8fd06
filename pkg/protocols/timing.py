# protocols/timing.py
"""
Transition time of a population rise from epsilon to 1 - epsilon, measured and
compared with the Gaussian-pair estimate.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from propagation import SimResult

from .oracles import analytic_oracles

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransitionTimeEstimate:
    """measured = t(P = 1 - eps) - t(P = eps) on the final rise of the target population."""

    epsilon: float
    measured: float
    predicted: float
    defined: bool
    t_low: float = float("nan")
    t_high: float = float("nan")

    @property
    def relative_error(self) -> float:
        if not self.defined or not np.isfinite(self.predicted) or self.predicted == 0:
            return float("nan")
        return abs(self.measured - self.predicted) / self.predicted


def _crossing(times: np.ndarray, values: np.ndarray, k: int, level: float) -> float:
    """Linear interpolation of the crossing of `level` between samples k and k + 1."""
    v0, v1 = values[k], values[k + 1]
    if v1 == v0:
        return float(times[k])
    return float(times[k] + (level - v0) * (times[k + 1] - times[k]) / (v1 - v0))


def population_transition_time(times: np.ndarray, p: np.ndarray, epsilon: float = 0.01, width: float = 1.0,
                               delay: Optional[float] = None) -> TransitionTimeEstimate:
    """Same measurement on a bare target-population column, e.g. read back from a timeseries file."""
    if not 0.0 < epsilon < 0.5:
        raise ValueError(f"epsilon must lie in (0, 1/2), got {epsilon}")
    times = np.asarray(times, dtype=float)
    p = np.asarray(p, dtype=float)
    if times.shape != p.shape or times.size < 2:
        raise ValueError(f"need matching time and population columns, got {times.shape} and {p.shape}")
    predicted = float("nan")
    if delay is not None and delay != 0:
        predicted = float(analytic_oracles("transition_time", width=width, delay=delay, epsilon=epsilon))

    high = np.nonzero(p >= 1.0 - epsilon)[0]
    if high.size == 0 or high[0] == 0:
        logger.warning("target population never rises through %.3g; transition time undefined", 1.0 - epsilon)
        return TransitionTimeEstimate(epsilon, float("nan"), predicted, False)
    k_high = int(high[0])
    low = np.nonzero(p[:k_high] <= epsilon)[0]
    if low.size == 0:
        logger.warning("target population starts above %.3g; transition time undefined", epsilon)
        return TransitionTimeEstimate(epsilon, float("nan"), predicted, False)
    k_low = int(low[-1])
    t_low = _crossing(times, p, k_low, epsilon)
    t_high = _crossing(times, p, k_high - 1, 1.0 - epsilon)
    return TransitionTimeEstimate(epsilon, t_high - t_low, predicted, True, t_low, t_high)


def transition_time(result: SimResult, epsilon: float = 0.01, width: float = 1.0,
                    delay: Optional[float] = None, target: Optional[int] = None) -> TransitionTimeEstimate:
    target = result.dim if target is None else int(target)
    if not 1 <= target <= result.dim:
        raise ValueError(f"target level {target} outside 1..{result.dim}")
    return population_transition_time(np.asarray(result.grid.samples), result.populations[:, target - 1],
                                      epsilon, width, delay)
