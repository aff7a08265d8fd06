# sweeps/profiles.py
"""
Post-processing of 1-D scans: line-profile centers and widths, power-law
exponents and delay optima.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from system.config import RunConfig

from .scan import ScanAxis, ScanSpec, scan

logger = logging.getLogger(__name__)

MIN_PROFILE_POINTS = 33
ASYMMETRY_TOL = 0.2


@dataclass(frozen=True)
class ProfileFit:
    center: float
    width: float
    peak: float
    peak_at: float
    left: float
    right: float
    asymmetric: bool
    residual: float
    ok: bool

    @property
    def skew(self) -> float:
        """Half-width right of the maximum minus half-width left of it."""
        return (self.right - self.peak_at) - (self.peak_at - self.left)


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    stderr: float
    intercept: float
    r_value: float
    n_points: int


@dataclass(frozen=True)
class DelayCurve:
    delays: np.ndarray
    values: np.ndarray
    optimum_delay: float
    optimum_value: float
    width: float

    @property
    def optimum_over_width(self) -> float:
        return self.optimum_delay / self.width


def _crossing(x0: float, x1: float, y0: float, y1: float, level: float) -> float:
    if y1 == y0:
        return 0.5 * (x0 + x1)
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0)


def line_profile(x: Sequence[float], y: Sequence[float]) -> ProfileFit:
    """
    Center is the midpoint of the two half-height crossings (linear
    interpolation), width their distance. The maximum is located by the argmax
    refined with a three-point parabola. A profile that never falls below half
    height on a side returns ok=False with the center at the maximum.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"profile needs matching 1-D arrays, got {x.shape} and {y.shape}")
    if x.size < MIN_PROFILE_POINTS:
        raise ValueError(f"profile needs at least {MIN_PROFILE_POINTS} points, got {x.size}")
    if np.any(np.diff(x) <= 0):
        raise ValueError("profile abscissa must be strictly increasing")
    if not np.all(np.isfinite(y)):
        logger.warning("profile has %d non-finite samples; treating them as zero", int(np.sum(~np.isfinite(y))))
        y = np.nan_to_num(y, nan=0.0, posinf=0.0, neginf=0.0)

    k = int(np.argmax(y))
    peak = float(y[k])
    peak_at = float(x[k])
    residual = 0.0
    if 0 < k < x.size - 1:
        coeffs = np.polyfit(x[k - 1:k + 2], y[k - 1:k + 2], 2)
        if coeffs[0] < 0:
            vertex = -coeffs[1] / (2.0 * coeffs[0])
            peak_at = float(np.clip(vertex, x[k - 1], x[k + 1]))
            peak = float(np.polyval(coeffs, peak_at))

    half = 0.5 * peak
    left = right = float("nan")
    for i in range(k, 0, -1):
        if y[i - 1] < half <= y[i]:
            left = _crossing(x[i - 1], x[i], y[i - 1], y[i], half)
            break
    for i in range(k, x.size - 1):
        if y[i + 1] < half <= y[i]:
            right = _crossing(x[i], x[i + 1], y[i], y[i + 1], half)
            break
    ok = bool(np.isfinite(left) and np.isfinite(right) and peak > 0)
    if not ok:
        logger.warning("profile does not fall to half maximum on both sides of %.6g", peak_at)
        return ProfileFit(peak_at, float("nan"), peak, peak_at, left, right, False, float("nan"), False)

    width = right - left
    center = 0.5 * (left + right)
    lobe = (x >= left) & (x <= right)
    if np.count_nonzero(lobe) >= 3:
        fit = np.polyfit(x[lobe], y[lobe], 2)
        residual = float(np.sqrt(np.mean((np.polyval(fit, x[lobe]) - y[lobe]) ** 2)))
    skew = (right - peak_at) - (peak_at - left)
    return ProfileFit(float(center), float(width), peak, peak_at, float(left), float(right),
                      bool(abs(skew) > ASYMMETRY_TOL * width), residual, True)


def fit_scaling(x: Sequence[float], y: Sequence[float]) -> ScalingFit:
    """Least-squares slope of log y against log x over the finite positive pairs."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    keep = np.isfinite(x) & np.isfinite(y) & (x > 0) & (y > 0)
    if np.count_nonzero(keep) < 3:
        raise ValueError(f"scaling fit needs at least 3 valid points, got {int(np.count_nonzero(keep))}")
    fit = stats.linregress(np.log(x[keep]), np.log(y[keep]))
    return ScalingFit(float(fit.slope), float(fit.stderr), float(fit.intercept), float(fit.rvalue),
                      int(np.count_nonzero(keep)))


def delay_curve(cfg: RunConfig, delays: Sequence[float], observable: str = "P_target",
                workers: Optional[int] = None) -> DelayCurve:
    """Efficiency against pulse delay; the delay list has to straddle zero."""
    delays = np.asarray(delays, dtype=float)
    if delays.size < 2 or not (delays.min() < 0 < delays.max()):
        raise ValueError("delay list must contain negative and positive delays")
    spec = ScanSpec(cfg, (ScanAxis("pulses.delay", tuple(delays)),), observable)
    result = scan(spec, workers=workers)
    values = result.values.copy()
    if not np.any(np.isfinite(values)):
        raise ValueError("every delay point failed")
    k = int(np.nanargmax(values))
    return DelayCurve(delays, values, float(delays[k]), float(values[k]), float(cfg.pulses["width"]))


def half_crossing(x: Sequence[float], y: Sequence[float]) -> float:
    """First abscissa past the maximum where the curve drops through half its maximum; NaN if it never does."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    k = int(np.nanargmax(y))
    half = 0.5 * y[k]
    for i in range(k, x.size - 1):
        if y[i + 1] < half <= y[i]:
            return float(_crossing(x[i], x[i + 1], y[i], y[i + 1], half))
    return float("nan")
