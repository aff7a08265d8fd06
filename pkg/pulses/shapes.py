# pulses/shapes.py
"""
Pulse envelopes.

A PulseShape evaluates to peak * envelope(x) * exp(i*phase) with
x = (t - center) / width (mirrored to -x when `reverse` is set).

Envelopes:
    gaussian          exp(-x^2)
    sin2              sin^2(pi*(x+1)/2) on |x| < 1, exactly 0 outside
    flat              1 on |x| <= 1/2, 0 outside
    ddp_f             sin(pi*f/2), f = 1/(1+exp(-4x))
    ddp_g_windowed    g*sin(pi*f/2), g = exp(-(x/2)^6)
    external_samples  linear interpolation of a (t, complex) table, 0 outside
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import expit

SHAPE_KINDS = ("gaussian", "sin2", "flat", "ddp_f", "ddp_g_windowed", "external_samples")

# gaussian/ddp tails beyond this many widths are below exp(-16)
TAIL_WIDTHS = 4.0

TimeLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class PulseShape:
    kind: str
    peak: float
    width: float
    center: float = 0.0
    phase: float = 0.0
    reverse: bool = False
    sample_times: Optional[np.ndarray] = field(default=None, compare=False, repr=False)
    sample_values: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in SHAPE_KINDS:
            raise ValueError(f"unknown pulse kind {self.kind!r}; expected one of {SHAPE_KINDS}")
        if not np.isfinite(self.peak) or self.peak < 0:
            raise ValueError(f"peak must be finite and >= 0, got {self.peak}")
        if not np.isfinite(self.width) or self.width <= 0:
            raise ValueError(f"width must be > 0, got {self.width}")
        if not np.isfinite(self.center) or not np.isfinite(self.phase):
            raise ValueError("center and phase must be finite")
        object.__setattr__(self, "peak", float(self.peak))
        object.__setattr__(self, "width", float(self.width))
        object.__setattr__(self, "center", float(self.center))
        object.__setattr__(self, "phase", float(self.phase))
        if self.kind == "external_samples":
            if self.sample_times is None or self.sample_values is None:
                raise ValueError("external_samples needs sample_times and sample_values")
            ts = np.array(self.sample_times, dtype=float).reshape(-1)
            vs = np.array(self.sample_values, dtype=complex).reshape(-1)
            if ts.size < 2 or ts.size != vs.size:
                raise ValueError(f"sample table needs >= 2 rows of equal length, got {ts.size}/{vs.size}")
            if np.any(np.diff(ts) <= 0):
                raise ValueError("sample_times must be strictly increasing")
            ts.setflags(write=False)
            vs.setflags(write=False)
            object.__setattr__(self, "sample_times", ts)
            object.__setattr__(self, "sample_values", vs)

    @classmethod
    def from_table(cls, times: Sequence[float], values: Sequence[complex], peak: float = 1.0,
                   width: Optional[float] = None, phase: float = 0.0) -> "PulseShape":
        """Tabulated pulse; `width` defaults to an eighth of the table span."""
        ts = np.asarray(times, dtype=float)
        if width is None:
            width = (ts[-1] - ts[0]) / 8.0 if ts.size >= 2 else 1.0
        return cls("external_samples", peak, width, phase=phase,
                   sample_times=ts, sample_values=np.asarray(values, dtype=complex))

    def support(self) -> Tuple[float, float]:
        """Interval outside which the envelope is (numerically) zero."""
        c, w = self.center, self.width
        if self.kind == "gaussian" or self.kind == "ddp_g_windowed":
            return c - TAIL_WIDTHS * w, c + TAIL_WIDTHS * w
        if self.kind == "sin2":
            return c - w, c + w
        if self.kind == "flat":
            return c - w / 2.0, c + w / 2.0
        if self.kind == "ddp_f":
            return -np.inf, np.inf
        lo, hi = float(self.sample_times[0]), float(self.sample_times[-1])
        if self.reverse:
            lo, hi = 2.0 * c - hi, 2.0 * c - lo
        return lo, hi


# ----------------- envelopes -----------------

def _envelope(kind: str, x: np.ndarray) -> np.ndarray:
    if kind == "gaussian":
        return np.exp(-x ** 2)
    if kind == "sin2":
        return np.where(np.abs(x) < 1.0, np.sin(np.pi * (x + 1.0) / 2.0) ** 2, 0.0)
    if kind == "flat":
        return np.where(np.abs(x) <= 0.5, 1.0, 0.0)
    if kind == "ddp_f":
        return np.sin(np.pi * expit(4.0 * x) / 2.0)
    if kind == "ddp_g_windowed":
        return np.exp(-(x / 2.0) ** 6) * np.sin(np.pi * expit(4.0 * x) / 2.0)
    raise ValueError(f"no closed-form envelope for {kind!r}")


def _envelope_dx(kind: str, x: np.ndarray) -> np.ndarray:
    if kind == "gaussian":
        return -2.0 * x * np.exp(-x ** 2)
    if kind == "sin2":
        return np.where(np.abs(x) < 1.0, (np.pi / 2.0) * np.sin(np.pi * (x + 1.0)), 0.0)
    if kind == "flat":
        return np.zeros_like(x)
    f = expit(4.0 * x)
    s = np.sin(np.pi * f / 2.0)
    ds = np.cos(np.pi * f / 2.0) * (np.pi / 2.0) * 4.0 * f * (1.0 - f)
    if kind == "ddp_f":
        return ds
    if kind == "ddp_g_windowed":
        g = np.exp(-(x / 2.0) ** 6)
        dg = -3.0 * (x / 2.0) ** 5 * g
        return dg * s + g * ds
    raise ValueError(f"no closed-form derivative for {kind!r}")


def _local_time(shape: PulseShape, t: np.ndarray) -> np.ndarray:
    if shape.reverse:
        return 2.0 * shape.center - t
    return t


def _as_output(values: np.ndarray, scalar: bool):
    return complex(values.reshape(-1)[0]) if scalar else values


def eval_shape(shape: PulseShape, t: TimeLike):
    """Complex Rabi amplitude of `shape` at time(s) t."""
    scalar = np.ndim(t) == 0
    tt = np.asarray(t, dtype=float)
    factor = shape.peak * np.exp(1j * shape.phase)
    if shape.kind == "external_samples":
        tl = _local_time(shape, tt)
        ts, vs = shape.sample_times, shape.sample_values
        env = np.interp(tl, ts, vs.real, left=0.0, right=0.0) \
            + 1j * np.interp(tl, ts, vs.imag, left=0.0, right=0.0)
    else:
        x = (tt - shape.center) / shape.width
        if shape.reverse:
            x = -x
        env = _envelope(shape.kind, x)
    return _as_output(factor * np.asarray(env, dtype=complex), scalar)


def eval_shape_derivative(shape: PulseShape, t: TimeLike):
    """Time derivative of eval_shape; tables use central differences."""
    scalar = np.ndim(t) == 0
    tt = np.asarray(t, dtype=float)
    factor = shape.peak * np.exp(1j * shape.phase)
    if shape.kind == "external_samples":
        ts, vs = shape.sample_times, shape.sample_values
        slope = np.gradient(vs, ts)
        tl = _local_time(shape, tt)
        inside = (tl >= ts[0]) & (tl <= ts[-1])
        d = np.interp(tl, ts, slope.real) + 1j * np.interp(tl, ts, slope.imag)
        d = np.where(inside, d, 0.0)
        if shape.reverse:
            d = -d
    else:
        x = (tt - shape.center) / shape.width
        sign = 1.0
        if shape.reverse:
            x = -x
            sign = -1.0
        d = sign * _envelope_dx(shape.kind, x) / shape.width
    return _as_output(factor * np.asarray(d, dtype=complex), scalar)
