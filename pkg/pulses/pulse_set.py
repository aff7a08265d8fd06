# pulses/pulse_set.py
"""
PulseSet: couplings per link, summed when several pulses share a link.

A link label is an ordered pair of 1-based levels (a, b); its coupling enters
the Hamiltonian below the diagonal at [b, a] and conjugated above it.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy.integrate import quad

from .shapes import PulseShape, TimeLike, eval_shape, eval_shape_derivative

logger = logging.getLogger(__name__)

Link = Tuple[int, int]
LINK_P: Link = (1, 2)
LINK_S: Link = (2, 3)

PAIR_KINDS = ("resonant_alternating", "detuned_fixed_order")


def normalize_link(link: Iterable[int]) -> Link:
    pair = tuple(int(v) for v in link)
    if len(pair) != 2:
        raise ValueError(f"link must have two levels, got {link!r}")
    a, b = pair
    if a < 1 or b < 1 or a == b:
        raise ValueError(f"link levels must be distinct and >= 1, got {link!r}")
    return a, b


@dataclass(frozen=True)
class PulseSet:
    links: Dict[Link, Tuple[PulseShape, ...]] = field(default_factory=dict)
    window: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        clean: Dict[Link, Tuple[PulseShape, ...]] = {}
        for link, shapes in dict(self.links).items():
            if isinstance(shapes, PulseShape):
                shapes = (shapes,)
            shapes = tuple(shapes)
            for s in shapes:
                if not isinstance(s, PulseShape):
                    raise TypeError(f"link {link} holds {type(s).__name__}, expected PulseShape")
            key = normalize_link(link)
            clean[key] = clean.get(key, ()) + shapes
        object.__setattr__(self, "links", clean)
        if self.window is not None:
            lo, hi = (float(v) for v in self.window)
            if not lo < hi:
                raise ValueError(f"window must satisfy start < end, got {self.window}")
            object.__setattr__(self, "window", (lo, hi))

    # ----------------- access -----------------

    def has_link(self, link: Link) -> bool:
        return normalize_link(link) in self.links

    def link_labels(self) -> List[Link]:
        return list(self.links.keys())

    def max_level(self) -> int:
        return max((max(l) for l in self.links), default=0)

    def shapes(self, link: Link) -> Tuple[PulseShape, ...]:
        key = normalize_link(link)
        if key not in self.links:
            raise KeyError(f"link {key} not in pulse set (have {self.link_labels()})")
        return self.links[key]

    def coupling(self, link: Link, t: TimeLike):
        """Summed complex Rabi frequency of a link."""
        shapes = self.shapes(link)
        total = eval_shape(shapes[0], t)
        for s in shapes[1:]:
            total = total + eval_shape(s, t)
        return total

    def derivative(self, link: Link, t: TimeLike):
        shapes = self.shapes(link)
        total = eval_shape_derivative(shapes[0], t)
        for s in shapes[1:]:
            total = total + eval_shape_derivative(s, t)
        return total

    def span(self) -> Tuple[float, float]:
        """Truncation window: the explicit window or the union of pulse supports."""
        if self.window is not None:
            return self.window
        supports = [s.support() for shapes in self.links.values() for s in shapes]
        if not supports:
            raise ValueError("empty pulse set has no span")
        lo = min(s[0] for s in supports)
        hi = max(s[1] for s in supports)
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise ValueError("pulse set with unbounded shapes needs an explicit window")
        return lo, hi

    def time_scale(self) -> float:
        """Shortest width among shaped (non-flat) pulses."""
        widths = [s.width for shapes in self.links.values() for s in shapes if s.kind != "flat"]
        if not widths:
            lo, hi = self.span()
            return hi - lo
        return min(widths)

    def breakpoints(self) -> List[float]:
        """Centers and support edges, for quadrature hints."""
        pts = set()
        for shapes in self.links.values():
            for s in shapes:
                pts.add(s.center)
                lo, hi = s.support()
                if np.isfinite(lo):
                    pts.add(lo)
                if np.isfinite(hi):
                    pts.add(hi)
        return sorted(pts)

    # ----------------- derived sets -----------------

    def with_pulse(self, link: Link, shape: PulseShape) -> "PulseSet":
        links = dict(self.links)
        key = normalize_link(link)
        links[key] = links.get(key, ()) + (shape,)
        return PulseSet(links, self.window)

    def with_window(self, window: Optional[Tuple[float, float]]) -> "PulseSet":
        return PulseSet(dict(self.links), window)

    def shifted_phase(self, phase: float) -> "PulseSet":
        """Same pulses with a common phase added to every shape."""
        links = {
            link: tuple(replace(s, phase=s.phase + phase) for s in shapes)
            for link, shapes in self.links.items()
        }
        return PulseSet(links, self.window)


@dataclass(frozen=True)
class CompositeSequence:
    """Train of SP pairs; phases[k] = (phi_P, phi_S) of pair k."""

    n_pairs: int
    phases: Tuple[Tuple[float, float], ...]
    pair_spacing: Optional[float] = None
    pair_kind: str = "resonant_alternating"
    pair_delay: Optional[float] = None

    def __post_init__(self):
        if int(self.n_pairs) < 1:
            raise ValueError(f"n_pairs must be >= 1, got {self.n_pairs}")
        phases = tuple((float(p), float(s)) for p, s in self.phases)
        if len(phases) != int(self.n_pairs):
            raise ValueError(f"phases length {len(phases)} != n_pairs {self.n_pairs}")
        if self.pair_kind not in PAIR_KINDS:
            raise ValueError(f"unknown pair_kind {self.pair_kind!r}; expected one of {PAIR_KINDS}")
        object.__setattr__(self, "n_pairs", int(self.n_pairs))
        object.__setattr__(self, "phases", phases)


# ----------------- areas and angles -----------------

def rms_area(ps: PulseSet, link_p: Link = LINK_P, link_s: Link = LINK_S,
             window: Optional[Tuple[float, float]] = None) -> float:
    """Integral of sqrt(|Omega_P|^2 + |Omega_S|^2) over the pulse window."""
    ps.shapes(link_p)
    ps.shapes(link_s)
    lo, hi = window if window is not None else ps.span()

    def integrand(t: float) -> float:
        return float(np.hypot(abs(ps.coupling(link_p, t)), abs(ps.coupling(link_s, t))))

    points = [p for p in ps.breakpoints() if lo < p < hi]
    try:
        value, err = quad(integrand, lo, hi, points=points or None, limit=500,
                          epsabs=0.0, epsrel=1e-10)
    except Exception as e:
        raise RuntimeError(f"rms area quadrature failed: {e}") from e
    if value > 0 and err > 1e-8 * value:
        logger.warning("rms area quadrature error %.2e exceeds 1e-8 relative", err / value)
    return float(value)


@dataclass(frozen=True)
class MixingAngles:
    theta: np.ndarray = field(compare=False)
    phi: np.ndarray = field(compare=False)
    defined: np.ndarray = field(compare=False)

    @property
    def all_defined(self) -> bool:
        return bool(np.all(self.defined))


def _fill_undefined(theta: np.ndarray, defined: np.ndarray) -> np.ndarray:
    if np.all(defined):
        return theta
    out = theta.copy()
    if not np.any(defined):
        out[:] = 0.0
        return out
    idx = np.where(defined, np.arange(out.size), 0)
    np.maximum.accumulate(idx, out=idx)
    first = int(np.argmax(defined))
    out = out[idx]
    out[:first] = theta[first]
    return out


def mixing_angles(ps: PulseSet, detuning: Union[float, Callable[[TimeLike], TimeLike]], t: TimeLike,
                  link_p: Link = LINK_P, link_s: Link = LINK_S) -> MixingAngles:
    """
    theta = atan2(|Omega_P|, |Omega_S|), phi = atan2(Omega_rms, Delta) / 2.

    Where both couplings vanish theta carries the last defined value and
    `defined` is False.
    """
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    p = np.abs(ps.coupling(link_p, tt))
    s = np.abs(ps.coupling(link_s, tt))
    delta = detuning(tt) if callable(detuning) else np.full_like(tt, float(detuning))
    defined = (p > 0.0) | (s > 0.0)
    theta = _fill_undefined(np.arctan2(p, s), defined)
    phi = 0.5 * np.arctan2(np.hypot(p, s), delta)
    return MixingAngles(theta, phi, defined)


def mixing_angle_rate(ps: PulseSet, t: TimeLike, link_p: Link = LINK_P,
                      link_s: Link = LINK_S) -> np.ndarray:
    """
    d(theta)/dt = (|S| d|P|/dt - |P| d|S|/dt) / (|P|^2 + |S|^2).

    Zero where both couplings vanish.
    """
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    p = ps.coupling(link_p, tt)
    s = ps.coupling(link_s, tt)
    dp = ps.derivative(link_p, tt)
    ds = ps.derivative(link_s, tt)
    ap, as_ = np.abs(p), np.abs(s)
    # d|z|/dt = Re(conj(z) dz) / |z|
    dap = np.divide(np.real(np.conj(p) * dp), ap, out=np.zeros_like(ap), where=ap > 0)
    das = np.divide(np.real(np.conj(s) * ds), as_, out=np.zeros_like(as_), where=as_ > 0)
    denom = ap ** 2 + as_ ** 2
    num = as_ * dap - ap * das
    return np.divide(num, denom, out=np.zeros_like(denom), where=denom > 0)
