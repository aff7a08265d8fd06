# pulses/builders.py
"""
Factories for the standard pulse arrangements.

Delay convention: tau > 0 means counterintuitive order, Stokes centered at
-tau/2 and pump at +tau/2.
"""

from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from .pulse_set import (
    LINK_P,
    LINK_S,
    CompositeSequence,
    Link,
    PulseSet,
    mixing_angle_rate,
    normalize_link,
)
from .shapes import TAIL_WIDTHS, PulseShape, eval_shape

ShapeSpec = Union[str, Tuple[str, str]]
Envelope = Union[PulseShape, Callable[[np.ndarray], np.ndarray]]

# reference five-pair phase set (phi_P, phi_S)
COMPOSITE_PHASES_5 = (
    (0.0, 4 * np.pi / 5),
    (np.pi, 8 * np.pi / 5),
    (3 * np.pi / 5, 3 * np.pi / 5),
    (8 * np.pi / 5, np.pi),
    (4 * np.pi / 5, 0.0),
)


def _tail(kind: str, width: float) -> float:
    if kind == "sin2":
        return width
    if kind == "flat":
        return width / 2.0
    return TAIL_WIDTHS * width


def _split_shapes(shape: ShapeSpec) -> Tuple[str, str]:
    if isinstance(shape, str):
        return shape, shape
    kinds = tuple(shape)
    if len(kinds) != 2:
        raise ValueError(f"shapes must be a kind or a (pump, stokes) pair, got {shape!r}")
    return kinds[0], kinds[1]


def interaction_time(width: float, delay: float) -> float:
    """Effective duration of the pulse overlap, 2*width + |tau|."""
    if width <= 0:
        raise ValueError(f"width must be > 0, got {width}")
    return 2.0 * width + abs(delay)


def make_stirap_pair(peak_p: float, peak_s: float, width: float, delay: float,
                     shape: ShapeSpec = "gaussian", phase_p: float = 0.0, phase_s: float = 0.0,
                     link_p: Link = LINK_P, link_s: Link = LINK_S) -> PulseSet:
    kind_p, kind_s = _split_shapes(shape)
    for kind in (kind_p, kind_s):
        if kind in ("ddp_f", "ddp_g_windowed", "external_samples"):
            raise ValueError(f"{kind!r} is not a single-pulse envelope; use make_ddp_pair or a custom set")
    pump = PulseShape(kind_p, peak_p, width, center=delay / 2.0, phase=phase_p)
    stokes = PulseShape(kind_s, peak_s, width, center=-delay / 2.0, phase=phase_s)
    half = abs(delay) / 2.0 + max(_tail(kind_p, width), _tail(kind_s, width))
    return PulseSet({normalize_link(link_p): (pump,), normalize_link(link_s): (stokes,)},
                    window=(-half, half))


def make_ddp_pair(peak: float, width: float, windowed: bool = True,
                  link_p: Link = LINK_P, link_s: Link = LINK_S) -> PulseSet:
    """
    Pump g*peak*sin(pi*f/2), Stokes g*peak*cos(pi*f/2), f = 1/(1+exp(-4t/T)).

    Without the window g = 1 and the pulses are truncated at +-4T.
    """
    kind = "ddp_g_windowed" if windowed else "ddp_f"
    pump = PulseShape(kind, peak, width)
    stokes = PulseShape(kind, peak, width, reverse=True)
    half = TAIL_WIDTHS * width
    return PulseSet({normalize_link(link_p): (pump,), normalize_link(link_s): (stokes,)},
                    window=(-half, half))


def make_fractional_pair(peak: float, width: float, delay: float, theta: float, alpha: float = 0.0,
                         shape: str = "gaussian", link_p: Link = LINK_P,
                         link_s: Link = LINK_S) -> PulseSet:
    """
    Omega_P = peak sin(Theta) e^{i alpha} E(t - tau/2)
    Omega_S = peak [E(t + tau/2) + cos(Theta) E(t - tau/2)]

    The late-time ratio Omega_P/Omega_S tends to e^{i alpha} tan(Theta).
    """
    if not 0.0 <= theta <= np.pi / 2 + 1e-12:
        raise ValueError(f"Theta must lie in [0, pi/2], got {theta}")
    if shape not in ("gaussian", "sin2"):
        raise ValueError(f"fractional pairs need a gaussian or sin2 envelope, got {shape!r}")
    sin_t, cos_t = np.sin(theta), np.cos(theta)
    tiny = 1e-14
    link_p, link_s = normalize_link(link_p), normalize_link(link_s)
    stokes = [PulseShape(shape, peak, width, center=-delay / 2.0)]
    if cos_t > tiny:
        stokes.append(PulseShape(shape, peak * cos_t, width, center=delay / 2.0))
    pump = PulseShape(shape, peak * sin_t if sin_t > tiny else 0.0, width,
                      center=delay / 2.0, phase=alpha)
    half = abs(delay) / 2.0 + _tail(shape, width)
    return PulseSet({link_p: (pump,), link_s: tuple(stokes)}, window=(-half, half))


def make_composite(seq: CompositeSequence, peak: float, width: float,
                   allow_overlap: bool = False, link_p: Link = LINK_P,
                   link_s: Link = LINK_S) -> PulseSet:
    """
    Sine-squared SP pairs placed back to back.

    Inside pair k the pulses are `pair_delay` apart (default: width). For
    resonant_alternating the order flips from pair to pair, starting with
    Stokes first; detuned_fixed_order keeps Stokes first throughout.
    """
    delay = width if seq.pair_delay is None else float(seq.pair_delay)
    if delay < 0:
        raise ValueError(f"pair_delay must be >= 0, got {delay}")
    footprint = 2.0 * width + delay
    spacing = footprint if seq.pair_spacing is None else float(seq.pair_spacing)
    if spacing < footprint - 1e-12 and not allow_overlap:
        raise ValueError(
            f"pair_spacing {spacing} < pair footprint {footprint}: adjacent pairs overlap "
            "(pass allow_overlap=True to accept)"
        )
    link_p, link_s = normalize_link(link_p), normalize_link(link_s)
    pumps, stokes = [], []
    n = seq.n_pairs
    for k, (phi_p, phi_s) in enumerate(seq.phases):
        center = (k - (n - 1) / 2.0) * spacing
        stokes_first = seq.pair_kind == "detuned_fixed_order" or k % 2 == 0
        sign = 1.0 if stokes_first else -1.0
        pumps.append(PulseShape("sin2", peak, width, center=center + sign * delay / 2.0, phase=phi_p))
        stokes.append(PulseShape("sin2", peak, width, center=center - sign * delay / 2.0, phase=phi_s))
    edge = delay / 2.0 + width if spacing <= footprint else spacing / 2.0
    half = (n - 1) / 2.0 * spacing + edge
    return PulseSet({link_p: tuple(pumps), link_s: tuple(stokes)}, window=(-half, half))


def _sample_envelope(env: Envelope, t: np.ndarray) -> np.ndarray:
    if isinstance(env, PulseShape):
        return np.abs(eval_shape(env, t))
    return np.abs(np.asarray(env(t), dtype=complex))


def make_pap_train(n_pulses: int, global_envelopes: Tuple[Envelope, Envelope],
                   t_start: float, t_end: float, pulse_area: Optional[float] = None,
                   link_p: Link = LINK_P, link_s: Link = LINK_S) -> PulseSet:
    """
    Piecewise adiabatic train of n coincident sin2 pulse pairs.

    Pulse k sits at t_start + (k - 1/2)(t_end - t_start)/n; its pump and
    Stokes amplitudes sample the global envelopes there. With `pulse_area`
    set, the amplitudes are rescaled so every pair has that rms area.
    """
    if int(n_pulses) < 2:
        raise ValueError(f"n_pulses must be >= 2, got {n_pulses}")
    if not t_start < t_end:
        raise ValueError(f"t_start must be < t_end, got {t_start}, {t_end}")
    n = int(n_pulses)
    slot = (t_end - t_start) / n
    half_width = slot / 2.0
    centers = t_start + (np.arange(1, n + 1) - 0.5) * slot
    env_p, env_s = global_envelopes
    amp_p = _sample_envelope(env_p, centers)
    amp_s = _sample_envelope(env_s, centers)
    if pulse_area is not None:
        rms = np.hypot(amp_p, amp_s)
        # a sin2 pulse of half-width w and peak a has area a*w
        scale = np.divide(pulse_area / half_width, rms, out=np.zeros_like(rms), where=rms > 0)
        amp_p, amp_s = amp_p * scale, amp_s * scale
    link_p, link_s = normalize_link(link_p), normalize_link(link_s)
    pumps = tuple(PulseShape("sin2", float(a), half_width, center=float(c)) for a, c in zip(amp_p, centers))
    stokes = tuple(PulseShape("sin2", float(a), half_width, center=float(c)) for a, c in zip(amp_s, centers))
    return PulseSet({link_p: pumps, link_s: stokes}, window=(float(t_start), float(t_end)))


def make_counterdiabatic(ps: PulseSet, link_p: Link = LINK_P, link_s: Link = LINK_S,
                         samples: int = 4001, link_cd: Link = (1, 3)) -> PulseSet:
    """
    Add the field on `link_cd` that cancels the nonadiabatic coupling of the
    dark state: Omega_13 = 2*theta_dot with phase -pi/2, tabulated.
    """
    if samples < 2:
        raise ValueError(f"samples must be >= 2, got {samples}")
    lo, hi = ps.span()
    t = np.linspace(lo, hi, int(samples))
    rate = mixing_angle_rate(ps, t, link_p, link_s)
    shape = PulseShape.from_table(t, 2.0 * rate, peak=1.0, width=ps.time_scale(), phase=-np.pi / 2)
    return ps.with_pulse(link_cd, shape)


def composite_sequence(n_pairs: int, phases: Optional[Sequence[Sequence[float]]] = None,
                       **kwargs) -> CompositeSequence:
    """CompositeSequence with the reference phases for N = 1 and N = 5."""
    if phases is None:
        if n_pairs == 5:
            phases = COMPOSITE_PHASES_5
        elif n_pairs == 1:
            phases = ((0.0, 0.0),)
        else:
            raise ValueError(f"no reference phases for n_pairs={n_pairs}; pass phases explicitly")
    return CompositeSequence(n_pairs, tuple(tuple(p) for p in phases), **kwargs)
