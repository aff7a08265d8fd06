# spectral/adiabaticity.py
"""
Adiabaticity diagnostics.

    local:   r(t) = Omega_rms(t) / |theta_dot(t)|, minimum over the overlap region
    global:  area >= A_min * sqrt(1 + ratio^2), A_min = 3 pi
    tripod:  beta = integral of phi_dot * sin(vartheta) dt
    dephasing exposure: eta = 3/4 integral of sin^2(2 theta) dt
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.integrate import simpson

from core import TimeGrid
from models import ModelSpec
from pulses import LINK_P, LINK_S, Link, PulseSet, mixing_angle_rate, mixing_angles

logger = logging.getLogger(__name__)

A_MIN = 3.0 * np.pi
MIXING_FLOOR = 0.1
QUAD_SAMPLES = 4001

GridLike = Union[TimeGrid, np.ndarray, None]


def _samples(ps: PulseSet, grid: GridLike) -> np.ndarray:
    if grid is None:
        lo, hi = ps.span()
        return np.linspace(lo, hi, QUAD_SAMPLES)
    if isinstance(grid, TimeGrid):
        return np.asarray(grid.samples)
    return np.asarray(grid, dtype=float)


def _pulse_set(source: Union[ModelSpec, PulseSet]) -> PulseSet:
    return source.pulse_set if isinstance(source, ModelSpec) else source


def theta_dot(source: Union[ModelSpec, PulseSet], t, link_p: Link = LINK_P,
              link_s: Link = LINK_S) -> np.ndarray:
    return mixing_angle_rate(_pulse_set(source), t, link_p, link_s)


@dataclass(frozen=True)
class LocalAdiabaticity:
    times: np.ndarray = field(compare=False)
    margin: np.ndarray = field(compare=False)
    minimum: float = np.inf
    t_min: float = np.nan
    excluded: int = 0


def local_adiabaticity(source: Union[ModelSpec, PulseSet], grid: GridLike = None,
                       mixing_floor: float = MIXING_FLOOR, link_p: Link = LINK_P,
                       link_s: Link = LINK_S) -> LocalAdiabaticity:
    """
    Margin profile r(t) and its minimum over samples with sin(2 theta) >= mixing_floor.

    Samples where both couplings vanish give NaN and are excluded; a warning is
    logged when such samples lie between driven ones.
    """
    if not 0.0 <= mixing_floor <= 1.0:
        raise ValueError(f"mixing_floor must lie in [0, 1], got {mixing_floor}")
    ps = _pulse_set(source)
    t = _samples(ps, grid)
    p = np.abs(ps.coupling(link_p, t))
    s = np.abs(ps.coupling(link_s, t))
    rms = np.hypot(p, s)
    rate = np.abs(mixing_angle_rate(ps, t, link_p, link_s))
    driven = rms > 0
    margin = np.full(t.shape, np.nan)
    with np.errstate(divide="ignore", invalid="ignore"):
        margin[driven] = np.where(rate[driven] > 0, rms[driven] / rate[driven], np.inf)
    excluded = int(np.count_nonzero(~driven))
    if excluded and np.any(driven):
        first, last = np.flatnonzero(driven)[[0, -1]]
        interior = int(np.count_nonzero(~driven[first:last + 1]))
        if interior:
            logger.warning("local adiabaticity undefined at %d interior samples with zero coupling", interior)
    theta = np.arctan2(p, s)
    overlap = driven & (np.sin(2.0 * theta) >= mixing_floor)
    if not np.any(overlap):
        return LocalAdiabaticity(t, margin, np.inf, np.nan, excluded)
    masked = np.where(overlap, margin, np.inf)
    k = int(np.argmin(masked))
    return LocalAdiabaticity(t, margin, float(masked[k]), float(t[k]), excluded)


@dataclass(frozen=True)
class GlobalAdiabaticity:
    area: float
    required: float
    margin: float
    passed: bool


def global_adiabaticity(area: float, excess_bandwidth_ratio: float = 0.0,
                        a_min: float = A_MIN) -> GlobalAdiabaticity:
    if area < 0:
        raise ValueError(f"area must be >= 0, got {area}")
    if excess_bandwidth_ratio < 0:
        raise ValueError(f"excess bandwidth ratio must be >= 0, got {excess_bandwidth_ratio}")
    required = a_min * np.sqrt(1.0 + excess_bandwidth_ratio ** 2)
    margin = area / required
    return GlobalAdiabaticity(float(area), float(required), float(margin), bool(margin >= 1.0))


@dataclass(frozen=True)
class TripodBeta:
    beta: float
    transition_probability: float
    times: np.ndarray = field(compare=False, repr=False)
    phi: np.ndarray = field(compare=False, repr=False)
    vartheta: np.ndarray = field(compare=False, repr=False)


def _real_coupling(ps: PulseSet, link: Link, t: np.ndarray, what: str):
    value = ps.coupling(link, t)
    deriv = ps.derivative(link, t)
    scale = max(1.0, float(np.max(np.abs(value))))
    if np.max(np.abs(np.imag(value))) > 1e-12 * scale:
        raise ValueError(f"{what} coupling must be real (signed) for the tripod angles")
    return np.real(value), np.real(deriv)


def tripod_beta(source: Union[ModelSpec, PulseSet], grid: GridLike = None,
                link_p: Link = LINK_P, link_s: Link = (3, 2), link_c: Link = (4, 2)) -> TripodBeta:
    """beta and the predicted dark-dark transition probability sin^2(beta)."""
    ps = _pulse_set(source)
    t = _samples(ps, grid)
    p, _ = _real_coupling(ps, link_p, t, "pump")
    s, ds = _real_coupling(ps, link_s, t, "Stokes")
    c, dc = _real_coupling(ps, link_c, t, "control")
    sc2 = s ** 2 + c ** 2
    rms = np.sqrt(sc2 + p ** 2)
    floor = 1e-24 * max(1.0, float(np.max(sc2)))
    denom = sc2 * rms
    integrand = np.divide((dc * s - c * ds) * p, denom, out=np.zeros_like(denom),
                          where=(sc2 > floor) & (rms > 0))
    beta = float(simpson(integrand, x=t))
    return TripodBeta(beta, float(np.sin(beta) ** 2), t, np.arctan2(c, s), np.arctan2(p, np.sqrt(sc2)))


def dephasing_eta(source: Union[ModelSpec, PulseSet], grid: GridLike = None,
                  link_p: Link = LINK_P, link_s: Link = LINK_S) -> float:
    """eta = 3/4 * integral sin^2(2 theta) dt; 3/(4 tau) for Gaussian pairs of unit width."""
    ps = _pulse_set(source)
    t = _samples(ps, grid)
    ang = mixing_angles(ps, 0.0, t, link_p, link_s)
    return float(0.75 * simpson(np.sin(2.0 * ang.theta) ** 2, x=t))
