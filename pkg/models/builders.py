# models/builders.py
"""
Builders for every supported linkage.

Lambda:  H = [[0, P/2, 0], [P/2, Delta - i*Gamma/2 + S_2, S/2], [0, S/2, delta + S_3]]
Chain:   tridiagonal, couplings Omega_{j,j+1}/2, diagonal Delta_j
Tripod:  P, S, C all couple to level 2 (links (1,2), (3,2), (4,2))
"""

import logging
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Rational
from sympy.physics.wigner import clebsch_gordan

from pulses import LINK_P, LINK_S, Link, PulseSet, PulseShape, normalize_link

from .dissipator import build_dissipator, dephasing_matrix
from .physics import two_photon_detuning
from .spec import ModelSpec, StarkTerm, UnsupportedConfigurationError

logger = logging.getLogger(__name__)

LINK_C: Link = (4, 2)
TRIPOD_LINKS = (LINK_P, (3, 2), LINK_C)

CouplingSpec = Union[PulseShape, Sequence[PulseShape]]


def _gamma(dim: int, dephasing) -> np.ndarray:
    """Dephasing as a full matrix (ndarray) or as (m, n, rate) triples."""
    if dephasing is None:
        return np.zeros((dim, dim))
    if isinstance(dephasing, np.ndarray):
        return np.array(build_dissipator(dephasing).gamma)
    return np.array(build_dissipator(dephasing_matrix(dim, dephasing)).gamma)


def _require_links(ps: PulseSet, links: Sequence[Link], what: str) -> None:
    missing = [l for l in links if not ps.has_link(l)]
    if missing:
        raise ValueError(f"{what} needs links {list(links)}; missing {missing}")


# ----------------- three-level -----------------

def build_lambda(pulses: PulseSet, detuning: float = 0.0, two_photon: float = 0.0, decay: float = 0.0,
                 stark: Sequence[StarkTerm] = (), dephasing=None,
                 topology: str = "lambda") -> ModelSpec:
    """Pump on (1,2), Stokes on (2,3); loss `decay` leaves level 2."""
    _require_links(pulses, (LINK_P, LINK_S), "lambda system")
    if decay < 0:
        raise ValueError(f"decay must be >= 0, got {decay}")
    return ModelSpec(3, topology, pulses,
                     detunings=[0.0, detuning, two_photon],
                     loss_rates=[0.0, decay, 0.0],
                     dephasing=_gamma(3, dephasing),
                     stark=tuple(stark))


def build_lambda_from_lasers(pulses: PulseSet, pump_detuning: float, stokes_detuning: float,
                             decay: float = 0.0, stark: Sequence[StarkTerm] = (),
                             dephasing=None) -> ModelSpec:
    """Delta = Delta_P, delta = Delta_P - Delta_S."""
    delta = two_photon_detuning(pump_detuning, stokes_detuning, "lambda")
    return build_lambda(pulses, pump_detuning, delta, decay, stark, dephasing)


def build_ladder(pulses: PulseSet, pump_detuning: float, stokes_detuning: float, decay: float = 0.0,
                 stark: Sequence[StarkTerm] = (), dephasing=None) -> ModelSpec:
    """Same matrix as the lambda system with delta = Delta_P + Delta_S."""
    delta = two_photon_detuning(pump_detuning, stokes_detuning, "ladder")
    return build_lambda(pulses, pump_detuning, delta, decay, stark, dephasing, topology="ladder")


# ----------------- chains -----------------

def _chain_pulse_set(couplings: Union[PulseSet, Sequence[CouplingSpec]], dim: int) -> PulseSet:
    if isinstance(couplings, PulseSet):
        expected = [(j, j + 1) for j in range(1, dim)]
        extra = [l for l in couplings.link_labels() if l not in expected]
        if extra:
            raise ValueError(f"chain pulse set has non-nearest-neighbour links {extra}")
        if len(couplings.link_labels()) != dim - 1:
            raise ValueError(f"chain of {dim} levels needs {dim - 1} couplings, "
                             f"got {len(couplings.link_labels())}")
        return couplings
    couplings = list(couplings)
    if len(couplings) != dim - 1:
        raise ValueError(f"chain of {dim} levels needs {dim - 1} couplings, got {len(couplings)}")
    links: Dict[Link, Tuple[PulseShape, ...]] = {}
    for j, c in enumerate(couplings, start=1):
        links[(j, j + 1)] = (c,) if isinstance(c, PulseShape) else tuple(c)
    return PulseSet(links)


def build_chain(couplings: Union[PulseSet, Sequence[CouplingSpec]], detunings: Sequence[float],
                loss_rates: Optional[Sequence[float]] = None, resonant_ends: bool = True,
                stark: Sequence[StarkTerm] = (), dephasing=None,
                window: Optional[Tuple[float, float]] = None) -> ModelSpec:
    """Tridiagonal chain; `detunings` has one entry per level."""
    det = [float(d) for d in detunings]
    dim = len(det)
    if dim < 3:
        raise ValueError(f"chain needs >= 3 levels, got {dim}")
    if resonant_ends and (det[0] != 0.0 or det[-1] != 0.0):
        raise ValueError(f"end detunings must be zero for an (N-1)-photon resonance, got {det[0]}, {det[-1]}")
    ps = _chain_pulse_set(couplings, dim)
    if window is not None:
        ps = ps.with_window(window)
    return ModelSpec(dim, "chain", ps, detunings=det, loss_rates=loss_rates,
                     dephasing=_gamma(dim, dephasing), stark=tuple(stark))


def m_chain_cg(j_g: float, j_e: float) -> List[float]:
    """
    |Clebsch-Gordan| factors along g(-J) -> e(-J+1) -> g(-J+2) -> ... -> g(J).

    Odd links are sigma+ (q = +1), even links sigma- (q = -1).
    """
    jg, je = Rational(j_g), Rational(j_e)
    if not (jg.is_integer and jg >= 1 and (je == jg or je == jg - 1)):
        raise UnsupportedConfigurationError(
            f"no built-in coefficients for J_g={j_g}, J_e={j_e}; supply cg_table"
        )
    n = int(2 * jg + 1)
    factors = []
    for k in range(1, n):
        m = -jg + (k - 1)
        if k % 2 == 1:
            value = clebsch_gordan(jg, 1, je, m, 1, m + 1)
        else:
            # state k is the excited sublevel m; ground partner m + 1 via sigma-
            value = clebsch_gordan(jg, 1, je, m + 1, -1, m)
        factors.append(float(abs(value)))
    if any(f == 0.0 for f in factors):
        raise UnsupportedConfigurationError(f"vanishing coupling in the J_g={j_g}, J_e={j_e} chain")
    return factors


def build_m_chain(j_g: float, j_e: float, f_plus: PulseShape, f_minus: PulseShape,
                  cg_table: Optional[Sequence[float]] = None,
                  detunings: Optional[Sequence[float]] = None,
                  window: Optional[Tuple[float, float]] = None) -> ModelSpec:
    """Letter-M chain of magnetic sublevels driven by sigma+ (f_plus) and sigma- (f_minus)."""
    if cg_table is None:
        factors = m_chain_cg(j_g, j_e)
    else:
        factors = [abs(float(c)) for c in cg_table]
        if len(factors) < 2:
            raise ValueError(f"cg_table needs >= 2 entries, got {len(factors)}")
    dim = len(factors) + 1
    couplings = []
    for k, cg in enumerate(factors, start=1):
        base = f_plus if k % 2 == 1 else f_minus
        couplings.append(replace(base, peak=base.peak * cg))
    det = [0.0] * dim if detunings is None else list(detunings)
    model = build_chain(couplings, det, window=window)
    note = f"J_g={Rational(j_g)}, J_e={Rational(j_e)}, |CG|=" + ",".join(f"{c:.6f}" for c in factors)
    return ModelSpec(dim, "m_chain", model.pulse_set, model.detunings, model.loss_rates,
                     model.dephasing, notes=(note,))


# ----------------- tripod -----------------

def build_tripod(pulses: PulseSet, resonant: bool = True, dephasing=None) -> ModelSpec:
    """Resonant tripod: pump (1,2), Stokes (3,2), control (4,2)."""
    if not resonant:
        raise UnsupportedConfigurationError("only the exactly resonant tripod is modeled")
    _require_links(pulses, TRIPOD_LINKS, "tripod")
    extra = [l for l in pulses.link_labels() if l not in TRIPOD_LINKS]
    if extra:
        raise ValueError(f"tripod pulse set has unexpected links {extra}")
    return ModelSpec(4, "tripod", pulses, detunings=None, loss_rates=None,
                     dephasing=_gamma(4, dephasing))


# ----------------- arbitrary -----------------

def build_custom(dim: int, pulses: PulseSet, detunings: Optional[Sequence[float]] = None,
                 loss_rates: Optional[Sequence[float]] = None, stark: Sequence[StarkTerm] = (),
                 dephasing=None) -> ModelSpec:
    return ModelSpec(int(dim), "custom", pulses, detunings=detunings, loss_rates=loss_rates,
                     dephasing=_gamma(int(dim), dephasing), stark=tuple(stark))


def stark_terms(entries: Sequence[Sequence]) -> Tuple[StarkTerm, ...]:
    """(level, [a, b], coeff) rows from config into StarkTerm tuples."""
    out = []
    for row in entries or ():
        if len(row) != 3:
            raise ValueError(f"Stark entry must be [level, [a, b], coeff], got {row!r}")
        level, link, coeff = row
        out.append((int(level), normalize_link(link), float(coeff)))
    return tuple(out)
