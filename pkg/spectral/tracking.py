# spectral/tracking.py
"""
Adiabatic-state tracking along a time grid: eigenvector ordering by overlap,
phase continuity, mixing angles, narrow avoided-crossing flags and the adiabatic margins.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from core import TimeGrid
from models import ModelSpec
from pulses import LINK_P, LINK_S, Link, mixing_angles, rms_area

from .adiabaticity import MIXING_FLOOR, local_adiabaticity
from .eigen import eigensystem

logger = logging.getLogger(__name__)

CROSSING_THRESHOLD = 0.02
AMBIGUITY_TOL = 1e-3


@dataclass(frozen=True)
class CrossingFlag:
    time: float
    gap: float
    labels: Tuple[int, int]


@dataclass(frozen=True)
class AdiabaticReport:
    grid: TimeGrid
    energies: np.ndarray = field(compare=False)   # (n_t, dim), column = label
    states: np.ndarray = field(compare=False)     # (n_t, dim, dim), [:, :, label]
    theta: np.ndarray = field(compare=False)
    phi: np.ndarray = field(compare=False)
    local_margin: float = np.inf
    global_area: float = np.nan
    crossing_flags: Tuple[CrossingFlag, ...] = ()
    ambiguous_times: Tuple[float, ...] = ()

    def energy(self, label: int) -> np.ndarray:
        return self.energies[:, label]

    def state(self, k: int, label: int) -> np.ndarray:
        return self.states[k, :, label]


def _angle_links(model: ModelSpec) -> Optional[Tuple[Link, Link]]:
    ps = model.pulse_set
    if model.topology in ("lambda", "ladder", "custom") and ps.has_link(LINK_P) and ps.has_link(LINK_S):
        return LINK_P, LINK_S
    if model.topology in ("chain", "m_chain"):
        return (1, 2), (model.dim - 1, model.dim)
    return None


def _assign(prev: np.ndarray, new: np.ndarray) -> Tuple[np.ndarray, bool]:
    """Column permutation of `new` that best continues `prev`, plus an ambiguity flag."""
    overlap = np.abs(prev.conj().T @ new)
    rows, cols = linear_sum_assignment(-overlap)
    perm = np.empty_like(cols)
    perm[rows] = cols
    ambiguous = False
    if overlap.shape[1] > 1:
        top2 = -np.sort(-overlap, axis=1)[:, :2]
        ambiguous = bool(np.any(top2[:, 0] - top2[:, 1] < AMBIGUITY_TOL))
    return perm, ambiguous


def _align_phases(prev: np.ndarray, new: np.ndarray) -> np.ndarray:
    dots = np.sum(prev.conj() * new, axis=0)
    phases = np.where(np.abs(dots) > 0, np.abs(dots) / np.where(dots == 0, 1, dots), 1.0)
    return new * phases[np.newaxis, :]


def _crossings(times: np.ndarray, energies: np.ndarray, limit: float) -> List[CrossingFlag]:
    flags = []
    n_labels = energies.shape[1]
    for i in range(n_labels):
        for j in range(i + 1, n_labels):
            gap = np.abs(energies[:, i] - energies[:, j])
            inner = np.flatnonzero((gap[1:-1] < gap[:-2]) & (gap[1:-1] <= gap[2:])) + 1
            for k in inner:
                if gap[k] < limit:
                    flags.append(CrossingFlag(float(times[k]), float(gap[k]), (i, j)))
    flags.sort(key=lambda f: (f.time, f.labels))
    return flags


def track_adiabatic(model: ModelSpec, grid: TimeGrid, crossing_threshold: float = CROSSING_THRESHOLD,
                    mixing_floor: float = MIXING_FLOOR) -> AdiabaticReport:
    """
    Diagonalize H on every grid sample and follow each eigenvector by maximal
    overlap with the previous sample. Labels are the sorted order at the first
    sample; phases are aligned to the previous sample.
    """
    times = np.asarray(grid.samples)
    dim = model.dim
    energies = np.empty((times.size, dim))
    states = np.empty((times.size, dim, dim), dtype=complex)
    ambiguous: List[float] = []
    prev = None
    for k, t in enumerate(times):
        es = eigensystem(model.matrix(float(t)))
        vals, vecs = np.real(es.values), es.vectors
        if prev is not None:
            perm, amb = _assign(prev, vecs)
            vals, vecs = vals[perm], _align_phases(prev, vecs[:, perm])
            if amb:
                ambiguous.append(float(t))
        energies[k] = vals
        states[k] = vecs
        prev = vecs
    if ambiguous:
        logger.warning("ambiguous eigenvector overlaps at %d samples (first t=%.4g); "
                       "labels resolved by assignment order", len(ambiguous), ambiguous[0])

    links = _angle_links(model)
    if links is not None:
        ang = mixing_angles(model.pulse_set, float(model.detunings[1]), times, *links)
        theta, phi = ang.theta, ang.phi
        margin = local_adiabaticity(model, times, mixing_floor, *links).minimum
        area = rms_area(model.pulse_set, *links)
    else:
        theta = np.full(times.shape, np.nan)
        phi = np.full(times.shape, np.nan)
        margin, area = np.nan, np.nan

    rms = np.array([model.rms_coupling(float(t)) for t in times])
    limit = crossing_threshold * float(np.max(rms)) if rms.size else 0.0
    flags = _crossings(times, energies, limit)
    return AdiabaticReport(grid, energies, states, theta, phi, float(margin), float(area),
                           tuple(flags), tuple(ambiguous))
