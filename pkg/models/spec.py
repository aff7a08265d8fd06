# models/spec.py
"""
ModelSpec holds everything needed to evaluate H(t) for one linkage:

    H_nn = detuning_n - i*Gamma_n/2 + sum(coeff * |Omega_link|^2)   (Stark)
    H[b, a] += Omega_ab / 2,  H[a, b] += conj(Omega_ab) / 2          per link (a, b)

with hbar = 1 and 1-based levels in link labels.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from pulses import Link, PulseSet, normalize_link

from .dissipator import build_dissipator

TOPOLOGIES = ("lambda", "ladder", "chain", "tripod", "m_chain", "two_state", "custom")

StarkTerm = Tuple[int, Link, float]


class UnsupportedConfigurationError(ValueError):
    """Requested linkage or parameter regime is outside what the builders model."""


@dataclass(frozen=True)
class HamiltonianAt:
    matrix: np.ndarray = field(compare=False)
    time: float = 0.0

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        m = self.matrix
        return bool(np.max(np.abs(m - m.conj().T)) <= tol * max(1.0, np.max(np.abs(m))))

    def anti_hermitian_part(self) -> np.ndarray:
        m = self.matrix
        return 0.5 * (m - m.conj().T)


@dataclass(frozen=True)
class ModelSpec:
    dim: int
    topology: str
    pulse_set: PulseSet
    detunings: np.ndarray = field(compare=False)
    loss_rates: np.ndarray = field(compare=False)
    dephasing: np.ndarray = field(compare=False)
    stark: Tuple[StarkTerm, ...] = ()
    notes: Tuple[str, ...] = ()

    def __post_init__(self):
        if int(self.dim) < 2:
            raise ValueError(f"dim must be >= 2, got {self.dim}")
        if self.topology not in TOPOLOGIES:
            raise ValueError(f"unknown topology {self.topology!r}; expected one of {TOPOLOGIES}")
        dim = int(self.dim)
        object.__setattr__(self, "dim", dim)
        det = _vector(self.detunings, dim, "detunings")
        loss = _vector(self.loss_rates, dim, "loss_rates")
        if np.any(loss < 0):
            raise ValueError(f"loss_rates must be >= 0, got {loss.tolist()}")
        gamma = np.array(self.dephasing, dtype=float)
        if gamma.shape != (dim, dim):
            raise ValueError(f"dephasing must be {dim}x{dim}, got shape {gamma.shape}")
        gamma = build_dissipator(gamma).gamma
        for arr in (det, loss):
            arr.setflags(write=False)
        object.__setattr__(self, "detunings", det)
        object.__setattr__(self, "loss_rates", loss)
        object.__setattr__(self, "dephasing", gamma)
        if self.pulse_set.max_level() > dim:
            raise ValueError(f"pulse set references level {self.pulse_set.max_level()} > dim {dim}")
        terms = []
        for level, link, coeff in self.stark:
            key = normalize_link(link)
            if not 1 <= int(level) <= dim:
                raise ValueError(f"Stark level {level} outside 1..{dim}")
            if not self.pulse_set.has_link(key):
                raise ValueError(f"Stark term refers to undriven link {key}")
            terms.append((int(level), key, float(coeff)))
        object.__setattr__(self, "stark", tuple(terms))
        object.__setattr__(self, "_links", tuple(self.pulse_set.link_labels()))

    # ----------------- queries -----------------

    @property
    def has_loss(self) -> bool:
        return bool(np.any(self.loss_rates > 0))

    @property
    def has_dephasing(self) -> bool:
        return bool(np.any(self.dephasing > 0))

    def loss_matrix(self) -> np.ndarray:
        """Anti-Hermitian part -i/2 diag(Gamma)."""
        return -0.5j * np.diag(self.loss_rates)

    def matrix(self, t: float) -> np.ndarray:
        h = np.diag(self.detunings.astype(complex)) + self.loss_matrix()
        for a, b in self._links:
            omega = complex(self.pulse_set.coupling((a, b), t))
            h[b - 1, a - 1] += omega / 2.0
            h[a - 1, b - 1] += np.conj(omega) / 2.0
        for level, link, coeff in self.stark:
            h[level - 1, level - 1] += coeff * abs(complex(self.pulse_set.coupling(link, t))) ** 2
        return h

    def rms_coupling(self, t: float) -> float:
        """sqrt of the summed squared coupling magnitudes at t."""
        total = 0.0
        for link in self._links:
            total += abs(complex(self.pulse_set.coupling(link, t))) ** 2
        return float(np.sqrt(total))

    def with_pulse_set(self, ps: PulseSet) -> "ModelSpec":
        return ModelSpec(self.dim, self.topology, ps, self.detunings, self.loss_rates,
                         self.dephasing, self.stark, self.notes)


def hamiltonian_at(model: ModelSpec, t: float) -> HamiltonianAt:
    return HamiltonianAt(model.matrix(float(t)), float(t))


def _vector(values: Optional[Sequence[float]], dim: int, name: str) -> np.ndarray:
    if values is None:
        return np.zeros(dim)
    arr = np.array(values, dtype=float).reshape(-1)
    if arr.size != dim:
        raise ValueError(f"{name} needs {dim} entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr
