# core/states.py
"""
Value types shared by every module: state vectors, density matrices, Bloch
vectors and time grids, plus the elementary observables on them.

Units: times in the reference pulse width T, frequencies in 1/T, hbar = 1.
Level numbers in docstrings are 1-based; array indices are 0-based.
"""

import logging
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

logger = logging.getLogger(__name__)

NORM_TOL = 1e-9
EIGEN_TOL = 1e-10
BLOCH_TOL = 1e-6

ArrayLike = Union[Sequence[complex], np.ndarray]


class PhaseConventionError(ValueError):
    """Amplitudes cannot be mapped to a real Bloch vector in the fixed gauge."""


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


# ----------------- value types -----------------

@dataclass(frozen=True)
class StateVector:
    """Probability amplitudes C_n of a pure state."""

    amplitudes: np.ndarray = field(compare=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size < 2:
            raise ValueError(f"StateVector needs dim >= 2, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("StateVector amplitudes must be finite")
        object.__setattr__(self, "amplitudes", _readonly(amps))

    @property
    def dim(self) -> int:
        return int(self.amplitudes.size)

    def norm(self) -> float:
        """Sum of |C_n|^2."""
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    @classmethod
    def basis(cls, dim: int, level: int) -> "StateVector":
        """Basis state psi_level (1-based)."""
        if not 1 <= level <= dim:
            raise ValueError(f"level {level} outside 1..{dim}")
        amps = np.zeros(dim, dtype=complex)
        amps[level - 1] = 1.0
        return cls(amps)


@dataclass(frozen=True)
class DensityMatrix:
    """Density matrix rho_mn; stored Hermitian."""

    entries: np.ndarray = field(compare=False)

    def __post_init__(self):
        rho = np.array(self.entries, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 2:
            raise ValueError(f"DensityMatrix must be square with dim >= 2, got shape {rho.shape}")
        defect = np.max(np.abs(rho - rho.conj().T))
        if defect > 1e-8 * max(1.0, np.max(np.abs(rho))):
            raise ValueError(f"DensityMatrix is not Hermitian (defect {defect:.3e})")
        # upper triangle is authoritative
        rho = np.triu(rho) + np.triu(rho, 1).conj().T
        rho[np.diag_indices_from(rho)] = rho.diagonal().real
        object.__setattr__(self, "entries", _readonly(rho))

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def populations(self) -> np.ndarray:
        return _readonly(self.entries.diagonal().real.copy())

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries)[0])

    @classmethod
    def from_state(cls, state: StateVector) -> "DensityMatrix":
        a = state.amplitudes
        return cls(np.outer(a, a.conj()))


@dataclass(frozen=True)
class BlochVector:
    """Real 3-vector (u, v, w); also used for Stokes vectors."""

    u: float
    v: float
    w: float
    residual: float = 0.0

    def __post_init__(self):
        for name in ("u", "v", "w"):
            val = getattr(self, name)
            if not np.isfinite(val):
                raise ValueError(f"BlochVector.{name} must be finite, got {val}")
            object.__setattr__(self, name, float(val))
        if self.length() > 1.0 + BLOCH_TOL:
            raise ValueError(f"|B| = {self.length():.12f} exceeds 1")

    def as_array(self) -> np.ndarray:
        return np.array([self.u, self.v, self.w], dtype=float)

    def length(self) -> float:
        return float(np.sqrt(self.u ** 2 + self.v ** 2 + self.w ** 2))

    @classmethod
    def from_array(cls, vec: ArrayLike) -> "BlochVector":
        arr = np.asarray(vec, dtype=float).reshape(-1)
        if arr.size != 3:
            raise ValueError(f"BlochVector needs 3 components, got {arr.size}")
        return cls(arr[0], arr[1], arr[2])


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing sample times on [t_start, t_end]."""

    t_start: float
    t_end: float
    samples: np.ndarray = field(compare=False)

    def __post_init__(self):
        t = np.array(self.samples, dtype=float).reshape(-1)
        if not self.t_start < self.t_end:
            raise ValueError(f"t_start ({self.t_start}) must be < t_end ({self.t_end})")
        if t.size < 2:
            raise ValueError(f"TimeGrid needs >= 2 samples, got {t.size}")
        if np.any(np.diff(t) <= 0):
            raise ValueError("TimeGrid samples must be strictly increasing")
        if t[0] < self.t_start or t[-1] > self.t_end:
            raise ValueError("TimeGrid samples must lie inside [t_start, t_end]")
        object.__setattr__(self, "t_start", float(self.t_start))
        object.__setattr__(self, "t_end", float(self.t_end))
        object.__setattr__(self, "samples", _readonly(t))

    def __len__(self) -> int:
        return int(self.samples.size)

    @classmethod
    def uniform(cls, t_start: float, t_end: float, n: int) -> "TimeGrid":
        if n < 2:
            raise ValueError(f"uniform grid needs n >= 2, got {n}")
        return cls(t_start, t_end, np.linspace(t_start, t_end, int(n)))

    @classmethod
    def from_samples(cls, samples: ArrayLike) -> "TimeGrid":
        t = np.asarray(samples, dtype=float).reshape(-1)
        if t.size < 2:
            raise ValueError(f"TimeGrid needs >= 2 samples, got {t.size}")
        return cls(float(t[0]), float(t[-1]), t)


# ----------------- observables -----------------

def populations(s: Union[StateVector, DensityMatrix]) -> np.ndarray:
    """|C_n|^2 for a state vector, rho_nn for a density matrix."""
    if isinstance(s, DensityMatrix):
        return s.populations()
    if not isinstance(s, StateVector):
        raise TypeError(f"populations expects StateVector or DensityMatrix, got {type(s).__name__}")
    return _readonly(np.abs(s.amplitudes) ** 2)


def fidelity_to(s: StateVector, target: StateVector) -> float:
    """|<target|s>|^2."""
    if s.dim != target.dim:
        raise ValueError(f"dimension mismatch: {s.dim} vs {target.dim}")
    return float(abs(np.vdot(target.amplitudes, s.amplitudes)) ** 2)


def bloch_from_three_state(s: StateVector, tol: float = BLOCH_TOL) -> BlochVector:
    """
    Map a three-state vector to (u, v, w) = (-C3, -i C2, C1).

    The global phase is fixed modulo pi by making the largest component of the
    mapped triple real; imaginary residues up to `tol` are discarded and kept
    in `BlochVector.residual`.
    """
    if s.dim != 3:
        raise ValueError(f"bloch_from_three_state needs dim 3, got {s.dim}")
    c = s.amplitudes
    triple = np.array([-c[2], -1j * c[1], c[0]], dtype=complex)
    k = int(np.argmax(np.abs(triple)))
    if abs(triple[k]) > 0.0:
        chi = np.angle(triple[k])
        # modulo pi: keep the sign of real negative components
        if chi > np.pi / 2:
            chi -= np.pi
        elif chi <= -np.pi / 2:
            chi += np.pi
        triple = triple * np.exp(-1j * chi)
    residual = float(np.max(np.abs(triple.imag)))
    if residual > tol:
        raise PhaseConventionError(
            f"imaginary residue {residual:.3e} exceeds tolerance {tol:.1e}; "
            "C2 must be imaginary relative to C1 and C3"
        )
    if residual > 0.0:
        logger.debug("discarded imaginary residue %.3e in Bloch mapping", residual)
    return BlochVector(triple[0].real, triple[1].real, triple[2].real, residual=residual)
