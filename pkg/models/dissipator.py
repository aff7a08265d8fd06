# models/dissipator.py
"""Pure-dephasing dissipator D(rho)_mn = gamma_mn * rho_mn (m != n)."""

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

DephasingEntry = Tuple[int, int, float]


@dataclass(frozen=True)
class Dissipator:
    gamma: np.ndarray = field(compare=False)

    @property
    def dim(self) -> int:
        return int(self.gamma.shape[0])

    @property
    def is_zero(self) -> bool:
        return not bool(np.any(self.gamma > 0))

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho)
        if rho.shape != self.gamma.shape:
            raise ValueError(f"rho shape {rho.shape} does not match dissipator {self.gamma.shape}")
        return self.gamma * rho

    def superoperator(self) -> np.ndarray:
        """Diagonal matrix acting on row-major vec(rho)."""
        return np.diag(self.gamma.reshape(-1)).astype(complex)


def dephasing_matrix(dim: int, entries: Optional[Iterable[DephasingEntry]] = None) -> np.ndarray:
    """Symmetric gamma matrix from (m, n, rate) triples, 1-based levels."""
    gamma = np.zeros((dim, dim))
    for m, n, rate in entries or ():
        m, n = int(m), int(n)
        if not (1 <= m <= dim and 1 <= n <= dim) or m == n:
            raise ValueError(f"dephasing pair ({m}, {n}) must be two distinct levels in 1..{dim}")
        gamma[m - 1, n - 1] = gamma[n - 1, m - 1] = float(rate)
    return gamma


def build_dissipator(gamma: Union[np.ndarray, Sequence[Sequence[float]]]) -> Dissipator:
    g = np.array(gamma, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError(f"dephasing matrix must be square, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise ValueError("dephasing rates must be finite")
    if np.any(g < 0):
        raise ValueError(f"dephasing rates must be >= 0, got min {g.min()}")
    if np.any(np.diag(g) != 0):
        raise ValueError("dephasing matrix must have a zero diagonal")
    if not np.array_equal(g, g.T):
        raise ValueError("dephasing matrix must be symmetric")
    g.setflags(write=False)
    return Dissipator(g)
