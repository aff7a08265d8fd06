# spectral/eigen.py
"""Eigensystem of an instantaneous Hamiltonian, Hermitian or lossy, with a fixed vector gauge."""

import logging
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy import linalg

from core import EIGEN_TOL
from models import HamiltonianAt

logger = logging.getLogger(__name__)

MAX_DENSE_DIM = 64
DEFECT_CONDITION = 1e8


@dataclass(frozen=True)
class EigenSystem:
    values: np.ndarray = field(compare=False)
    vectors: np.ndarray = field(compare=False)  # columns
    hermitian: bool = True
    defective: bool = False

    def vector(self, k: int) -> np.ndarray:
        return self.vectors[:, k]


def fix_gauge(vectors: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Make the first non-negligible component of every column real positive."""
    out = np.array(vectors, dtype=complex)
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = np.flatnonzero(np.abs(col) > tol)
        if idx.size:
            lead = col[idx[0]]
            out[:, k] = col * (abs(lead) / lead)
    return out


def eigensystem(h: Union[HamiltonianAt, np.ndarray], tol: float = EIGEN_TOL) -> EigenSystem:
    """
    Hermitian input: real ascending eigenvalues, orthonormal vectors.
    Otherwise: complex eigenvalues sorted by real part, unit-norm right vectors;
    a badly conditioned eigenbasis is flagged as defective.
    """
    m = h.matrix if isinstance(h, HamiltonianAt) else np.asarray(h, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"eigensystem needs a square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DENSE_DIM:
        raise ValueError(f"dense eigensolver limited to dim <= {MAX_DENSE_DIM}, got {m.shape[0]}")
    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m - m.conj().T)) <= tol * scale:
        herm = 0.5 * (m + m.conj().T)
        values, vectors = linalg.eigh(herm)
        return EigenSystem(values, fix_gauge(vectors), hermitian=True, defective=False)
    values, vectors = linalg.eig(m)
    order = np.lexsort((values.imag, values.real))
    values, vectors = values[order], vectors[:, order]
    vectors = vectors / np.linalg.norm(vectors, axis=0, keepdims=True)
    cond = np.linalg.cond(vectors)
    defective = not np.isfinite(cond) or cond > DEFECT_CONDITION
    if defective:
        logger.warning("eigenbasis condition number %.3e: matrix is (nearly) defective", cond)
    return EigenSystem(values, fix_gauge(vectors), hermitian=False, defective=defective)
