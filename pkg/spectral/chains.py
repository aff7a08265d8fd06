# spectral/chains.py
"""
Chain criteria: existence of an adiabatic-passage state linking the end
levels, and the dressed spectrum of the inner block.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from scipy import linalg

from models import ModelSpec


@dataclass(frozen=True)
class APStateCertificate:
    exists: bool
    det_left: float       # det of the block over levels 2..N-2
    det_right: float      # det of the block over levels 3..N-1
    product: float
    pulsed_product: float  # Delta_2 * Delta_{N-1}
    notes: Tuple[str, ...] = ()


@dataclass(frozen=True)
class DressedSpectrum:
    energies: np.ndarray = field(compare=False)
    recommended_detuning: float = 0.0


def _check_chain(model: ModelSpec, min_dim: int) -> np.ndarray:
    if model.topology not in ("chain", "m_chain"):
        raise ValueError(f"chain analysis needs a chain model, got topology {model.topology!r}")
    if model.dim < min_dim:
        raise ValueError(f"chain analysis needs N >= {min_dim}, got {model.dim}")
    return model.detunings


def _block_det(h: np.ndarray, first: int, last: int) -> float:
    """Determinant over 1-based levels first..last; an empty block counts as 1."""
    if last < first:
        return 1.0
    block = h[first - 1:last, first - 1:last]
    return float(np.real(linalg.det(block)))


def ap_state_exists(model: ModelSpec, t: float = 0.0) -> APStateCertificate:
    det = _check_chain(model, 3)
    n = model.dim
    if det[0] != 0.0 or det[-1] != 0.0:
        raise ValueError("AP-state criterion assumes zero end detunings")
    h = model.matrix(t)
    h = 0.5 * (h + h.conj().T)
    left = _block_det(h, 2, n - 2)
    right = _block_det(h, 3, n - 1)
    product = left * right
    pulsed = float(det[1] * det[n - 2])
    notes = []
    if n == 4:
        same = det[1] * det[2] > 0
        notes.append(f"N=4: middle detunings {'have the same sign' if same else 'differ in sign or vanish'}")
    if n == 5 and det[1] == 0.0 and det[3] == 0.0:
        notes.append("N=5: Delta_2 = Delta_4 = 0, AP state exists irrespective of Delta_3")
    notes.append(f"pulsed limit: Delta_2*Delta_(N-1) = {pulsed:.6g}")
    return APStateCertificate(bool(product > 0), left, right, float(product), pulsed, tuple(notes))


def dressed_middle_spectrum(model: ModelSpec, t: float = 0.0) -> DressedSpectrum:
    """Eigenvalues of the inner (N-2) block; the recommended Lambda detuning is the one closest to zero."""
    _check_chain(model, 3)
    h = model.matrix(t)
    inner = h[1:model.dim - 1, 1:model.dim - 1]
    energies = linalg.eigvalsh(0.5 * (inner + inner.conj().T))
    pick = float(energies[int(np.argmin(np.abs(energies)))])
    return DressedSpectrum(energies, pick)
