# spectral/dark_states.py
"""
Closed-form instantaneous eigenstates.

Lambda, resonant two-photon:
    Phi_0 = cos(theta) psi1 - e^{i chi} sin(theta) psi3,  chi = arg(P) + arg(S)
    Phi_+ = sin(theta) sin(phi) psi1 + cos(phi) psi2 + cos(theta) sin(phi) psi3
    Phi_- = sin(theta) cos(phi) psi1 - sin(phi) psi2 + cos(theta) cos(phi) psi3
    eps_+- = (Delta +- sqrt(Delta^2 + Omega_rms^2)) / 2,  eps_0 = 0
Tripod (real couplings):
    D1 = cos(v) psi1 - sin(v) cos(f) psi3 - sin(v) sin(f) psi4
    D2 = sin(f) psi3 - cos(f) psi4
    tan f = C / S,  tan v = P / sqrt(S^2 + C^2)
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from core import StateVector


class UndefinedAngleError(ValueError):
    """All couplings vanish; the mixing angle has no value."""


def _real(value: complex, name: str) -> float:
    z = complex(value)
    if abs(z.imag) > 1e-12 * max(1.0, abs(z)):
        raise ValueError(f"{name} must be real for this closed form, got {value}")
    return z.real


def dark_state_lambda(omega_p: complex, omega_s: complex) -> StateVector:
    p, s = complex(omega_p), complex(omega_s)
    if p == 0 and s == 0:
        raise UndefinedAngleError("dark state undefined: both couplings are zero")
    theta = np.arctan2(abs(p), abs(s))
    chi = np.angle(p) + np.angle(s)
    return StateVector([np.cos(theta), 0.0, -np.exp(1j * chi) * np.sin(theta)])


@dataclass(frozen=True)
class AdiabaticStates:
    plus: StateVector
    zero: StateVector
    minus: StateVector
    e_plus: float
    e_zero: float
    e_minus: float


def adiabatic_states_lambda(omega_p: float, omega_s: float, detuning: float) -> AdiabaticStates:
    p = _real(omega_p, "omega_p")
    s = _real(omega_s, "omega_s")
    if p == 0 and s == 0:
        raise UndefinedAngleError("adiabatic states undefined: both couplings are zero")
    rms = np.hypot(p, s)
    theta = np.arctan2(p, s)
    phi = 0.5 * np.arctan2(rms, detuning)
    root = np.hypot(detuning, rms)
    st, ct, sp, cp = np.sin(theta), np.cos(theta), np.sin(phi), np.cos(phi)
    return AdiabaticStates(
        plus=StateVector([st * sp, cp, ct * sp]),
        zero=StateVector([ct, 0.0, -st]),
        minus=StateVector([st * cp, -sp, ct * cp]),
        e_plus=float(0.5 * (detuning + root)),
        e_zero=0.0,
        e_minus=float(0.5 * (detuning - root)),
    )


def tripod_angles(omega_p: float, omega_s: float, omega_c: float) -> Tuple[float, float]:
    """(vartheta, phi) for real signed couplings."""
    p = _real(omega_p, "omega_p")
    s = _real(omega_s, "omega_s")
    c = _real(omega_c, "omega_c")
    if p == 0 and s == 0 and c == 0:
        raise UndefinedAngleError("tripod angles undefined: all couplings are zero")
    return float(np.arctan2(p, np.hypot(s, c))), float(np.arctan2(c, s))


def tripod_dark_pair(omega_p: float, omega_s: float, omega_c: float) -> Tuple[StateVector, StateVector]:
    vartheta, phi = tripod_angles(omega_p, omega_s, omega_c)
    cv, sv, cf, sf = np.cos(vartheta), np.sin(vartheta), np.cos(phi), np.sin(phi)
    d1 = StateVector([cv, 0.0, -sv * cf, -sv * sf])
    d2 = StateVector([0.0, 0.0, sf, -cf])
    return d1, d2


def chain_null_vector(couplings: Sequence[complex]) -> StateVector:
    """
    Zero-energy state of a resonant chain with an odd number of levels.

    With odd links a_m = Omega_{2m+1} and even links b_m = Omega_{2m+2}, the
    amplitude on level 2m+1 is (-1)^m prod_{i<m} a_i prod_{i>=m} conj(b_i).
    """
    omegas = np.asarray(couplings, dtype=complex).reshape(-1)
    if omegas.size < 2 or omegas.size % 2:
        raise ValueError(f"null vector needs an odd number of levels (even coupling count), got {omegas.size}")
    a, b = omegas[0::2], omegas[1::2]
    n_odd = a.size + 1
    amps = np.zeros(omegas.size + 1, dtype=complex)
    for m in range(n_odd):
        amps[2 * m] = (-1) ** m * np.prod(a[:m]) * np.prod(np.conj(b[m:]))
    norm = np.linalg.norm(amps)
    if norm == 0:
        raise UndefinedAngleError("chain null vector vanishes for these couplings")
    return StateVector(amps / norm)
