# models/physics.py
"""Small closed-form relations: detuning bookkeeping, adiabatic elimination, Doppler shifts."""

from typing import Tuple

import numpy as np

LINKAGES = ("lambda", "ladder")
GEOMETRIES = ("copropagating", "counterpropagating")


class EliminationError(ZeroDivisionError):
    """Adiabatic elimination requested at zero single-photon detuning."""


def two_photon_detuning(pump_detuning: float, stokes_detuning: float, linkage: str = "lambda") -> float:
    """delta = Delta_P - Delta_S (lambda) or Delta_P + Delta_S (ladder)."""
    if linkage == "lambda":
        return float(pump_detuning - stokes_detuning)
    if linkage == "ladder":
        return float(pump_detuning + stokes_detuning)
    raise ValueError(f"unknown linkage {linkage!r}; expected one of {LINKAGES}")


def effective_two_state(omega_p: float, omega_s: float, detuning: float) -> Tuple[float, float]:
    """
    Eliminate level 2 at large |Delta|:
        Omega_eff = -Omega_P Omega_S / (2 Delta)
        Delta_eff = (Omega_P^2 - Omega_S^2) / (2 Delta)
    """
    if detuning == 0:
        raise EliminationError("adiabatic elimination needs Delta != 0")
    omega_eff = -omega_p * omega_s / (2.0 * detuning)
    delta_eff = (omega_p ** 2 - omega_s ** 2) / (2.0 * detuning)
    return float(omega_eff), float(delta_eff)


def doppler_detuning(pump_detuning: float, stokes_detuning: float, k_p: float, k_s: float,
                     velocity: float, geometry: str = "copropagating") -> float:
    """Two-photon detuning seen by an atom moving with `velocity` along the beams."""
    base = pump_detuning - stokes_detuning
    if geometry == "copropagating":
        return float(base + (k_p - k_s) * velocity)
    if geometry == "counterpropagating":
        return float(base + (abs(k_p) + abs(k_s)) * velocity)
    raise ValueError(f"unknown geometry {geometry!r}; expected one of {GEOMETRIES}")


def rabi_from_field(dipole_moment: float, field_amplitude: float, hbar: float = 1.0) -> float:
    """Omega = -d E / hbar."""
    if hbar <= 0:
        raise ValueError(f"hbar must be > 0, got {hbar}")
    return float(-dipole_moment * field_amplitude / hbar)


def elimination_ratio(omega_p: float, omega_s: float, detuning: float) -> float:
    """|Delta| / max(|Omega_P|, |Omega_S|); elimination is trustworthy above ~5."""
    peak = max(abs(omega_p), abs(omega_s))
    return float(np.inf) if peak == 0 else float(abs(detuning) / peak)
