# protocols/oracles.py
"""
Closed-form predictions used as oracles by the protocol runners and tests.

analytic_oracles("dephasing_populations", gamma=10.0, eta=0.75) -> {"rho11": .., "rho22": .., "rho33": ..}
"""

from typing import Any, Callable, Dict

import numpy as np

from models import effective_two_state


class UnknownOracleError(KeyError):
    pass


def _dephasing_populations(gamma: float, eta: float) -> Dict[str, float]:
    decay = float(np.exp(-gamma * eta))
    return {"rho11": (1.0 - decay) / 3.0, "rho22": (1.0 - decay) / 3.0, "rho33": 1.0 / 3.0 + 2.0 * decay / 3.0}


def _eta_gaussian(delay: float, width: float = 1.0) -> float:
    if delay == 0:
        raise ValueError("eta for Gaussian pulses needs a nonzero delay")
    return 3.0 * width ** 2 / (4.0 * abs(delay))


def _resonant_intuitive(area: float) -> Dict[str, float]:
    return {"P1": 0.0, "P2": float(np.sin(area / 2.0) ** 2), "P3": float(np.cos(area / 2.0) ** 2)}


def _tripod_case1(beta: float) -> Dict[str, float]:
    return {"P3": float(np.sin(beta) ** 2), "P4": float(np.cos(beta) ** 2)}


def _tripod_case2(beta: float) -> Dict[str, float]:
    return {"P3": float(np.cos(beta) ** 2), "P4": float(np.sin(beta) ** 2)}


def _tripod_case3(beta: float = 0.0) -> Dict[str, float]:
    return {"P3": 0.5, "P4": 0.5}


def _transition_time(width: float, delay: float, epsilon: float = 0.01) -> float:
    if not 0.0 < epsilon < 0.5:
        raise ValueError(f"epsilon must lie in (0, 1/2), got {epsilon}")
    if delay == 0:
        raise ValueError("transition time needs a nonzero delay")
    return width ** 2 / abs(delay) * np.log(np.sqrt((1.0 - epsilon) / epsilon))


def _pap_max_p2(n_pulses: int) -> float:
    return float(np.sin(np.pi / (4.0 * n_pulses)) ** 2)


def _effective_two_state(omega_p: float, omega_s: float, detuning: float) -> Dict[str, float]:
    coupling, shift = effective_two_state(omega_p, omega_s, detuning)
    return {"coupling": coupling, "shift": shift}


def _fractional_state(theta: float, alpha: float = 0.0) -> np.ndarray:
    return np.array([np.cos(theta), 0.0, -np.exp(1j * alpha) * np.sin(theta)], dtype=complex)


ORACLES: Dict[str, Callable[..., Any]] = {
    "dephasing_populations": _dephasing_populations,
    "eta_gaussian": _eta_gaussian,
    "resonant_intuitive": _resonant_intuitive,
    "tripod_beta": lambda beta: float(np.sin(beta) ** 2),
    "tripod_case1": _tripod_case1,
    "tripod_case2": _tripod_case2,
    "tripod_case3": _tripod_case3,
    "asymmetric_center": lambda detuning: 8.0 * detuning / 9.0,
    "asymmetric_width": lambda omega_min: 4.0 * omega_min / 3.0,
    "transition_time": _transition_time,
    "pap_max_p2": _pap_max_p2,
    "effective_two_state": _effective_two_state,
    "gamma_half_scaling": lambda omega0, width=1.0: omega0 ** 2 * width,
    "stirap_adiabatic": lambda: 1.0,
    "fractional_state": _fractional_state,
}


def analytic_oracles(name: str, **params) -> Any:
    try:
        fn = ORACLES[name]
    except KeyError:
        raise UnknownOracleError(f"no oracle named {name!r}; registered: {sorted(ORACLES)}") from None
    return fn(**params)
