# protocols/report.py
"""ProtocolReport and OracleCheck, with JSON-safe export of non-finite numbers."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

EFFICIENCY_TOL = 1e-6


@dataclass(frozen=True)
class OracleCheck:
    """A closed-form prediction next to the measured value and the tolerance it is held to."""

    name: str
    predicted: float
    measured: float
    tolerance: float

    def __post_init__(self):
        if not self.tolerance >= 0:
            raise ValueError(f"oracle {self.name!r}: tolerance must be >= 0, got {self.tolerance}")

    @property
    def deviation(self) -> float:
        return abs(float(self.measured) - float(self.predicted))

    @property
    def passed(self) -> bool:
        return bool(self.deviation <= self.tolerance)

    def as_dict(self) -> Dict[str, Any]:
        return {"predicted": float(self.predicted), "measured": float(self.measured),
                "deviation": self.deviation, "tolerance": float(self.tolerance), "passed": self.passed}


@dataclass(frozen=True)
class ProtocolReport:
    name: str
    final_populations: np.ndarray = field(repr=False)
    target: int
    transfer_efficiency: float
    max_transient_p2: float
    max_middle: float
    rms_area: Optional[float]
    local_margin: Optional[float]
    global_margin: Optional[float]
    config_hash: str
    oracles: Dict[str, OracleCheck] = field(default_factory=dict)
    fidelity: Optional[float] = None
    extras: Dict[str, Any] = field(default_factory=dict)
    diagnostics: Dict[str, Any] = field(default_factory=dict, compare=False)
    notes: List[str] = field(default_factory=list, compare=False)
    result: Any = field(default=None, compare=False, repr=False)
    model: Any = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not -EFFICIENCY_TOL <= self.transfer_efficiency <= 1.0 + EFFICIENCY_TOL:
            raise ValueError(f"transfer efficiency {self.transfer_efficiency!r} outside [0, 1]")

    @property
    def infidelity(self) -> float:
        return 1.0 - float(self.transfer_efficiency)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "target": int(self.target),
            "final_populations": [float(p) for p in self.final_populations],
            "transfer_efficiency": float(self.transfer_efficiency),
            "infidelity": self.infidelity,
            "max_transient_p2": float(self.max_transient_p2),
            "max_middle": float(self.max_middle),
            "rms_area": _json_number(self.rms_area),
            "local_margin": _json_number(self.local_margin),
            "global_margin": _json_number(self.global_margin),
            "fidelity": _json_number(self.fidelity),
            "oracles": {k: v.as_dict() for k, v in sorted(self.oracles.items())},
            "extras": {k: _json_value(v) for k, v in sorted(self.extras.items())},
            "diagnostics": {k: _json_value(v) for k, v in sorted(self.diagnostics.items())},
            "notes": list(self.notes),
            "config_hash": self.config_hash,
        }


def _json_number(value: Optional[float]):
    if value is None:
        return None
    value = float(value)
    return value if np.isfinite(value) else None


def _json_value(value: Any):
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _json_number(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_json_value(v) for v in np.asarray(value).tolist()] if isinstance(value, np.ndarray) \
            else [_json_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    return str(value)
