"""
Propagation
TDSE, Liouville (pure dephasing) and torque-vector integrators on a shared adaptive stepper.
"""

from .liouville import hermitize, liouvillian, propagate_liouville
from .options import METHODS, IntegratorOptions, PropagationError, SimResult
from .stepper import LinearFlow, StepStats, integrate
from .tdse import default_grid, general_propagator, hermitian_propagator, propagate_tdse, tdse_flow
from .torque import (
    TorqueTrajectory,
    TwoStateRun,
    propagate_torque,
    torque_flow,
    two_state_stirap_run,
    yamazaki_drive,
)

__all__ = [
    "METHODS",
    "IntegratorOptions",
    "LinearFlow",
    "PropagationError",
    "SimResult",
    "StepStats",
    "TorqueTrajectory",
    "TwoStateRun",
    "default_grid",
    "general_propagator",
    "hermitian_propagator",
    "hermitize",
    "integrate",
    "liouvillian",
    "propagate_liouville",
    "propagate_tdse",
    "propagate_torque",
    "tdse_flow",
    "torque_flow",
    "two_state_stirap_run",
    "yamazaki_drive",
]
