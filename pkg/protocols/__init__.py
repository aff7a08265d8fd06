"""
Protocols
Named STIRAP runs and variants, closed-form oracles, transition times and run reports.
"""

from .oracles import ORACLES, UnknownOracleError, analytic_oracles
from .report import OracleCheck, ProtocolReport
from .runs import (
    RUNNERS,
    propagate_model,
    run_bright_stirap,
    run_chain,
    run_composite,
    run_fractional,
    run_m_chain,
    run_pap,
    run_protocol,
    run_stirap,
    run_straddle,
    run_tripod,
    run_two_state,
    run_waveguide,
)
from .setup import build_grid, build_model, build_options, build_pulses, build_two_state_drive
from .timing import TransitionTimeEstimate, population_transition_time, transition_time

__all__ = [
    "ORACLES",
    "RUNNERS",
    "OracleCheck",
    "ProtocolReport",
    "TransitionTimeEstimate",
    "UnknownOracleError",
    "analytic_oracles",
    "build_grid",
    "build_model",
    "build_options",
    "build_pulses",
    "build_two_state_drive",
    "population_transition_time",
    "propagate_model",
    "run_bright_stirap",
    "run_chain",
    "run_composite",
    "run_fractional",
    "run_m_chain",
    "run_pap",
    "run_protocol",
    "run_stirap",
    "run_straddle",
    "run_tripod",
    "run_two_state",
    "run_waveguide",
    "transition_time",
]
