"""
Spectral analysis
Eigensystems, closed-form adiabatic states, adiabatic tracking and adiabaticity diagnostics.
"""

from .adiabaticity import (
    A_MIN,
    MIXING_FLOOR,
    GlobalAdiabaticity,
    LocalAdiabaticity,
    TripodBeta,
    dephasing_eta,
    global_adiabaticity,
    local_adiabaticity,
    theta_dot,
    tripod_beta,
)
from .chains import APStateCertificate, DressedSpectrum, ap_state_exists, dressed_middle_spectrum
from .dark_states import (
    AdiabaticStates,
    UndefinedAngleError,
    adiabatic_states_lambda,
    chain_null_vector,
    dark_state_lambda,
    tripod_angles,
    tripod_dark_pair,
)
from .eigen import EigenSystem, eigensystem, fix_gauge
from .tracking import CROSSING_THRESHOLD, AdiabaticReport, CrossingFlag, track_adiabatic

__all__ = [
    "A_MIN",
    "CROSSING_THRESHOLD",
    "MIXING_FLOOR",
    "APStateCertificate",
    "AdiabaticReport",
    "AdiabaticStates",
    "CrossingFlag",
    "DressedSpectrum",
    "EigenSystem",
    "GlobalAdiabaticity",
    "LocalAdiabaticity",
    "TripodBeta",
    "UndefinedAngleError",
    "adiabatic_states_lambda",
    "ap_state_exists",
    "chain_null_vector",
    "dark_state_lambda",
    "dephasing_eta",
    "dressed_middle_spectrum",
    "eigensystem",
    "fix_gauge",
    "global_adiabaticity",
    "local_adiabaticity",
    "theta_dot",
    "track_adiabatic",
    "tripod_angles",
    "tripod_beta",
    "tripod_dark_pair",
]
