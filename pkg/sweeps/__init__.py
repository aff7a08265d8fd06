"""
Sweeps
Parameter grids over config paths and the profile and scaling analyses run on them.
"""

from .profiles import (
    MIN_PROFILE_POINTS,
    DelayCurve,
    ProfileFit,
    ScalingFit,
    delay_curve,
    fit_scaling,
    half_crossing,
    line_profile,
)
from .scan import ScanAxis, ScanResult, ScanSpec, default_workers, observable_value, scan, scan_variants

__all__ = [
    "MIN_PROFILE_POINTS",
    "DelayCurve",
    "ProfileFit",
    "ScalingFit",
    "ScanAxis",
    "ScanResult",
    "ScanSpec",
    "default_workers",
    "delay_curve",
    "fit_scaling",
    "half_crossing",
    "line_profile",
    "observable_value",
    "scan",
    "scan_variants",
]
