"""
Analogues
Waveguide arrays mapped onto chain Hamiltonians, and polarization optics on the torque equation.
"""

from .polarization import (
    PolarizationTrajectory,
    Waveplate,
    WaveplateStack,
    birefringence_axis,
    misalignment,
    polarization_propagate,
)
from .waveguides import (
    SeparationProfile,
    WaveguideLayout,
    counterintuitive_layout,
    coupling_profile,
    layout_from_config,
    propagate_waveguides,
    waveguide_to_chain,
)

__all__ = [
    "PolarizationTrajectory",
    "SeparationProfile",
    "WaveguideLayout",
    "Waveplate",
    "WaveplateStack",
    "birefringence_axis",
    "counterintuitive_layout",
    "coupling_profile",
    "layout_from_config",
    "misalignment",
    "polarization_propagate",
    "propagate_waveguides",
    "waveguide_to_chain",
]
