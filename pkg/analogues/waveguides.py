# analogues/waveguides.py
"""
Evanescently coupled waveguide arrays as chain Hamiltonians over z.

Coupling law: kappa(z) = kappa0 * exp(-d(z) / d0). With a parabolic
separation d(z) = d_min + c (z - z_c)^2 the coupling is an exact Gaussian in z
of width sqrt(d0 / c), so the chain uses the built-in Gaussian shape and
Omega_{j,j+1}(z) = 2 kappa_{j,j+1}(z).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from core import StateVector, TimeGrid
from models import ModelSpec, build_chain
from propagation import IntegratorOptions, SimResult, propagate_tdse
from pulses import PulseShape

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeparationProfile:
    """d(z) = d_min + curvature * (z - z_center)^2 (center-to-center, length units)."""

    d_min: float
    curvature: float = 1.0
    z_center: float = 0.0

    def __post_init__(self):
        if not self.d_min > 0:
            raise ValueError(f"separation d_min must be > 0, got {self.d_min}")
        if self.curvature < 0:
            raise ValueError(f"separation curvature must be >= 0, got {self.curvature}")

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        return self.d_min + self.curvature * (z - self.z_center) ** 2


@dataclass(frozen=True)
class WaveguideLayout:
    n_guides: int
    separations: Tuple[SeparationProfile, ...]
    kappa0: float
    decay_length: float = 1.0
    z_start: float = -5.0
    z_end: float = 5.0
    mismatch: Optional[Tuple[float, ...]] = None
    samples: int = 2001

    def __post_init__(self):
        if int(self.n_guides) < 3:
            raise ValueError(f"a waveguide chain needs >= 3 guides, got {self.n_guides}")
        object.__setattr__(self, "n_guides", int(self.n_guides))
        object.__setattr__(self, "separations", tuple(self.separations))
        if len(self.separations) != self.n_guides - 1:
            raise ValueError(f"{self.n_guides} guides need {self.n_guides - 1} separation profiles, "
                             f"got {len(self.separations)}")
        if not self.kappa0 > 0 or not self.decay_length > 0:
            raise ValueError(f"kappa0 and decay_length must be > 0, got {self.kappa0}, {self.decay_length}")
        if not self.z_end > self.z_start:
            raise ValueError(f"z_end ({self.z_end}) must exceed z_start ({self.z_start})")
        if self.mismatch is not None:
            object.__setattr__(self, "mismatch", tuple(float(m) for m in self.mismatch))
            if len(self.mismatch) != self.n_guides:
                raise ValueError(f"mismatch needs {self.n_guides} entries, got {len(self.mismatch)}")
        if int(self.samples) < 2:
            raise ValueError(f"samples must be >= 2, got {self.samples}")

    @property
    def grid(self) -> TimeGrid:
        return TimeGrid.uniform(self.z_start, self.z_end, int(self.samples))

    def scaled(self, factor: float) -> "WaveguideLayout":
        """Same geometry with kappa0 scaled (a wavelength change)."""
        return WaveguideLayout(self.n_guides, self.separations, self.kappa0 * factor, self.decay_length,
                               self.z_start, self.z_end, self.mismatch, self.samples)


def coupling_profile(layout: WaveguideLayout, z) -> np.ndarray:
    """kappa_{j,j+1}(z), shape (n_guides - 1,) + shape(z)."""
    z = np.asarray(z, dtype=float)
    return np.array([layout.kappa0 * np.exp(-sep(z) / layout.decay_length) for sep in layout.separations])


def _coupling_shape(layout: WaveguideLayout, sep: SeparationProfile) -> PulseShape:
    peak = 2.0 * layout.kappa0 * np.exp(-sep.d_min / layout.decay_length)
    if sep.curvature == 0.0:
        span = layout.z_end - layout.z_start
        return PulseShape("flat", peak, span, center=0.5 * (layout.z_start + layout.z_end))
    return PulseShape("gaussian", peak, float(np.sqrt(layout.decay_length / sep.curvature)), center=sep.z_center)


def waveguide_to_chain(layout: WaveguideLayout) -> ModelSpec:
    shapes = [_coupling_shape(layout, sep) for sep in layout.separations]
    detunings = list(layout.mismatch) if layout.mismatch is not None else [0.0] * layout.n_guides
    return build_chain(shapes, detunings, resonant_ends=False, window=(layout.z_start, layout.z_end))


def propagate_waveguides(layout: WaveguideLayout, input_guide: int = 1,
                         opts: Optional[IntegratorOptions] = None) -> SimResult:
    """Guided power per waveguide along z; light enters a single guide."""
    if not 1 <= int(input_guide) <= layout.n_guides:
        raise ValueError(f"input_guide must lie in 1..{layout.n_guides}, got {input_guide}")
    model = waveguide_to_chain(layout)
    psi0 = StateVector.basis(layout.n_guides, int(input_guide))
    result = propagate_tdse(model, psi0, layout.grid, opts)
    logger.debug("waveguide run: output powers %s", np.round(result.final_populations, 6).tolist())
    return result


def layout_from_config(block: dict) -> WaveguideLayout:
    seps = [SeparationProfile(s["d_min"], s["curvature"], s["z_center"]) for s in block["separations"]]
    return WaveguideLayout(block["n_guides"], tuple(seps), block["kappa0"], block["decay_length"],
                           block["z_start"], block["z_end"],
                           tuple(block["mismatch"]) if block.get("mismatch") is not None else None,
                           block["samples"])


def counterintuitive_layout(n_guides: int = 3, kappa0: float = 20.0 * np.e, offset: float = 0.6,
                            inner_d_min: Optional[float] = None,
                            z_span: Sequence[float] = (-5.0, 5.0)) -> WaveguideLayout:
    """
    Outer guide pair approaches the far end first: d_{N-1,N} centered at -offset,
    d_{12} at +offset. Inner separations of a longer array are constant at inner_d_min.
    """
    if n_guides > 3 and inner_d_min is None:
        raise ValueError("arrays longer than 3 guides need inner_d_min")
    seps = []
    for j in range(1, n_guides):
        if j == 1:
            seps.append(SeparationProfile(1.0, 1.0, offset))
        elif j == n_guides - 1:
            seps.append(SeparationProfile(1.0, 1.0, -offset))
        else:
            seps.append(SeparationProfile(float(inner_d_min), 0.0, 0.0))
    return WaveguideLayout(n_guides, tuple(seps), kappa0, 1.0, float(z_span[0]), float(z_span[1]))
