# analogues/polarization.py
"""
Stokes-vector evolution dS/dz = Omega(z) x S in birefringent media.

Discrete waveplates rotate S by their retardance about the birefringence axis
(cos 2a, sin 2a, 0) of a fast axis at angle a; continuous media reuse the torque
propagator.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.spatial.transform import Rotation

from core import BLOCH_TOL, TimeGrid
from propagation import IntegratorOptions, propagate_torque


def birefringence_axis(angle: float) -> np.ndarray:
    return np.array([np.cos(2.0 * angle), np.sin(2.0 * angle), 0.0])


@dataclass(frozen=True)
class Waveplate:
    retardance: float
    angle: float

    def __post_init__(self):
        if not (np.isfinite(self.retardance) and np.isfinite(self.angle)):
            raise ValueError(f"waveplate retardance and angle must be finite reals, got {self.retardance}, {self.angle}")

    @property
    def axis(self) -> np.ndarray:
        return birefringence_axis(self.angle)

    def apply(self, s: np.ndarray) -> np.ndarray:
        return Rotation.from_rotvec(self.axis * self.retardance).apply(s)


@dataclass(frozen=True)
class WaveplateStack:
    elements: Tuple[Waveplate, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise ValueError("a waveplate stack needs at least one element")

    def __len__(self) -> int:
        return len(self.elements)

    @classmethod
    def rotating_half_wave(cls, n_plates: int, angle_start: float, angle_end: float) -> "WaveplateStack":
        """Half-wave plates whose fast axes step linearly from angle_start to angle_end."""
        if int(n_plates) < 1:
            raise ValueError(f"n_plates must be >= 1, got {n_plates}")
        angles = np.linspace(angle_start, angle_end, int(n_plates))
        return cls(tuple(Waveplate(np.pi, float(a)) for a in angles))

    def axes(self) -> np.ndarray:
        return np.array([w.axis for w in self.elements])


@dataclass(frozen=True)
class PolarizationTrajectory:
    """positions: element index (0 = input) for stacks, z for continuous media."""

    positions: np.ndarray = field(repr=False)
    vectors: np.ndarray = field(repr=False)

    @property
    def final(self) -> np.ndarray:
        return self.vectors[-1]

    def lengths(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=1)


Medium = Union[WaveplateStack, Callable[[float], np.ndarray]]


def polarization_propagate(medium: Medium, s0, grid: Optional[TimeGrid] = None,
                           opts: Optional[IntegratorOptions] = None) -> PolarizationTrajectory:
    s0 = np.asarray(s0, dtype=float).reshape(-1)
    if s0.size != 3:
        raise ValueError(f"Stokes vector needs 3 components, got {s0.size}")
    if np.linalg.norm(s0) > 1.0 + BLOCH_TOL:
        raise ValueError(f"|S0| = {np.linalg.norm(s0):.9f} exceeds 1")
    if isinstance(medium, WaveplateStack):
        out = [s0]
        for plate in medium.elements:
            out.append(plate.apply(out[-1]))
        return PolarizationTrajectory(np.arange(len(out), dtype=float), np.array(out))
    if grid is None:
        raise ValueError("continuous media need a z grid")
    traj = propagate_torque(lambda z: np.asarray(medium(z), dtype=float), s0, grid, opts)
    return PolarizationTrajectory(np.asarray(grid.samples), traj.vectors)


def misalignment(trajectory: PolarizationTrajectory, stack: WaveplateStack) -> np.ndarray:
    """Angle on the Poincare sphere between S after element k and that element's axis."""
    vecs = trajectory.vectors[1:]
    if len(vecs) != len(stack):
        raise ValueError(f"trajectory has {len(vecs)} steps, stack has {len(stack)} elements")
    axes = stack.axes()
    cosines = np.sum(vecs * axes, axis=1) / np.linalg.norm(vecs, axis=1)
    return np.arccos(np.clip(cosines, -1.0, 1.0))
