# propagation/torque.py
"""
Real 3-vector propagation dB/dt = Q(t) x B, and the two-state analogue of
STIRAP driven by a detuning pulse followed by a coupling pulse:

    Q = (Omega, 0, Delta),  B(0) = (0, 0, -1)
    d = w cos(theta) + u sin(theta),  theta = atan2(Omega, Delta)
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.spatial.transform import Rotation

from core import BLOCH_TOL, BlochVector, TimeGrid
from pulses import PulseShape, eval_shape

from .options import IntegratorOptions
from .stepper import LinearFlow, integrate

TorqueFn = Callable[[float], np.ndarray]
Drive = Union[PulseShape, Callable[[np.ndarray], np.ndarray]]


@dataclass(frozen=True)
class TorqueTrajectory:
    grid: TimeGrid
    vectors: np.ndarray = field(compare=False, repr=False)  # (n_t, 3)
    diagnostics: dict = field(default_factory=dict, compare=False)

    def final(self) -> BlochVector:
        v = self.vectors[-1]
        length = float(np.linalg.norm(v))
        if length > 1.0:
            v = v / length  # rounding above the unit sphere
        return BlochVector.from_array(v)

    def lengths(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=1)


def torque_flow(q: TorqueFn) -> LinearFlow:
    def advance(t_mid: float, h: float, y: np.ndarray) -> np.ndarray:
        return Rotation.from_rotvec(np.asarray(q(t_mid), dtype=float) * h).apply(y)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return np.cross(np.asarray(q(t), dtype=float), y)

    return LinearFlow(advance, rhs)


def propagate_torque(q: TorqueFn, b0: Union[BlochVector, np.ndarray], grid: TimeGrid,
                     opts: Optional[IntegratorOptions] = None) -> TorqueTrajectory:
    opts = opts or IntegratorOptions()
    start = b0.as_array() if isinstance(b0, BlochVector) else np.asarray(b0, dtype=float).reshape(-1)
    if start.size != 3:
        raise ValueError(f"torque propagation needs a 3-vector, got {start.size} components")
    if np.linalg.norm(start) > 1.0 + BLOCH_TOL:
        raise ValueError(f"|B0| = {np.linalg.norm(start):.9f} exceeds 1")
    times = np.asarray(grid.samples)
    max_step = opts.max_step if opts.max_step is not None else float(np.min(np.diff(times)))
    vectors, stats = integrate(torque_flow(q), start, times, opts, max_step)
    diag = stats.as_dict()
    lengths = np.linalg.norm(vectors, axis=1)
    diag["length_drift"] = float(np.max(np.abs(lengths - lengths[0])))
    return TorqueTrajectory(grid, vectors, diag)


def _sampler(drive: Drive) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(drive, PulseShape):
        return lambda t: np.real(eval_shape(drive, t))
    return lambda t: np.real(np.asarray(drive(t), dtype=complex))


@dataclass(frozen=True)
class TwoStateRun:
    trajectory: TorqueTrajectory
    d: np.ndarray = field(compare=False, repr=False)
    theta: np.ndarray = field(compare=False, repr=False)
    final: BlochVector = None

    @property
    def min_abs_d(self) -> float:
        return float(np.min(np.abs(self.d)))


def two_state_stirap_run(detuning: Drive, coupling: Drive, grid: TimeGrid,
                         opts: Optional[IntegratorOptions] = None,
                         b0: Tuple[float, float, float] = (0.0, 0.0, -1.0)) -> TwoStateRun:
    delta = _sampler(detuning)
    omega = _sampler(coupling)

    def q(t: float) -> np.ndarray:
        return np.array([float(omega(t)), 0.0, float(delta(t))])

    traj = propagate_torque(q, np.asarray(b0, dtype=float), grid, opts)
    times = np.asarray(grid.samples)
    theta = np.arctan2(omega(times), delta(times))
    u, w = traj.vectors[:, 0], traj.vectors[:, 2]
    d = w * np.cos(theta) + u * np.sin(theta)
    return TwoStateRun(traj, d, theta, traj.final())


def yamazaki_drive(omega0: float, chirp: float, width: float = 1.0, samples: int = 1025):
    """
    Linear chirp that ends where the coupling reaches its peak:
        Delta(t) = -chirp * t for t < 0, else 0
        Omega(t) = omega0 * exp(-(t/width)^2) for t < 0, else omega0
    Returns (detuning, coupling, grid) on [-4 width, 2 width].
    """
    if omega0 <= 0 or chirp <= 0 or width <= 0:
        raise ValueError(f"omega0, chirp and width must be > 0, got {omega0}, {chirp}, {width}")

    def detuning(t):
        t = np.asarray(t, dtype=float)
        return np.where(t < 0, -chirp * t, 0.0)

    def coupling(t):
        t = np.asarray(t, dtype=float)
        return np.where(t < 0, omega0 * np.exp(-(t / width) ** 2), omega0)

    grid = TimeGrid.uniform(-4.0 * width, 2.0 * width, samples)
    return detuning, coupling, grid
