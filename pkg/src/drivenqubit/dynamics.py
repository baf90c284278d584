"""Closed-form Bloch-vector evolution of a linearly chirped, dephasing qubit.

The Hamiltonian is ``H(t) = omega(t) sigma_z / 2`` with ``omega(t) = omega0 + delta*t``
(hbar = 1).  Pure dephasing damps the transverse components ``(x, y)`` at rate
``gamma`` and leaves ``z`` untouched, so the whole evolution reduces to a damped
rotation of the transverse plane by the accumulated phase ``int omega dt``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DrivingProtocol",
    "NoiseModel",
    "PauliVector",
    "PropagatorBlock",
    "phase_integral",
    "propagator",
    "evolve",
    "measurement_dephasing_x",
    "plus_state",
]

#: slack on the Bloch-ball constraint |r| <= 1
BLOCH_SLACK = 1e-9


def _check_finite(name, value):
    if not np.all(np.isfinite(value)):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class DrivingProtocol:
    """Linear drive ``omega(t) = omega0 + delta * t``.

    Fields may be numpy arrays for vectorized evaluation of the closed forms;
    they broadcast against each other and against ``tau``.
    """

    omega0: float = 1.0
    delta: float = 0.0

    def __post_init__(self):
        _check_finite("omega0", self.omega0)
        _check_finite("delta", self.delta)

    def frequency(self, t):
        return self.omega0 + self.delta * t


@dataclass(frozen=True)
class NoiseModel:
    """Pure dephasing at rate ``gamma`` (``gamma = 0`` is unitary evolution)."""

    gamma: float = 0.0

    def __post_init__(self):
        _check_finite("gamma", self.gamma)
        if np.any(np.asarray(self.gamma) < 0):
            raise ValueError(f"gamma must be >= 0, got {self.gamma!r}")


@dataclass(frozen=True)
class PauliVector:
    """Expectation values of ``(sigma_x, sigma_y, sigma_z)``."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            _check_finite(name, getattr(self, name))
        if self.norm() ** 2 > 1.0 + BLOCH_SLACK:
            raise ValueError(f"Bloch vector outside the unit ball: {self.as_array()}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def norm(self) -> float:
        return float(np.sqrt(self.x**2 + self.y**2 + self.z**2))


@dataclass(frozen=True)
class PropagatorBlock:
    """Damped rotation acting on the ``(x, y)`` components between ``t1`` and ``t2``."""

    m: np.ndarray
    t1: float
    t2: float

    def __matmul__(self, other: PropagatorBlock) -> PropagatorBlock:
        """Compose ``self`` after ``other`` (``other`` must end where ``self`` starts)."""
        if not np.isclose(other.t2, self.t1, rtol=0.0, atol=1e-12):
            raise ValueError(
                f"cannot compose [{other.t1}, {other.t2}] with [{self.t1}, {self.t2}]"
            )
        return PropagatorBlock(self.m @ other.m, other.t1, self.t2)


def phase_integral(t1: float, t2: float, drive: DrivingProtocol):
    """Accumulated phase ``int_{t1}^{t2} omega(t) dt``.

    Antisymmetric in ``(t1, t2)``; array arguments broadcast.
    """
    _check_finite("t1", t1)
    _check_finite("t2", t2)
    return (t2 - t1) * (drive.omega0 + 0.5 * drive.delta * (t1 + t2))


def propagator(
    t1: float, t2: float, drive: DrivingProtocol, noise: NoiseModel
) -> PropagatorBlock:
    """Transverse-plane propagator from ``t1`` to ``t2``.

    Returns ``exp(-gamma (t2 - t1)) * [[cos phi, -sin phi], [sin phi, cos phi]]``
    with ``phi = phase_integral(t1, t2, drive)``.  This is the 2x2 (x, y) block of
    the operator-basis master equation; the z and identity rows are trivial.
    """
    if not t1 <= t2:
        raise ValueError(f"propagator requires t1 <= t2, got t1={t1}, t2={t2}")
    phi = phase_integral(t1, t2, drive)
    damp = np.exp(-noise.gamma * (t2 - t1))
    c, s = np.cos(phi), np.sin(phi)
    m = damp * np.array([[c, -s], [s, c]], dtype=float)
    return PropagatorBlock(m, float(t1), float(t2))


def evolve(
    state: PauliVector, t1: float, t2: float, drive: DrivingProtocol, noise: NoiseModel
) -> PauliVector:
    """Evolve a Bloch vector from ``t1`` to ``t2``; ``z`` is conserved exactly."""
    xy = propagator(t1, t2, drive, noise).m @ np.array([state.x, state.y])
    return PauliVector(float(xy[0]), float(xy[1]), state.z)


def measurement_dephasing_x(state: PauliVector) -> PauliVector:
    """Nonselective sigma_x measurement: keep ``x``, erase ``y`` and ``z``."""
    return PauliVector(state.x, 0.0, 0.0)


def plus_state() -> PauliVector:
    """The +1 eigenstate of sigma_x."""
    return PauliVector(1.0, 0.0, 0.0)
