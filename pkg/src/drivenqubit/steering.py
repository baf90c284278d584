"""Temporal steering parameter ``S_2`` for two mutually unbiased bases (sigma_x, sigma_y).

Classically ``S_2 <= 1``; values above 1 certify stronger-than-classical
temporal correlations between Alice's preparation and Bob's later measurement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import DrivingProtocol, NoiseModel
from .witness import MAXIMUM, MINIMUM, ExtremumSolution, _check_tau, _phase

__all__ = [
    "CLASSICAL_BOUND",
    "SteeringPoint",
    "steering_value",
    "steering_bound",
    "steering_bracket",
    "steering_delta_derivative",
    "steering_extrema",
    "steering_point",
]

CLASSICAL_BOUND = 1.0


@dataclass(frozen=True)
class SteeringPoint:
    tau: float
    value: float
    bound: float
    violates_inequality: bool


def steering_value(tau, drive: DrivingProtocol, noise: NoiseModel):
    """``S_2 = 2 exp(-2 gamma tau) cos^2(delta tau^2/2 + omega0 tau)``."""
    tau = _check_tau(tau)
    return 2.0 * np.exp(-2.0 * noise.gamma * tau) * np.cos(_phase(tau, drive)) ** 2


def steering_bound(tau, noise: NoiseModel):
    """Twice the squared l1-coherence, ``2 exp(-2 gamma tau)``."""
    tau = _check_tau(tau)
    return 2.0 * np.exp(-2.0 * noise.gamma * tau)


def steering_bracket(tau, drive: DrivingProtocol):
    """``sin(delta tau^2 + 2 omega0 tau)``; zeros are the stationary points in ``delta``."""
    return np.sin(drive.delta * tau**2 + 2.0 * drive.omega0 * tau)


def steering_delta_derivative(tau, drive: DrivingProtocol, noise: NoiseModel):
    """``dS_2/d delta = -tau^2 exp(-2 gamma tau) sin(delta tau^2 + 2 omega0 tau)``."""
    tau = _check_tau(tau)
    return -(tau**2) * np.exp(-2.0 * noise.gamma * tau) * steering_bracket(tau, drive)


def steering_extrema(
    k: int, tau: float, omega0: float, noise: NoiseModel | None = None
) -> list[ExtremumSolution]:
    """Stationary points at index ``k``: minimum ``D0`` then maximum ``D1``.

    ``D1 = (2 k pi - 2 omega0 tau) / tau^2`` saturates the bound;
    ``D0 = ((2k + 1) pi - 2 omega0 tau) / tau^2`` gives ``S_2 = 0``.
    """
    tau = float(_check_tau(tau, strict=True))
    noise = noise or NoiseModel()
    k = int(k)
    tau2 = tau * tau
    out = []
    for branch, n, kind in (("D0", 2 * k + 1, MINIMUM), ("D1", 2 * k, MAXIMUM)):
        delta = (n * math.pi - 2.0 * omega0 * tau) / tau2
        value = float(steering_value(tau, DrivingProtocol(omega0, delta), noise))
        out.append(ExtremumSolution(delta, branch, k, kind, value))
    return out


def steering_point(tau: float, drive: DrivingProtocol, noise: NoiseModel) -> SteeringPoint:
    value = float(steering_value(tau, drive, noise))
    return SteeringPoint(
        tau=float(tau),
        value=value,
        bound=float(steering_bound(tau, noise)),
        violates_inequality=value > CLASSICAL_BOUND,
    )
