"""No-signaling-in-time quantum witness for the chirped, dephasing qubit.

Protocol: prepare ``|+>``, optionally measure ``sigma_x`` nonselectively at
``tau/2``, and record the probability of ``+`` at ``tau``.  The witness is the
absolute difference between the two probabilities.

All functions accept numpy arrays for ``tau`` and for the fields of the
parameter dataclasses; they broadcast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dynamics import DrivingProtocol, NoiseModel, PauliVector, evolve, measurement_dephasing_x, plus_state

__all__ = [
    "WitnessPoint",
    "ExtremumSolution",
    "ARCTAN_SQRT15",
    "prob_plus_unmeasured",
    "prob_plus_measured",
    "witness_value",
    "coherence_bound",
    "witness_bracket",
    "witness_delta_derivative",
    "analytic_extrema_zero_omega",
    "witness_point",
    "witness_from_propagators",
]

ARCTAN_SQRT15 = math.atan(math.sqrt(15.0))

MAXIMUM = "maximum"
MINIMUM = "minimum"


@dataclass(frozen=True)
class ExtremumSolution:
    """Stationary point in the chirp rate ``delta`` at fixed ``tau``.

    ``branch`` is one of ``D0``..``D3`` when the point belongs to an analytic
    family (``k`` is then its integer index), or ``"numeric"`` with ``k=None``
    when it was located numerically with no closed form to attach it to.
    """

    delta: float
    branch: str
    k: Optional[int]
    kind: str
    value: float


@dataclass(frozen=True)
class WitnessPoint:
    tau: float
    p_plus: float
    p_plus_measured: float
    value: float
    bound: float


def _phase(tau, drive):
    return 0.5 * drive.delta * tau**2 + drive.omega0 * tau


def _check_tau(tau, strict=False):
    tau = np.asarray(tau, dtype=float)
    if np.any(~np.isfinite(tau)) or np.any(tau < 0) or (strict and np.any(tau == 0)):
        raise ValueError(f"tau must be {'>' if strict else '>='} 0 and finite, got {tau}")
    return tau


def prob_plus_unmeasured(tau, drive: DrivingProtocol, noise: NoiseModel):
    """``p_+(tau) = [1 + exp(-gamma tau) cos(delta tau^2/2 + omega0 tau)] / 2``."""
    tau = _check_tau(tau)
    return 0.5 * (1.0 + np.exp(-noise.gamma * tau) * np.cos(_phase(tau, drive)))


def prob_plus_measured(tau, drive: DrivingProtocol, noise: NoiseModel):
    """Probability of ``+`` at ``tau`` after a nonselective sigma_x measurement at ``tau/2``."""
    tau = _check_tau(tau)
    damp = np.exp(-noise.gamma * tau)
    return 0.5 + 0.25 * damp * (np.cos(0.25 * drive.delta * tau**2) + np.cos(_phase(tau, drive)))


def witness_value(tau, drive: DrivingProtocol, noise: NoiseModel):
    """Quantum witness ``|p_+ - p'_+|``, in closed form.

    Equals ``exp(-gamma tau)/4 * |cos(delta tau^2/4) - cos(delta tau^2/2 + omega0 tau)|``.
    """
    tau = _check_tau(tau)
    damp = np.exp(-noise.gamma * tau)
    return 0.25 * damp * np.abs(np.cos(0.25 * drive.delta * tau**2) - np.cos(_phase(tau, drive)))


def coherence_bound(tau, noise: NoiseModel):
    """Half the l1-norm of coherence of the unmeasured state, ``exp(-gamma tau)/2``."""
    tau = _check_tau(tau)
    return 0.5 * np.exp(-noise.gamma * tau)


def witness_bracket(tau, drive: DrivingProtocol):
    """Smooth factor ``sin(delta tau^2/4) - 2 sin(delta tau^2/2 + omega0 tau)``.

    Its zeros in ``delta`` are the stationary-point candidates of the witness.
    Independent of ``gamma``.
    """
    return np.sin(0.25 * drive.delta * tau**2) - 2.0 * np.sin(_phase(tau, drive))


def witness_delta_derivative(tau, drive: DrivingProtocol, noise: NoiseModel):
    """Partial derivative of :func:`witness_value` with respect to ``delta``.

    Where the witness vanishes the sign factor is undefined and 0 is returned
    (those points are minima of ``|.|``).
    """
    tau = _check_tau(tau, strict=True)
    damp = np.exp(-noise.gamma * tau)
    diff = np.cos(0.25 * drive.delta * tau**2) - np.cos(_phase(tau, drive))
    return -(tau**2 / 16.0) * damp * witness_bracket(tau, drive) * np.sign(diff)


def analytic_extrema_zero_omega(
    k: int, tau: float, noise: NoiseModel | None = None
) -> list[ExtremumSolution]:
    """Closed-form stationary points in ``delta`` for ``omega0 = 0``.

    Returns the four families at index ``k``, ordered ``D0, D1, D2, D3``::

        D0 = 8 pi k / tau^2                          (minima, witness = 0)
        D1 = 4 pi (2k + 1) / tau^2                   (maxima, witness = e^{-gamma tau}/2)
        D2 = 4 (2 pi k - arctan sqrt 15) / tau^2     (maxima, witness = 9/32 e^{-gamma tau})
        D3 = 4 (2 pi k + arctan sqrt 15) / tau^2     (maxima, same value)
    """
    tau = float(_check_tau(tau, strict=True))
    noise = noise or NoiseModel()
    k = int(k)
    tau2 = tau * tau
    families = (
        ("D0", 8.0 * math.pi * k / tau2, MINIMUM),
        ("D1", 4.0 * math.pi * (2 * k + 1) / tau2, MAXIMUM),
        ("D2", 4.0 * (2.0 * math.pi * k - ARCTAN_SQRT15) / tau2, MAXIMUM),
        ("D3", 4.0 * (2.0 * math.pi * k + ARCTAN_SQRT15) / tau2, MAXIMUM),
    )
    out = []
    for branch, delta, kind in families:
        value = float(witness_value(tau, DrivingProtocol(0.0, delta), noise))
        out.append(ExtremumSolution(delta, branch, k, kind, value))
    return out


def witness_point(tau: float, drive: DrivingProtocol, noise: NoiseModel) -> WitnessPoint:
    p = float(prob_plus_unmeasured(tau, drive, noise))
    pm = float(prob_plus_measured(tau, drive, noise))
    return WitnessPoint(
        tau=float(tau),
        p_plus=p,
        p_plus_measured=pm,
        value=abs(p - pm),
        bound=float(coherence_bound(tau, noise)),
    )


def witness_from_propagators(tau: float, drive: DrivingProtocol, noise: NoiseModel) -> float:
    """Witness assembled by composing Bloch-vector propagators (no closed form).

    Mirrors the protocol step by step: ``p = (1 + <sigma_x>)/2`` with and without
    the intermediate dephasing of the transverse plane.
    """
    tau = float(_check_tau(tau))
    start: PauliVector = plus_state()
    free = evolve(start, 0.0, tau, drive, noise)
    half = evolve(start, 0.0, tau / 2, drive, noise)
    measured = evolve(measurement_dephasing_x(half), tau / 2, tau, drive, noise)
    return abs(0.5 * (1 + free.x) - 0.5 * (1 + measured.x))
