"""Brute-force reference path: density-matrix integration of the dephasing
master equation.

Everything here works on explicit 2x2 complex matrices and never touches the
closed-form propagator in :mod:`drivenqubit.dynamics`.  The generator is the
Schroedinger-picture dual of the Heisenberg equation used there::

    drho/dt = -i [H(t), rho] + (gamma / 2) (sigma_z rho sigma_z - rho)

with ``H(t) = (omega0 + delta t) sigma_z / 2``.  Integration is fixed-step
classical RK4.  The batched kernel integrates many independent problems in
lockstep, which is what makes the randomized cross-checks affordable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import DrivingProtocol, NoiseModel

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY",
    "DensityMatrix",
    "IntegratorConfig",
    "StepBudgetExceeded",
    "lindblad_rhs",
    "integrate",
    "integrate_many",
    "nonselective_measure_x",
    "projector_x",
    "witness_oracle",
    "witness_oracle_many",
    "steering_oracle",
    "steering_oracle_many",
    "steering_branches",
]

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


class StepBudgetExceeded(RuntimeError):
    """The requested interval needs more RK4 steps than ``max_steps`` allows."""


@dataclass(frozen=True)
class IntegratorConfig:
    step: float = 1e-3
    max_steps: int = 10_000_000

    def __post_init__(self):
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ValueError(f"step must be positive and finite, got {self.step}")
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps}")

    def steps_for(self, duration: float) -> int:
        n = max(1, math.ceil(duration / self.step - 1e-9))
        if n > self.max_steps:
            raise StepBudgetExceeded(
                f"interval of length {duration} needs {n} steps of {self.step}, "
                f"budget is {self.max_steps}"
            )
        return n


@dataclass(frozen=True)
class DensityMatrix:
    """A qubit state as a 2x2 Hermitian, unit-trace, positive matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=complex)
        if rho.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {rho.shape}")
        if not np.allclose(rho, rho.conj().T, rtol=0.0, atol=1e-12):
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > 1e-12:
            raise ValueError(f"density matrix trace is {np.trace(rho)}, expected 1")
        if np.linalg.eigvalsh(rho).min() < -1e-9:
            raise ValueError("density matrix is not positive semidefinite")
        object.__setattr__(self, "matrix", rho)

    @classmethod
    def from_bloch(cls, x: float, y: float, z: float) -> DensityMatrix:
        return cls(0.5 * (IDENTITY + x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z))

    @classmethod
    def maximally_mixed(cls) -> DensityMatrix:
        return cls(0.5 * IDENTITY)

    def expect(self, axis: str) -> float:
        """Expectation value of ``sigma_axis`` for ``axis`` in ``{"x", "y", "z"}``."""
        return float(np.real(np.trace(_PAULI[axis] @ self.matrix)))

    def bloch(self) -> np.ndarray:
        return np.array([self.expect(a) for a in "xyz"])


def _rhs(rho, t, omega0, delta, gamma):
    # rho: (..., 2, 2); parameters broadcast over the leading axes
    omega = (omega0 + delta * t)[..., None, None]
    h = 0.5 * omega * SIGMA_Z
    comm = h @ rho - rho @ h
    dephase = SIGMA_Z @ rho @ SIGMA_Z - rho
    return -1j * comm + 0.5 * gamma[..., None, None] * dephase


def lindblad_rhs(
    rho: DensityMatrix, t: float, drive: DrivingProtocol, noise: NoiseModel
) -> np.ndarray:
    """Time derivative of ``rho`` under the driven dephasing generator."""
    return _rhs(
        rho.matrix,
        np.asarray(t, dtype=float),
        np.asarray(drive.omega0, dtype=float),
        np.asarray(drive.delta, dtype=float),
        np.asarray(noise.gamma, dtype=float),
    )


def integrate_many(rho0, t0, t1, omega0, delta, gamma, cfg: IntegratorConfig | None = None):
    """RK4-integrate a batch of independent problems in lockstep.

    Parameters
    ----------
    rho0 : array_like, shape (B, 2, 2)
        Initial density matrices.
    t0, t1, omega0, delta, gamma : array_like, shape (B,) or scalar
        Per-problem interval and parameters.
    cfg : IntegratorConfig
        Every problem takes the same number of steps ``n``, chosen so that the
        longest interval uses steps no larger than ``cfg.step``; shorter
        intervals therefore use proportionally smaller steps.

    Returns
    -------
    ndarray, shape (B, 2, 2)
    """
    cfg = cfg or IntegratorConfig()
    rho = np.array(rho0, dtype=complex)
    if rho.ndim == 2:
        rho = rho[None]
    batch = rho.shape[0]
    t0, t1, omega0, delta, gamma = (
        np.broadcast_to(np.asarray(a, dtype=float), (batch,)).copy()
        for a in (t0, t1, omega0, delta, gamma)
    )
    if np.any(t1 < t0):
        raise ValueError("integration requires t0 <= t1")
    duration = float(np.max(t1 - t0)) if batch else 0.0
    if duration == 0.0:
        return rho
    n = cfg.steps_for(duration)
    h = (t1 - t0) / n
    hb = h[:, None, None]
    for i in range(n):
        t = t0 + i * h
        k1 = _rhs(rho, t, omega0, delta, gamma)
        k2 = _rhs(rho + 0.5 * hb * k1, t + 0.5 * h, omega0, delta, gamma)
        k3 = _rhs(rho + 0.5 * hb * k2, t + 0.5 * h, omega0, delta, gamma)
        k4 = _rhs(rho + hb * k3, t + h, omega0, delta, gamma)
        rho = rho + (hb / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = 0.5 * (rho + np.conj(np.swapaxes(rho, -1, -2)))
        rho = rho / np.trace(rho, axis1=-2, axis2=-1).real[:, None, None]
    return rho


def integrate(
    rho0: DensityMatrix,
    t0: float,
    t1: float,
    drive: DrivingProtocol,
    noise: NoiseModel,
    cfg: IntegratorConfig | None = None,
) -> DensityMatrix:
    """Integrate a single state from ``t0`` to ``t1``."""
    if not t0 <= t1:
        raise ValueError(f"integration requires t0 <= t1, got {t0}, {t1}")
    out = integrate_many(
        rho0.matrix, t0, t1, drive.omega0, drive.delta, noise.gamma, cfg
    )
    return DensityMatrix(out[0])


def projector_x(sign: int) -> np.ndarray:
    """``(I + sign * sigma_x) / 2``."""
    return 0.5 * (IDENTITY + sign * SIGMA_X)


def _measure_x(rho):
    p_plus, p_minus = projector_x(+1), projector_x(-1)
    return p_plus @ rho @ p_plus + p_minus @ rho @ p_minus


def nonselective_measure_x(rho: DensityMatrix) -> DensityMatrix:
    """State after a sigma_x measurement whose outcome is discarded."""
    return DensityMatrix(_measure_x(rho.matrix))


def _prob(projector, rho):
    return np.real(np.trace(projector @ rho, axis1=-2, axis2=-1))


def witness_oracle_many(tau, delta, omega0, gamma, cfg=None):
    """Simulate the two-branch witness protocol for a batch of parameter tuples.

    Returns ``(p_plus, p_plus_measured, witness)`` arrays.  The unmeasured branch
    evolves ``|+><+|`` straight to ``tau``; the measured branch stops at
    ``tau / 2``, applies :func:`nonselective_measure_x`, and continues to ``tau``.
    """
    tau, delta, omega0, gamma = np.broadcast_arrays(
        *(np.atleast_1d(np.asarray(a, dtype=float)) for a in (tau, delta, omega0, gamma))
    )
    if np.any(tau < 0):
        raise ValueError("tau must be >= 0")
    b = tau.shape[0]
    plus = np.broadcast_to(projector_x(+1), (b, 2, 2))
    zero = np.zeros(b)
    # stage 1: unmeasured branch to tau, measured branch to tau/2, in one batch
    stage1 = integrate_many(
        np.concatenate([plus, plus]),
        np.concatenate([zero, zero]),
        np.concatenate([tau, tau / 2]),
        np.tile(omega0, 2),
        np.tile(delta, 2),
        np.tile(gamma, 2),
        cfg,
    )
    rho_free = stage1[:b]
    rho_meas = integrate_many(
        _measure_x(stage1[b:]), tau / 2, tau, omega0, delta, gamma, cfg
    )
    p = _prob(projector_x(+1), rho_free)
    p_meas = _prob(projector_x(+1), rho_meas)
    return p, p_meas, np.abs(p - p_meas)


def witness_oracle(
    tau: float,
    drive: DrivingProtocol,
    noise: NoiseModel,
    cfg: IntegratorConfig | None = None,
) -> float:
    """Witness ``|p_+ - p'_+|`` from direct simulation of both protocols."""
    _, _, w = witness_oracle_many(tau, drive.delta, drive.omega0, noise.gamma, cfg)
    return float(w[0])


# Alice's four post-measurement states as (basis, outcome, Bloch vector)
_BRANCHES = (
    ("x", +1, (1.0, 0.0, 0.0)),
    ("x", -1, (-1.0, 0.0, 0.0)),
    ("y", +1, (0.0, 1.0, 0.0)),
    ("y", -1, (0.0, -1.0, 0.0)),
)


def steering_branches(tau, delta, omega0, gamma, cfg=None):
    """Per-branch squared conditional expectations for the N=2 steering protocol.

    Alice measures ``sigma_x`` or ``sigma_y`` on the maximally mixed state, the
    post-measurement state evolves to ``tau``, and Bob measures the same
    observable.  Returns ``(probabilities, squared_expectations)`` of shape
    ``(4, B)`` ordered as ``|+>, |->, |phi+>, |phi->``.
    """
    tau, delta, omega0, gamma = np.broadcast_arrays(
        *(np.atleast_1d(np.asarray(a, dtype=float)) for a in (tau, delta, omega0, gamma))
    )
    if np.any(tau < 0):
        raise ValueError("tau must be >= 0")
    b = tau.shape[0]
    mixed = 0.5 * IDENTITY
    states, probs = [], []
    for axis, outcome, bloch in _BRANCHES:
        proj = 0.5 * (IDENTITY + outcome * _PAULI[axis])
        probs.append(np.full(b, _prob(proj, mixed)))
        states.append(np.broadcast_to(DensityMatrix.from_bloch(*bloch).matrix, (b, 2, 2)))
    final = integrate_many(
        np.concatenate(states),
        0.0,
        np.tile(tau, 4),
        np.tile(omega0, 4),
        np.tile(delta, 4),
        np.tile(gamma, 4),
        cfg,
    ).reshape(4, b, 2, 2)
    squared = np.empty((4, b))
    for i, (axis, _, _) in enumerate(_BRANCHES):
        squared[i] = np.real(np.trace(_PAULI[axis] @ final[i], axis1=-2, axis2=-1)) ** 2
    return np.array(probs), squared


def steering_oracle_many(tau, delta, omega0, gamma, cfg=None):
    """Steering parameter ``S_2`` from direct simulation, batched."""
    probs, squared = steering_branches(tau, delta, omega0, gamma, cfg)
    return np.sum(probs * squared, axis=0)


def steering_oracle(
    tau: float,
    drive: DrivingProtocol,
    noise: NoiseModel,
    cfg: IntegratorConfig | None = None,
) -> float:
    return float(steering_oracle_many(tau, drive.delta, drive.omega0, noise.gamma, cfg)[0])
