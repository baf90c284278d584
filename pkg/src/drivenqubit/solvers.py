"""Locate stationary points in the chirp rate and tailor the drive.

The witness derivative carries a sign factor that jumps where the witness
vanishes, so roots are searched on the smooth bracket factor instead: a dense
scan for sign changes, then plain bisection on each bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import DrivingProtocol, NoiseModel
from .steering import steering_bound, steering_bracket, steering_value
from .witness import (
    ARCTAN_SQRT15,
    MAXIMUM,
    MINIMUM,
    ExtremumSolution,
    coherence_bound,
    witness_bracket,
    witness_value,
)

__all__ = [
    "TARGETS",
    "SearchWindow",
    "TailorResult",
    "SolverError",
    "ConvergenceError",
    "NoMaximumError",
    "bisect",
    "find_extrema",
    "tailor",
]

TARGETS = ("witness", "steering")

# witness values below this count as exact zeros (cusp minima)
_ZERO_WITNESS = 1e-12


class SolverError(RuntimeError):
    pass


class ConvergenceError(SolverError):
    """Bisection did not reach ``root_tol`` within ``max_iterations``."""


class NoMaximumError(SolverError):
    """The search window holds no maximum of the target."""


@dataclass(frozen=True)
class SearchWindow:
    delta_min: float
    delta_max: float
    scan_points: int = 2048
    root_tol: float = 1e-10
    max_iterations: int = 200

    def __post_init__(self):
        if not (math.isfinite(self.delta_min) and math.isfinite(self.delta_max)):
            raise ValueError("window bounds must be finite")
        if not self.delta_min < self.delta_max:
            raise ValueError(
                f"delta_min must be < delta_max, got [{self.delta_min}, {self.delta_max}]"
            )
        if self.scan_points < 2:
            raise ValueError("scan_points must be >= 2")
        if not self.root_tol > 0:
            raise ValueError("root_tol must be > 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")

    @classmethod
    def default(cls, tau: float, **kwargs) -> SearchWindow:
        """``[-12 pi / tau^2, 12 pi / tau^2]``, three witness periods either side of 0."""
        half = 12.0 * math.pi / tau**2
        return cls(-half, half, **kwargs)

    @property
    def scan_step(self) -> float:
        return (self.delta_max - self.delta_min) / (self.scan_points - 1)


@dataclass(frozen=True)
class TailorResult:
    delta_star: float
    target_value: float
    bound_value: float
    saturation_ratio: float
    all_extrema: list = field(default_factory=list)


def _target_functions(target, tau, omega0, gamma):
    noise = NoiseModel(gamma)
    if target == "witness":
        value = lambda d: witness_value(tau, DrivingProtocol(omega0, d), noise)
        bracket = lambda d: witness_bracket(tau, DrivingProtocol(omega0, d))
        bound = float(coherence_bound(tau, noise))
    elif target == "steering":
        value = lambda d: steering_value(tau, DrivingProtocol(omega0, d), noise)
        bracket = lambda d: steering_bracket(tau, DrivingProtocol(omega0, d))
        bound = float(steering_bound(tau, noise))
    else:
        raise ValueError(f"target must be one of {TARGETS}, got {target!r}")
    return value, bracket, bound


def bisect(f, lo: float, hi: float, tol: float, max_iterations: int = 200) -> float:
    """Root of ``f`` in ``[lo, hi]``; ``f(lo)`` and ``f(hi)`` must differ in sign."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iterations):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid in (lo, hi):
            return mid
        fmid = f(mid)
        if fmid == 0:
            return mid
        if np.sign(fmid) == np.sign(flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    if hi - lo <= tol:
        return 0.5 * (lo + hi)
    raise ConvergenceError(
        f"bisection stalled at width {hi - lo:.3e} > {tol:.3e} after {max_iterations} iterations"
    )


def _label(target, delta, tau, omega0):
    """Attach an analytic family label where a closed form exists."""
    if target == "steering":
        n = round((delta * tau**2 + 2.0 * omega0 * tau) / math.pi)
        return ("D1", n // 2) if n % 2 == 0 else ("D0", (n - 1) // 2)
    if omega0 != 0.0:
        return "numeric", None
    u = 0.25 * delta * tau**2
    n = round(u / math.pi)
    if abs(u - n * math.pi) < 1e-6:
        return ("D0", n // 2) if n % 2 == 0 else ("D1", (n - 1) // 2)
    m2 = round((u + ARCTAN_SQRT15) / (2.0 * math.pi))
    if abs(u - (2.0 * math.pi * m2 - ARCTAN_SQRT15)) < 1e-6:
        return "D2", m2
    m3 = round((u - ARCTAN_SQRT15) / (2.0 * math.pi))
    return "D3", m3


def find_extrema(
    target: str,
    tau: float,
    omega0: float,
    gamma: float,
    window: SearchWindow | None = None,
) -> list[ExtremumSolution]:
    """All stationary points of ``target`` in ``delta`` inside ``window``, sorted by ``delta``.

    Returns an empty list when the bracket factor never changes sign in the
    window; raises :class:`ConvergenceError` if a bracket cannot be refined.
    """
    if not (math.isfinite(tau) and tau > 0):
        raise ValueError(f"tau must be > 0, got {tau}")
    window = window or SearchWindow.default(tau)
    value, bracket, _ = _target_functions(target, tau, omega0, gamma)
    grid = np.linspace(window.delta_min, window.delta_max, window.scan_points)
    g = bracket(grid)
    h = window.scan_step

    roots = []
    for i in range(len(grid)):
        if g[i] == 0.0:
            roots.append(float(grid[i]))
        elif i + 1 < len(grid) and g[i + 1] != 0.0 and np.sign(g[i]) != np.sign(g[i + 1]):
            roots.append(
                bisect(
                    lambda d: float(bracket(d)),
                    float(grid[i]),
                    float(grid[i + 1]),
                    window.root_tol,
                    window.max_iterations,
                )
            )

    out = []
    for r in roots:
        v = float(value(r))
        left, right = float(value(r - h)), float(value(r + h))
        if target == "witness" and v < _ZERO_WITNESS:
            kind = MINIMUM
        elif left <= v and right <= v:
            kind = MAXIMUM
        elif left >= v and right >= v:
            kind = MINIMUM
        else:
            # shoulder: fall back on the slope change across the root
            kind = MAXIMUM if (v - left) > (right - v) else MINIMUM
        branch, k = _label(target, r, tau, omega0)
        out.append(ExtremumSolution(r, branch, k, kind, v))
    return out


def tailor(
    target: str,
    tau_star: float,
    omega0: float,
    gamma: float,
    window: SearchWindow | None = None,
) -> TailorResult:
    """Chirp rate that maximizes ``target`` at time ``tau_star`` within ``window``.

    Among equal-valued maxima (relative tolerance 1e-9 of the bound) the
    weakest drive, smallest ``|delta|``, wins; an exact ``+/-`` tie goes to the
    positive chirp.
    """
    window = window or SearchWindow.default(tau_star)
    extrema = find_extrema(target, tau_star, omega0, gamma, window)
    maxima = [e for e in extrema if e.kind == MAXIMUM]
    if not maxima:
        raise NoMaximumError(
            f"no {target} maximum for tau={tau_star} in the search window"
        )
    _, _, bound = _target_functions(target, tau_star, omega0, gamma)
    tie = 1e-9 * bound
    best_value = max(e.value for e in maxima)
    candidates = [e for e in maxima if e.value >= best_value - tie]
    weakest = min(abs(e.delta) for e in candidates)
    candidates = [e for e in candidates if abs(e.delta) <= weakest + 10 * window.root_tol]
    best = max(candidates, key=lambda e: e.delta)
    return TailorResult(
        delta_star=best.delta,
        target_value=best.value,
        bound_value=bound,
        saturation_ratio=best.value / bound if bound > 0 else 0.0,
        all_extrema=extrema,
    )
