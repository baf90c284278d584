"""Batch evaluation over (tau, delta) and CSV/JSON serialization.

Grids are row-major with ``tau`` outer and ``delta`` inner, both ascending.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .dynamics import DrivingProtocol, NoiseModel
from .solvers import TARGETS, SearchWindow, find_extrema
from .steering import steering_bound, steering_value
from .witness import ARCTAN_SQRT15, MAXIMUM, coherence_bound, witness_value

__all__ = [
    "DEFAULT_MAX_CELLS",
    "GridSpec",
    "Overlay",
    "SweepGrid",
    "Trace",
    "GridTooLarge",
    "evaluate",
    "bound",
    "trace",
    "grid",
    "overlay_extrema",
    "export",
    "load",
    "to_csv",
    "to_json",
]

DEFAULT_MAX_CELLS = 4_000_000
CSV_COLUMNS = ("tau", "delta", "value", "bound")


class GridTooLarge(ValueError):
    pass


def evaluate(target: str, tau, delta, omega0, gamma):
    """Closed-form ``target`` on broadcast arrays of parameters."""
    drive, noise = DrivingProtocol(omega0, delta), NoiseModel(gamma)
    if target == "witness":
        return witness_value(tau, drive, noise)
    if target == "steering":
        return steering_value(tau, drive, noise)
    raise ValueError(f"target must be one of {TARGETS}, got {target!r}")


def bound(target: str, tau, gamma):
    noise = NoiseModel(gamma)
    if target == "witness":
        return coherence_bound(tau, noise)
    if target == "steering":
        return steering_bound(tau, noise)
    raise ValueError(f"target must be one of {TARGETS}, got {target!r}")


@dataclass(frozen=True)
class GridSpec:
    tau_min: float = 0.05
    tau_max: float = 15.0
    tau_steps: int = 300
    delta_min: float = 0.0
    delta_max: float = 2.0
    delta_steps: int = 300
    omega0: float = 0.0
    gamma: float = 0.1
    target: str = "witness"

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"target must be one of {TARGETS}, got {self.target!r}")
        if not (0 <= self.tau_min < self.tau_max):
            raise ValueError("need 0 <= tau_min < tau_max")
        if not self.delta_min < self.delta_max:
            raise ValueError("need delta_min < delta_max")
        if self.tau_steps < 2 or self.delta_steps < 2:
            raise ValueError("tau_steps and delta_steps must be >= 2")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")

    @property
    def taus(self) -> np.ndarray:
        return np.linspace(self.tau_min, self.tau_max, self.tau_steps)

    @property
    def deltas(self) -> np.ndarray:
        return np.linspace(self.delta_min, self.delta_max, self.delta_steps)

    @property
    def delta_spacing(self) -> float:
        return (self.delta_max - self.delta_min) / (self.delta_steps - 1)


@dataclass
class Overlay:
    """Extremum curve ``delta(tau)``; ``points`` has columns ``(tau, delta)``."""

    branch: str
    k: Optional[int]
    points: np.ndarray

    def to_dict(self):
        return {"branch": self.branch, "k": self.k, "points": self.points.tolist()}


@dataclass
class SweepGrid:
    spec: GridSpec
    values: np.ndarray  # shape (tau_steps, delta_steps)
    bounds: np.ndarray  # shape (tau_steps,)
    overlays: list = field(default_factory=list)


@dataclass
class Trace:
    target: str
    delta: float
    omega0: float
    gamma: float
    tau: np.ndarray
    value: np.ndarray
    bound: np.ndarray


def trace(target: str, taus, delta: float, omega0: float, gamma: float) -> Trace:
    """Time trace of ``target`` at fixed drive, with its coherence bound."""
    taus = np.asarray(taus, dtype=float)
    return Trace(
        target=target,
        delta=float(delta),
        omega0=float(omega0),
        gamma=float(gamma),
        tau=taus,
        value=np.asarray(evaluate(target, taus, delta, omega0, gamma), dtype=float),
        bound=np.asarray(bound(target, taus, gamma), dtype=float),
    )


def grid(spec: GridSpec, max_cells: int = DEFAULT_MAX_CELLS) -> SweepGrid:
    cells = spec.tau_steps * spec.delta_steps
    if cells > max_cells:
        raise GridTooLarge(f"grid has {cells} cells, cap is {max_cells}")
    taus, deltas = spec.taus, spec.deltas
    values = evaluate(spec.target, taus[:, None], deltas[None, :], spec.omega0, spec.gamma)
    return SweepGrid(spec, np.asarray(values, dtype=float), bound(spec.target, taus, spec.gamma))


def _analytic_curves(spec: GridSpec, ks):
    taus = spec.taus
    taus = taus[taus > 0]
    tau2 = taus**2
    if spec.target == "witness":
        families = {
            "D1": lambda k: 4.0 * math.pi * (2 * k + 1) / tau2,
            "D2": lambda k: 4.0 * (2.0 * math.pi * k - ARCTAN_SQRT15) / tau2,
            "D3": lambda k: 4.0 * (2.0 * math.pi * k + ARCTAN_SQRT15) / tau2,
        }
    else:
        families = {"D1": lambda k: (2.0 * k * math.pi - 2.0 * spec.omega0 * taus) / tau2}
    out = []
    for branch, formula in families.items():
        for k in ks:
            d = formula(k)
            keep = (d >= spec.delta_min) & (d <= spec.delta_max)
            out.append(Overlay(branch, int(k), np.column_stack([taus[keep], d[keep]])))
    return out


def overlay_extrema(spec: GridSpec, ks) -> list[Overlay]:
    """Maximum curves ``delta_branch(k, tau)`` clipped to the grid's delta range.

    Closed forms are used for the steering target and for the witness at
    ``omega0 = 0``.  For the witness at ``omega0 != 0`` there is no closed form;
    maxima are located numerically on every grid row and returned as a single
    ``"numeric"`` overlay (``ks`` only needs to be non-empty).
    """
    ks = list(ks)
    if not ks:
        return []
    if spec.target == "steering" or spec.omega0 == 0.0:
        return _analytic_curves(spec, ks)
    pts = []
    for tau in spec.taus[spec.taus > 0]:
        window = SearchWindow(spec.delta_min, spec.delta_max)
        for e in find_extrema("witness", float(tau), spec.omega0, spec.gamma, window):
            if e.kind == MAXIMUM:
                pts.append((tau, e.delta))
    return [Overlay("numeric", None, np.array(pts, dtype=float).reshape(-1, 2))]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _rows(obj):
    if isinstance(obj, SweepGrid):
        for i, tau in enumerate(obj.spec.taus):
            for j, delta in enumerate(obj.spec.deltas):
                yield tau, delta, obj.values[i, j], obj.bounds[i]
    else:
        for tau, value, b in zip(obj.tau, obj.value, obj.bound):
            yield tau, obj.delta, value, b


def to_csv(obj) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in _rows(obj):
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def to_json(obj) -> str:
    # json writes floats with repr(), the shortest string that round-trips exactly
    if isinstance(obj, SweepGrid):
        payload = {
            "kind": "grid",
            "spec": asdict(obj.spec),
            "values": obj.values.tolist(),
            "bounds": obj.bounds.tolist(),
            "overlays": [o.to_dict() for o in obj.overlays],
        }
    else:
        payload = {
            "kind": "trace",
            "spec": {
                "target": obj.target,
                "delta": obj.delta,
                "omega0": obj.omega0,
                "gamma": obj.gamma,
            },
            "tau": obj.tau.tolist(),
            "values": obj.value.tolist(),
            "bounds": obj.bound.tolist(),
        }
    return json.dumps(payload, indent=1) + "\n"


def export(obj, fmt: str, path) -> Path:
    """Write a :class:`SweepGrid` or :class:`Trace` as ``csv`` or ``json``."""
    fmt = fmt.lower()
    if fmt == "csv":
        text = to_csv(obj)
    elif fmt == "json":
        text = to_json(obj)
    else:
        raise ValueError(f"format must be 'csv' or 'json', got {fmt!r}")
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"could not write {path}: {exc}") from exc
    return path


def load(path):
    """Read back a JSON export as a :class:`SweepGrid` or :class:`Trace`,
    or a CSV export as an ``(n, 4)`` array of ``tau, delta, value, bound``."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"could not read {path}: {exc}") from exc
    if path.suffix.lower() == ".csv":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if tuple(header) != CSV_COLUMNS:
            raise ValueError(f"{path}: unexpected CSV header {header}")
        return np.array([[float(x) for x in row] for row in reader], dtype=float).reshape(-1, 4)
    payload = json.loads(text)
    if payload["kind"] == "grid":
        overlays = [
            Overlay(o["branch"], o["k"], np.array(o["points"], dtype=float).reshape(-1, 2))
            for o in payload["overlays"]
        ]
        return SweepGrid(
            GridSpec(**payload["spec"]),
            np.array(payload["values"], dtype=float),
            np.array(payload["bounds"], dtype=float),
            overlays,
        )
    spec = payload["spec"]
    return Trace(
        target=spec["target"],
        delta=spec["delta"],
        omega0=spec["omega0"],
        gamma=spec["gamma"],
        tau=np.array(payload["tau"], dtype=float),
        value=np.array(payload["values"], dtype=float),
        bound=np.array(payload["bounds"], dtype=float),
    )
