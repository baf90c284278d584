"""Command-line front end: ``drivenqubit {trace,grid,extrema,tailor,verify}``.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O error.
Options may also come from a ``key = value`` file given with ``--config``;
flags on the command line win.  Relative ``--output`` paths are resolved
against ``$DRIVENQUBIT_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import sweep
from .oracle import IntegratorConfig, StepBudgetExceeded, steering_oracle_many, witness_oracle_many
from .solvers import TARGETS, SearchWindow, SolverError, find_extrema, tailor

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3
OUTPUT_DIR_ENV = "DRIVENQUBIT_OUTPUT_DIR"

# verify sampler ranges: tau in (0, 15], delta in [-2, 2], omega0 in [0, 2], gamma in [0, 0.3]
VERIFY_RANGES = {"tau": (0.0, 15.0), "delta": (-2.0, 2.0), "omega0": (0.0, 2.0), "gamma": (0.0, 0.3)}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_config(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment.  Keys use underscores."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _physics(p):
    p.add_argument("--omega0", type=float, default=1.0, help="bare level splitting omega0 [rad/time] (default 1)")
    p.add_argument("--gamma", type=float, default=0.0, help="dephasing rate gamma [1/time], >= 0 (default 0)")


def _target(p):
    p.add_argument("--target", choices=TARGETS, default="witness", help="quantity to evaluate (default witness)")


def _output(p, formats=("json",)):
    p.add_argument("--output", "-o", default=None, help="output file path (default: stdout)")
    p.add_argument("--format", choices=formats, default="json", help="output format (default json)")


def _window(p):
    p.add_argument("--delta-min", type=float, default=None, help="search window lower edge [rad/time^2] (default -12 pi/tau^2)")
    p.add_argument("--delta-max", type=float, default=None, help="search window upper edge [rad/time^2] (default +12 pi/tau^2)")
    p.add_argument("--scan-points", type=int, default=2048, help="scan grid size [count] (default 2048)")
    p.add_argument("--root-tol", type=float, default=1e-10, help="bisection tolerance on delta [rad/time^2] (default 1e-10)")
    p.add_argument("--max-iterations", type=int, default=200, help="bisection iteration cap [count] (default 200)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="drivenqubit", description=__doc__.splitlines()[0])
    parser.add_argument("--config", default=None, help="key = value file supplying default option values")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("trace", help="time trace at fixed chirp rate")
    _target(p)
    p.add_argument("--tau-min", type=float, default=0.0, help="first time [time] (default 0)")
    p.add_argument("--tau-max", type=float, default=15.0, help="last time [time] (default 15)")
    p.add_argument("--tau-steps", type=int, default=301, help="number of time samples [count] (default 301)")
    p.add_argument("--delta", type=float, default=0.0, help="chirp rate delta [rad/time^2] (default 0)")
    _physics(p)
    _output(p, ("json", "csv"))

    p = sub.add_parser("grid", help="(tau, delta) density grid")
    _target(p)
    p.add_argument("--tau-min", type=float, default=0.05, help="first time [time] (default 0.05)")
    p.add_argument("--tau-max", type=float, default=15.0, help="last time [time] (default 15)")
    p.add_argument("--tau-steps", type=int, default=300, help="time samples [count] (default 300)")
    p.add_argument("--delta-min", type=float, default=0.0, help="first chirp rate [rad/time^2] (default 0)")
    p.add_argument("--delta-max", type=float, default=2.0, help="last chirp rate [rad/time^2] (default 2)")
    p.add_argument("--delta-steps", type=int, default=300, help="chirp samples [count] (default 300)")
    p.add_argument("--overlay-k-min", type=int, default=None, help="first branch index k for extremum overlays")
    p.add_argument("--overlay-k-max", type=int, default=None, help="last branch index k for extremum overlays")
    p.add_argument("--max-cells", type=int, default=sweep.DEFAULT_MAX_CELLS, help="refuse grids larger than this [count]")
    _physics(p)
    _output(p, ("json", "csv"))

    p = sub.add_parser("extrema", help="stationary points in delta at fixed tau")
    _target(p)
    p.add_argument("--tau", type=float, required=True, help="evaluation time tau > 0 [time]")
    _physics(p)
    _window(p)
    _output(p)

    p = sub.add_parser("tailor", help="chirp rate maximizing the target at tau")
    _target(p)
    p.add_argument("--tau", type=float, required=True, help="target time tau* > 0 [time]")
    _physics(p)
    _window(p)
    _output(p)

    p = sub.add_parser("verify", help="compare closed forms against the density-matrix oracle")
    p.add_argument("--samples", type=int, default=200, help="random parameter tuples [count] (default 200)")
    p.add_argument("--seed", type=int, default=7, help="sampler seed (default 7)")
    p.add_argument("--step", type=float, default=1e-3, help="RK4 step size [time] (default 1e-3)")
    p.add_argument("--tol", type=float, default=1e-6, help="max allowed absolute deviation (default 1e-6)")
    _output(p)
    return parser


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    sub_action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for sp in sub_action.choices.values():
        converted = {}
        for action in sp._actions:
            if action.dest in values:
                raw = values[action.dest]
                conv = action.type or str
                try:
                    converted[action.dest] = conv(raw)
                except ValueError as exc:
                    raise UsageError(f"config key {action.dest}: {exc}") from exc
                if action.choices is not None and converted[action.dest] not in action.choices:
                    raise UsageError(f"config key {action.dest}: {raw!r} not in {action.choices}")
                action.required = False
        sp.set_defaults(**converted)


def _resolve_output(path):
    if path is None:
        return None
    path = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _emit(text: str, args):
    path = _resolve_output(args.output)
    if path is None:
        sys.stdout.write(text)
        return
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"could not write {path}: {exc}") from exc


def _dump(payload) -> str:
    return json.dumps(payload, indent=1) + "\n"


def _check_physics(args, need_tau=False):
    if not math.isfinite(args.gamma) or args.gamma < 0:
        raise UsageError(f"--gamma must be >= 0, got {args.gamma}")
    if not math.isfinite(args.omega0):
        raise UsageError("--omega0 must be finite")
    if need_tau and not (math.isfinite(args.tau) and args.tau > 0):
        raise UsageError(f"--tau must be > 0, got {args.tau}")


def _search_window(args):
    default = SearchWindow.default(args.tau)
    try:
        return SearchWindow(
            default.delta_min if args.delta_min is None else args.delta_min,
            default.delta_max if args.delta_max is None else args.delta_max,
            scan_points=args.scan_points,
            root_tol=args.root_tol,
            max_iterations=args.max_iterations,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cmd_trace(args):
    _check_physics(args)
    if args.tau_steps < 2 or not 0 <= args.tau_min < args.tau_max:
        raise UsageError("need 0 <= tau-min < tau-max and tau-steps >= 2")
    taus = np.linspace(args.tau_min, args.tau_max, args.tau_steps)
    tr = sweep.trace(args.target, taus, args.delta, args.omega0, args.gamma)
    _emit(sweep.to_csv(tr) if args.format == "csv" else sweep.to_json(tr), args)
    return EXIT_OK


def _cmd_grid(args):
    _check_physics(args)
    try:
        spec = sweep.GridSpec(
            args.tau_min, args.tau_max, args.tau_steps,
            args.delta_min, args.delta_max, args.delta_steps,
            args.omega0, args.gamma, args.target,
        )
        g = sweep.grid(spec, max_cells=args.max_cells)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.overlay_k_min is not None or args.overlay_k_max is not None:
        k_min = args.overlay_k_min if args.overlay_k_min is not None else 0
        k_max = args.overlay_k_max if args.overlay_k_max is not None else k_min
        g.overlays = sweep.overlay_extrema(spec, range(k_min, k_max + 1))
    _emit(sweep.to_csv(g) if args.format == "csv" else sweep.to_json(g), args)
    return EXIT_OK


def _cmd_extrema(args):
    _check_physics(args, need_tau=True)
    found = find_extrema(args.target, args.tau, args.omega0, args.gamma, _search_window(args))
    _emit(_dump({"target": args.target, "tau": args.tau, "omega0": args.omega0,
                 "gamma": args.gamma, "extrema": [asdict(e) for e in found]}), args)
    return EXIT_OK


def _cmd_tailor(args):
    _check_physics(args, need_tau=True)
    res = tailor(args.target, args.tau, args.omega0, args.gamma, _search_window(args))
    payload = {"target": args.target, "tau": args.tau, "omega0": args.omega0, "gamma": args.gamma}
    payload.update(asdict(res))
    _emit(_dump(payload), args)
    return EXIT_OK


def verify_samples(samples: int, seed: int):
    """Seeded parameter tuples ``(tau, delta, omega0, gamma)`` for oracle checks."""
    rng = np.random.default_rng(seed)
    lo, hi = VERIFY_RANGES["tau"]
    # uniform on (0, 15]: reflect the half-open [0, 15) draw
    tau = hi - rng.uniform(lo, hi, samples)
    delta = rng.uniform(*VERIFY_RANGES["delta"], samples)
    omega0 = rng.uniform(*VERIFY_RANGES["omega0"], samples)
    gamma = rng.uniform(*VERIFY_RANGES["gamma"], samples)
    return tau, delta, omega0, gamma


def run_verify(samples=200, seed=7, step=1e-3, tol=1e-6) -> dict:
    tau, delta, omega0, gamma = verify_samples(samples, seed)
    cfg = IntegratorConfig(step=step)
    report = {"samples": samples, "seed": seed, "step": step, "tol": tol}
    for name, oracle in (("witness", witness_oracle_many), ("steering", steering_oracle_many)):
        ref = oracle(tau, delta, omega0, gamma, cfg)
        if name == "witness":
            ref = ref[2]
        closed = sweep.evaluate(name, tau, delta, omega0, gamma)
        dev = np.abs(closed - ref)
        i = int(np.argmax(dev))
        report[name] = {
            "max_deviation": float(dev[i]),
            "worst_case": {"tau": float(tau[i]), "delta": float(delta[i]),
                           "omega0": float(omega0[i]), "gamma": float(gamma[i])},
        }
    report["passed"] = all(report[n]["max_deviation"] < tol for n in TARGETS)
    return report


def _cmd_verify(args):
    if args.samples < 1 or not args.step > 0 or not args.tol > 0:
        raise UsageError("--samples >= 1, --step > 0 and --tol > 0 required")
    report = run_verify(args.samples, args.seed, args.step, args.tol)
    _emit(_dump(report), args)
    if not report["passed"]:
        worst = max(TARGETS, key=lambda n: report[n]["max_deviation"])
        print(
            f"verify: {worst} deviates by {report[worst]['max_deviation']:.3e} > {args.tol:.1e}",
            file=sys.stderr,
        )
        return EXIT_NUMERIC
    return EXIT_OK


COMMANDS = {
    "trace": _cmd_trace,
    "grid": _cmd_grid,
    "extrema": _cmd_extrema,
    "tailor": _cmd_tailor,
    "verify": _cmd_verify,
}


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        print(f"drivenqubit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, StepBudgetExceeded) as exc:
        print(f"drivenqubit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"drivenqubit: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
