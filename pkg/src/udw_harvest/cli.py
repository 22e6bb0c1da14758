"""``udw`` command-line entry point.

Exit status: 0 on success, 2 for configuration problems, 3 for numerical
failures (and, with ``--strict``, for sweeps that recorded any row error).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import fixtures
from .correlation import x_comoving_circular, x_sync_two_radii, x_uniform_pair
from .entanglement import PairConfig, harvest_pair
from .errors import ConfigError, UDWError
from .kinematics import (DetectorSpec, PairGeometry, PairKind, UniformKinematics,
                         circular_from_omega, derive_circular)
from .oracle import CircularWorldline, EpsilonLadder, UniformWorldline, oracle_transition, oracle_x
from .quadrature import QuadratureBudget
from .response import transition_circular, transition_uniform
from .sweep import AXES, CriticalQuery, SweepSpec, find_critical, run_sweep, write_csv

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

PARAM_KEYS = ("a_sigma", "R_over_sigma", "Omega_sigma", "dz_over_sigma", "dd_over_sigma",
              "R_B_over_sigma")
CONFIG_KEYS = set(PARAM_KEYS) | {"trajectory", "quantity", "budget", "kind", "search_interval",
                                 "tolerance"}
BUDGET_KEYS = {"abs_tol", "rel_tol", "max_subdivisions", "pv_window_delta", "truncation_safety"}


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        cfg = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(cfg) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return cfg


def make_budget(cfg: dict, tol: float | None) -> QuadratureBudget:
    raw = dict(cfg.get("budget") or {})
    unknown = set(raw) - BUDGET_KEYS
    if unknown:
        raise ConfigError(f"unknown budget keys: {', '.join(sorted(unknown))}")
    if tol is not None:
        raw["abs_tol"] = tol
    try:
        return QuadratureBudget(**raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad budget: {exc}") from exc


def merged(args) -> dict:
    cfg = load_config(args.config)
    for key in PARAM_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if getattr(args, "traj", None):
        cfg["trajectory"] = args.traj
    cfg.setdefault("trajectory", "circular")
    if cfg["trajectory"] not in ("circular", "uniform", "both"):
        raise ConfigError(f"unknown trajectory {cfg['trajectory']!r}")
    return cfg


def need(cfg: dict, *keys: str) -> list[float]:
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise ConfigError(f"missing parameters: {', '.join(missing)}")
    try:
        return [float(cfg[k]) for k in keys]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"non-numeric parameter: {exc}") from exc


def trajectories(cfg: dict) -> tuple[str, ...]:
    return ("circular", "uniform") if cfg["trajectory"] == "both" else (cfg["trajectory"],)


def parse_range(text: str) -> tuple[float, float, int]:
    try:
        start, stop, steps = text.split(":")
        return float(start), float(stop), int(steps)
    except ValueError as exc:
        raise ConfigError(f"--range expects start:stop:steps, got {text!r}") from exc


def emit(payload, out: str | None):
    text = json.dumps(payload, indent=2, default=str) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ commands

def cmd_prob(args) -> int:
    cfg = merged(args)
    budget = make_budget(cfg, args.tol)
    a, Om, dz = need(cfg, "a_sigma", "Omega_sigma", "dz_over_sigma")
    det = DetectorSpec(Om)
    results = {}
    for traj in trajectories(cfg):
        if traj == "circular":
            (R,) = need(cfg, "R_over_sigma")
            res = transition_circular(derive_circular(a, R, dz), det, budget)
        else:
            res = transition_uniform(UniformKinematics(a, dz), det, budget)
        results[traj] = asdict(res)
    emit(results, args.out)
    return EXIT_OK


def cmd_xterm(args) -> int:
    cfg = merged(args)
    budget = make_budget(cfg, args.tol)
    a, Om, dz, dd = need(cfg, "a_sigma", "Omega_sigma", "dz_over_sigma", "dd_over_sigma")
    det = DetectorSpec(Om)
    results = {}
    for traj in trajectories(cfg):
        if traj == "circular":
            (R,) = need(cfg, "R_over_sigma")
            kin = derive_circular(a, R, dz)
            if cfg.get("R_B_over_sigma") is not None:
                (RB,) = need(cfg, "R_B_over_sigma")
                kb = circular_from_omega(kin.omega, RB, dz)
                res = x_sync_two_radii(kin, kb, PairGeometry(dd, dz, PairKind.CIRCULAR_SYNC_TWO_RADII),
                                       det, budget)
            else:
                res = x_comoving_circular(kin, PairGeometry(dd, dz), det, budget)
        else:
            res = x_uniform_pair(UniformKinematics(a, dz), PairGeometry(dd, dz, PairKind.UNIFORM_PAIR),
                                 det, budget)
        results[traj] = asdict(res)
    emit(results, args.out)
    return EXIT_OK


def cmd_concurrence(args) -> int:
    cfg = merged(args)
    budget = make_budget(cfg, args.tol)
    a, Om, dz, dd = need(cfg, "a_sigma", "Omega_sigma", "dz_over_sigma", "dd_over_sigma")
    results = {}
    for traj in trajectories(cfg):
        R = need(cfg, "R_over_sigma")[0] if traj == "circular" else None
        try:
            pc = PairConfig(traj, a, Om, dz, dd, R, args.pb_boundary)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        results[traj] = asdict(harvest_pair(pc, budget))
    emit(results, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = merged(args)
    budget = make_budget(cfg, args.tol)
    if not args.axis or not args.range:
        raise ConfigError("sweep needs --axis and --range")
    if args.axis not in AXES:
        raise ConfigError(f"unknown axis {args.axis!r}; choose from {sorted(AXES)}")
    start, stop, steps = parse_range(args.range)
    fixed = {k: float(cfg[k]) for k in PARAM_KEYS if cfg.get(k) is not None and k != args.axis}
    spec = SweepSpec(args.axis, start, stop, steps, fixed, cfg["trajectory"],
                     args.quantity or cfg.get("quantity", "probability"), args.pb_boundary,
                     args.log)
    rows = run_sweep(spec, budget, workers=max(1, args.workers))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    failed = sum(1 for r in rows if r["error"])
    if failed:
        print(f"udw: {failed} of {len(rows)} rows recorded errors", file=sys.stderr)
        if args.strict:
            return EXIT_NUMERIC
    return EXIT_OK


def cmd_critical(args) -> int:
    cfg = merged(args)
    kind = args.kind or cfg.get("kind")
    if not kind:
        raise ConfigError("critical needs --kind")
    interval = cfg.get("search_interval")
    if args.interval:
        try:
            interval = tuple(float(x) for x in args.interval.split(":"))
        except ValueError as exc:
            raise ConfigError(f"--interval expects lo:hi, got {args.interval!r}") from exc
    if not interval or len(interval) != 2:
        raise ConfigError("critical needs --interval lo:hi")
    tol = args.tol if args.tol is not None else cfg.get("tolerance", 0.01)
    fixed = {k: float(cfg[k]) for k in PARAM_KEYS if cfg.get(k) is not None}
    query = CriticalQuery(kind, fixed, tuple(interval), float(tol))
    budget = make_budget({k: v for k, v in cfg.items() if k == "budget"}, None) \
        if cfg.get("budget") else None
    res = find_critical(query, budget)
    emit({"kind": kind, "value": res.value, "bracket": list(res.bracket),
          "evaluations": res.evaluations, "diagnostics": res.diagnostics}, args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.generate:
        path = fixtures.generate(args.out or fixtures.FIXTURE_PATH,
                                 log=lambda m: print(m, file=sys.stderr))
        print(path)
        return EXIT_OK
    if args.replay:
        rows = fixtures.replay(args.replay)
        summary = fixtures.replay_summary(rows)
        emit(summary, args.out)
        worst = max(v["max_rel_error"] for v in summary.values())
        return EXIT_NUMERIC if args.strict and worst > 1e-4 else EXIT_OK
    cfg = merged(args)
    a, Om, dz = need(cfg, "a_sigma", "Omega_sigma", "dz_over_sigma")
    results = {}
    for traj in trajectories(cfg):
        if traj == "circular":
            (R,) = need(cfg, "R_over_sigma")
            make = lambda z: CircularWorldline.from_accel(a, R, z)  # noqa: E731
        else:
            make = lambda z: UniformWorldline(a, z)  # noqa: E731
        if args.quantity == "xterm":
            (dd,) = need(cfg, "dd_over_sigma")
            ov = oracle_x(make(dz), make(dz + dd), Om, EpsilonLadder())
        else:
            ov = oracle_transition(make(dz), Om, EpsilonLadder())
        results[traj] = {"value_re": ov.real, "value_im": ov.imag,
                         "increment": ov.increment, "eps_ladder_hash": ov.ladder_hash}
    emit(results, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="udw", description="Detector response and "
                                     "entanglement harvesting near a reflecting plane.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--traj", choices=("circular", "uniform", "both"))
    common.add_argument("--tol", type=float, help="absolute quadrature tolerance")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--pb-boundary", choices=("dz", "dz-plus-dd"), default="dz-plus-dd")
    common.add_argument("--strict", action="store_true")
    for key in PARAM_KEYS:
        common.add_argument(f"--{key.replace('_', '-')}", dest=key, type=float)

    sub.add_parser("prob", parents=[common], help="transition probability").set_defaults(fn=cmd_prob)
    sub.add_parser("xterm", parents=[common], help="nonlocal correlation X").set_defaults(fn=cmd_xterm)
    sub.add_parser("concurrence", parents=[common],
                   help="harvested concurrence").set_defaults(fn=cmd_concurrence)

    p = sub.add_parser("sweep", parents=[common], help="one-axis parameter sweep to CSV")
    p.add_argument("--axis", choices=sorted(AXES))
    p.add_argument("--range", help="start:stop:steps")
    p.add_argument("--quantity", choices=("probability", "concurrence"))
    p.add_argument("--log", action="store_true", help="geometric instead of linear spacing")
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("critical", parents=[common], help="critical-value search")
    p.add_argument("--kind", choices=("accel_monotonicity", "dz_intersection",
                                      "omega_intersection", "circ_uniform_crossing"))
    p.add_argument("--interval", help="lo:hi search interval")
    p.set_defaults(fn=cmd_critical)

    p = sub.add_parser("oracle", parents=[common], help="brute-force reference values")
    p.add_argument("--quantity", choices=("prob", "xterm"), default="prob")
    p.add_argument("--generate", action="store_true", help="regenerate the fixture CSV")
    p.add_argument("--replay", metavar="CSV", help="replay a fixture CSV against the fast path")
    p.set_defaults(fn=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"udw: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        # bad physical inputs (non-positive radius, coincident detectors, ...)
        print(f"udw: config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except UDWError as exc:
        print(f"udw: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
