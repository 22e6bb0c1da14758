"""Parameter sweeps and critical-value searches over the response and concurrence.

Predicates behind ``find_critical`` (grids frozen in ``PREDICATE_DEFAULTS``):

accel_monotonicity
    P(R) sampled at R = 10 k / 400, k = 1..400, has no interior local maximum.
    True above the critical acceleration.
dz_intersection
    P(a; R=0.02) - P(a; R=2.00) changes sign somewhere on a log grid of 400
    accelerations in [1e-3, 40]. Differences below 1e-12 are noise and are
    ignored. True below the critical boundary distance.
omega_intersection
    The same sign-change test at a far boundary (dz = 10 by default), used
    with the gap as the threshold axis. True above the critical gap.
circ_uniform_crossing
    Root in a of P_uniform(a) - P_circular(a; R) at fixed (Omega, dz).
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy.optimize import brentq

from .entanglement import PairConfig, harvest_pair
from .errors import ConfigError, NoTransitionInInterval, UDWError
from .kinematics import DetectorSpec, UniformKinematics, derive_circular
from .quadrature import QuadratureBudget
from .response import transition_circular, transition_uniform

CSV_HEADER = ["a_sigma", "R_sigma", "Omega_sigma", "dz_sigma", "dd_sigma", "traj",
              "P_A", "P_B", "absX", "concurrence", "err_est", "error"]

AXES = {
    "a_sigma": "a_sigma",
    "R_over_sigma": "R_sigma",
    "Omega_sigma": "Omega_sigma",
    "dz_over_sigma": "dz_sigma",
    "dd_over_sigma": "dd_sigma",
}

PREDICATE_DEFAULTS = {
    "n_points": 400,
    "R_max": 10.0,
    "a_min": 1e-3,
    "a_max": 40.0,
    "R_pair": (0.02, 2.00),
    "far_dz": 10.0,
    "noise_floor": 1e-12,
}

# Differences of O(1e-10) between two responses need tighter quadrature.
TIGHT_BUDGET = QuadratureBudget(abs_tol=1e-15, rel_tol=1e-13)


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    start: float
    stop: float
    steps: int
    fixed: dict = field(default_factory=dict)
    trajectory: str = "circular"
    quantity: str = "probability"
    pb_boundary: str = "dz-plus-dd"
    log_spacing: bool = False

    def __post_init__(self):
        if self.log_spacing and not self.start > 0:
            raise ConfigError("log spacing needs a positive start")
        if self.axis not in AXES:
            raise ConfigError(f"unknown sweep axis {self.axis!r}; choose from {sorted(AXES)}")
        if not self.start < self.stop:
            raise ConfigError("sweep needs start < stop")
        if self.steps < 2:
            raise ConfigError("sweep needs at least 2 steps")
        if self.trajectory not in ("circular", "uniform", "both"):
            raise ConfigError(f"unknown trajectory {self.trajectory!r}")
        if self.quantity not in ("probability", "concurrence"):
            raise ConfigError(f"unknown quantity {self.quantity!r}")
        needed = {"a_sigma", "Omega_sigma", "dz_over_sigma"}
        if self.trajectory != "uniform":
            needed.add("R_over_sigma")
        if self.quantity == "concurrence":
            needed.add("dd_over_sigma")
        missing = sorted(needed - set(self.fixed) - {self.axis})
        if missing:
            raise ConfigError(f"fixed parameters missing: {', '.join(missing)}")

    def grid(self) -> np.ndarray:
        if self.log_spacing:
            return np.geomspace(self.start, self.stop, self.steps)
        return np.linspace(self.start, self.stop, self.steps)

    def points(self) -> list[dict]:
        out = []
        trajs = ("circular", "uniform") if self.trajectory == "both" else (self.trajectory,)
        for x in self.grid():
            params = dict(self.fixed)
            params[self.axis] = float(x)
            for traj in trajs:
                out.append({**params, "trajectory": traj})
        return out


def _fmt(x) -> str:
    return "" if x is None else repr(float(x))


def evaluate_point(params: dict, quantity: str, budget: QuadratureBudget,
                   pb_boundary: str = "dz-plus-dd") -> dict:
    """One CSV row (as a dict of strings); numerical failures land in ``error``."""
    traj = params["trajectory"]
    R = params.get("R_over_sigma") if traj == "circular" else None
    row = {
        "a_sigma": _fmt(params["a_sigma"]),
        "R_sigma": _fmt(R),
        "Omega_sigma": _fmt(params["Omega_sigma"]),
        "dz_sigma": _fmt(params["dz_over_sigma"]),
        "dd_sigma": _fmt(params.get("dd_over_sigma")),
        "traj": traj,
        "P_A": "", "P_B": "", "absX": "", "concurrence": "", "err_est": "", "error": "",
    }
    try:
        if quantity == "probability":
            det = DetectorSpec(params["Omega_sigma"])
            if traj == "circular":
                res = transition_circular(
                    derive_circular(params["a_sigma"], R, params["dz_over_sigma"]), det, budget)
            else:
                res = transition_uniform(
                    UniformKinematics(params["a_sigma"], params["dz_over_sigma"]), det, budget)
            row["P_A"] = _fmt(res.p_over_lambda2)
            row["err_est"] = _fmt(res.err_est)
        else:
            cfg = PairConfig(traj, params["a_sigma"], params["Omega_sigma"],
                             params["dz_over_sigma"], params["dd_over_sigma"], R, pb_boundary)
            res = harvest_pair(cfg, budget)
            row.update(P_A=_fmt(res.p_a), P_B=_fmt(res.p_b), absX=_fmt(res.abs_x),
                       concurrence=_fmt(res.concurrence), err_est=_fmt(res.err_est))
    except (UDWError, ValueError, ArithmeticError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}".replace("\n", " ")
    return row


def _evaluate_star(args):
    return evaluate_point(*args)


def run_sweep(spec: SweepSpec, budget: QuadratureBudget | None = None,
              workers: int = 1) -> list[dict]:
    """Evaluate every grid point; rows come back in axis order whatever the worker count."""
    budget = budget or QuadratureBudget()
    jobs = [(p, spec.quantity, budget, spec.pb_boundary) for p in spec.points()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_evaluate_star, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_evaluate_star(j) for j in jobs]


def write_csv(rows: Iterable[dict], stream=None) -> str | None:
    """Write rows under the fixed header; returns the text when no stream is given."""
    own = stream is None
    stream = io.StringIO() if own else stream
    writer = csv.DictWriter(stream, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return stream.getvalue() if own else None


# ---------------------------------------------------------------- critical values

@dataclass(frozen=True)
class CriticalQuery:
    kind: str
    fixed: dict
    search_interval: tuple
    tolerance: float = 0.01
    n_points: int = PREDICATE_DEFAULTS["n_points"]

    def __post_init__(self):
        if self.kind not in PREDICATES and self.kind != "circ_uniform_crossing":
            raise ConfigError(f"unknown critical kind {self.kind!r}")
        lo, hi = self.search_interval
        if not 0 < lo < hi:
            raise ConfigError("search interval must be positive and ordered")
        if not self.tolerance > 0:
            raise ConfigError("tolerance must be positive")


@dataclass(frozen=True)
class CriticalResult:
    value: float
    bracket: tuple
    evaluations: int
    diagnostics: dict


def _circ_p(a, R, Om, dz, budget):
    return transition_circular(derive_circular(a, R, dz), DetectorSpec(Om), budget).p_over_lambda2


def has_interior_peak(values, noise=0.0) -> bool:
    v = np.asarray(values)
    mid = v[1:-1]
    return bool(np.any((mid > v[:-2] + noise) & (mid > v[2:] + noise)))


def has_sign_change(values, floor) -> bool:
    v = np.asarray(values)
    v = v[np.abs(v) > floor]
    return bool(v.size > 1 and np.any(np.sign(v[:-1]) != np.sign(v[1:])))


def accel_monotone(a, fixed, n_points, budget) -> bool:
    Rs = PREDICATE_DEFAULTS["R_max"] * np.arange(1, n_points + 1) / n_points
    P = [_circ_p(a, R, fixed["Omega_sigma"], fixed["dz_over_sigma"], budget) for R in Rs]
    return not has_interior_peak(P)


def _intersection_exists(Om, dz, n_points, budget) -> bool:
    r1, r2 = PREDICATE_DEFAULTS["R_pair"]
    accels = np.geomspace(PREDICATE_DEFAULTS["a_min"], PREDICATE_DEFAULTS["a_max"], n_points)
    diff = [_circ_p(a, r1, Om, dz, budget) - _circ_p(a, r2, Om, dz, budget) for a in accels]
    return has_sign_change(diff, PREDICATE_DEFAULTS["noise_floor"])


def dz_no_intersection(dz, fixed, n_points, budget) -> bool:
    return not _intersection_exists(fixed["Omega_sigma"], dz, n_points, budget)


def omega_intersection(Om, fixed, n_points, budget) -> bool:
    dz = fixed.get("dz_over_sigma", PREDICATE_DEFAULTS["far_dz"])
    return _intersection_exists(Om, dz, n_points, budget)


# predicate(x) is False below the threshold and True above it
PREDICATES = {
    "accel_monotonicity": (accel_monotone, None),
    "dz_intersection": (dz_no_intersection, TIGHT_BUDGET),
    "omega_intersection": (omega_intersection, TIGHT_BUDGET),
}


def find_critical(query: CriticalQuery, budget: QuadratureBudget | None = None) -> CriticalResult:
    lo, hi = map(float, query.search_interval)
    if query.kind == "circ_uniform_crossing":
        budget = budget or QuadratureBudget()
        f = query.fixed
        det = DetectorSpec(f["Omega_sigma"])
        calls = [0]

        def gap(a):
            calls[0] += 1
            pu = transition_uniform(UniformKinematics(a, f["dz_over_sigma"]), det, budget)
            return pu.p_over_lambda2 - _circ_p(a, f["R_over_sigma"], f["Omega_sigma"],
                                               f["dz_over_sigma"], budget)

        glo, ghi = gap(lo), gap(hi)
        if glo * ghi > 0:
            raise NoTransitionInInterval(
                f"P_uniform - P_circular keeps sign on [{lo}, {hi}] ({glo:.3g}, {ghi:.3g})")
        root = brentq(gap, lo, hi, xtol=query.tolerance)
        return CriticalResult(root, (root - query.tolerance, root + query.tolerance), calls[0],
                              {"gap_at_ends": (glo, ghi)})

    pred, default_budget = PREDICATES[query.kind]
    budget = budget or default_budget or QuadratureBudget()
    at = lambda x: pred(x, query.fixed, query.n_points, budget)  # noqa: E731
    plo, phi = at(lo), at(hi)
    if plo == phi:
        raise NoTransitionInInterval(f"{query.kind} predicate is {plo} at both ends of [{lo}, {hi}]")
    if plo:
        raise NoTransitionInInterval(f"{query.kind} predicate is inverted on [{lo}, {hi}]")
    n = 2
    while hi - lo > 2 * query.tolerance:
        mid = 0.5 * (lo + hi)
        n += 1
        if at(mid):
            hi = mid
        else:
            lo = mid
    return CriticalResult(0.5 * (lo + hi), (lo, hi), n, {"predicate": query.kind})


# ---------------------------------------------------------------- curve shapes

PLATEAU_REL = 0.02


def is_plateau(q_end: float, q_inner: float, rel: float = PLATEAU_REL) -> bool:
    """Stable-value test: |Q(x_max) - Q(0.8 x_max)| < rel * |Q(x_max)|."""
    return abs(q_end - q_inner) < rel * abs(q_end)


def interior_peaks(values, rel_noise: float = 1e-9) -> np.ndarray:
    """Indices of strict interior maxima, ignoring wiggles below rel_noise * max|values|."""
    v = np.asarray(values, dtype=float)
    tol = rel_noise * np.max(np.abs(v))
    # collapse flat runs so that a plateau top counts once
    keep = np.concatenate(([True], np.abs(np.diff(v)) > tol))
    idx = np.nonzero(keep)[0]
    w = v[idx]
    mid = np.nonzero((w[1:-1] > w[:-2] + tol) & (w[1:-1] > w[2:] + tol))[0] + 1
    return idx[mid]


def zero_window(values) -> tuple[int, int] | None:
    """(first, last) index of an interior run of exact zeros bordered by positive values."""
    v = np.asarray(values, dtype=float)
    zeros = np.nonzero(v == 0.0)[0]
    if zeros.size == 0:
        return None
    first, last = int(zeros[0]), int(zeros[-1])
    if first == 0 or last == v.size - 1 or np.any(v[first:last + 1] != 0.0):
        return None
    return first, last


def rises_then_falls_to_zero(values) -> bool:
    v = np.asarray(values, dtype=float)
    top = int(np.argmax(v))
    return 0 < top < v.size - 1 and v[top] > v[0] and v[-1] == 0.0 \
        and bool(np.all(np.diff(v[top:]) <= 0.0))
