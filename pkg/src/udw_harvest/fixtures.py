"""Frozen reference grid: oracle values for every fast-path operation.

``generate`` runs the brute-force oracle on each case and writes a CSV.
``replay`` recomputes the same cases with the reduced formulas and reports
the relative deviation from the stored values.
"""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass
from pathlib import Path

from .correlation import x_comoving_circular, x_sync_two_radii, x_uniform_pair
from .kinematics import (DetectorSpec, PairGeometry, PairKind, UniformKinematics,
                         circular_from_omega, derive_circular)
from .oracle import (CircularWorldline, EpsilonLadder, UniformWorldline, oracle_transition,
                     oracle_x)
from .response import transition_circular, transition_uniform

FIXTURE_PATH = Path(__file__).resolve().parents[2] / "fixtures" / "oracle_v1.csv"

# four rungs and a cubic fit: ~1e-9 relative on the validation points
FIXTURE_LADDER = EpsilonLadder(eps_values=(1e-2, 5e-3, 2.5e-3, 1.25e-3), extrapolation_order=3)

COLUMNS = ["case_id", "op", "a_sigma", "R_sigma", "omega_sigma", "R_B_sigma", "omega_B_sigma",
           "Omega_sigma", "dz_sigma", "dd_sigma", "value_re", "value_im", "oracle_increment",
           "eps_ladder_hash"]

OPS = ("transition_circular", "transition_uniform", "x_comoving_circular",
       "x_sync_two_radii", "x_uniform_pair")

GAPS = (0.1, 0.5, 1.0)


@dataclass(frozen=True)
class Case:
    case_id: str
    op: str
    Omega_sigma: float
    dz_sigma: float
    a_sigma: float | None = None
    R_sigma: float | None = None
    omega_sigma: float | None = None
    R_B_sigma: float | None = None
    omega_B_sigma: float | None = None
    dd_sigma: float | None = None

    def params(self) -> dict:
        return {k: getattr(self, k) for k in COLUMNS[2:10]}


def cases() -> list[Case]:
    out = []
    for i, (a, R, dz) in enumerate(itertools.product((0.5, 1.0, 2.0), (0.5, 1.0, 2.0),
                                                     (0.2, 0.5, 1.0))):
        out.append(Case(f"tc{i:02d}", "transition_circular", GAPS[i % 3], dz, a_sigma=a, R_sigma=R))
    for i, (a, dz, Om) in enumerate(itertools.product((0.5, 1.0, 3.0), (0.2, 0.5, 1.0), GAPS)):
        out.append(Case(f"tu{i:02d}", "transition_uniform", Om, dz, a_sigma=a))
    for i, (a, dd, dz) in enumerate(itertools.product((0.5, 1.0, 2.0), (0.2, 0.5, 1.0),
                                                      (0.2, 1.0, 3.0))):
        out.append(Case(f"xc{i:02d}", "x_comoving_circular", 0.1, dz, a_sigma=a, R_sigma=1.0,
                        dd_sigma=dd))
    for i, (rb, dd, dz) in enumerate(itertools.product((1.25, 1.5, 2.0), (0.2, 0.5, 1.0),
                                                       (0.2, 0.5, 1.0))):
        out.append(Case(f"xs{i:02d}", "x_sync_two_radii", GAPS[i % 3], dz, R_sigma=1.0,
                        omega_sigma=0.4, R_B_sigma=rb, omega_B_sigma=0.4, dd_sigma=dd))
    for i, (a, dd, dz) in enumerate(itertools.product((0.5, 1.0, 2.0), (0.2, 0.5, 1.0),
                                                      (0.2, 1.0, 3.0))):
        out.append(Case(f"xu{i:02d}", "x_uniform_pair", 0.1, dz, a_sigma=a, dd_sigma=dd))
    # unequal angular velocities: oracle only, kept for the ladder-stability check
    out.append(Case("xg00", "x_general", 0.1, 0.5, R_sigma=1.0, omega_sigma=0.3,
                    R_B_sigma=1.0, omega_B_sigma=0.5, dd_sigma=0.5))
    return out


def oracle_value(case: Case, ladder: EpsilonLadder = FIXTURE_LADDER):
    Om, dz = case.Omega_sigma, case.dz_sigma
    if case.op == "transition_circular":
        return oracle_transition(CircularWorldline.from_accel(case.a_sigma, case.R_sigma, dz),
                                 Om, ladder)
    if case.op == "transition_uniform":
        return oracle_transition(UniformWorldline(case.a_sigma, dz), Om, ladder)
    top = dz + case.dd_sigma
    if case.op == "x_comoving_circular":
        wa = CircularWorldline.from_accel(case.a_sigma, case.R_sigma, dz)
        wb = CircularWorldline.from_accel(case.a_sigma, case.R_sigma, top)
    elif case.op in ("x_sync_two_radii", "x_general"):
        wa = CircularWorldline(case.R_sigma, case.omega_sigma, dz)
        wb = CircularWorldline(case.R_B_sigma, case.omega_B_sigma, top)
    elif case.op == "x_uniform_pair":
        wa, wb = UniformWorldline(case.a_sigma, dz), UniformWorldline(case.a_sigma, top)
    else:
        raise ValueError(f"unknown op {case.op!r}")
    return oracle_x(wa, wb, Om, ladder)


def main_path_value(case: Case) -> complex:
    det = DetectorSpec(case.Omega_sigma)
    dz = case.dz_sigma
    if case.op == "transition_circular":
        return complex(transition_circular(derive_circular(case.a_sigma, case.R_sigma, dz),
                                           det).p_over_lambda2)
    if case.op == "transition_uniform":
        return complex(transition_uniform(UniformKinematics(case.a_sigma, dz), det).p_over_lambda2)
    if case.op == "x_comoving_circular":
        geom = PairGeometry(case.dd_sigma, dz, PairKind.CIRCULAR_COMOVING)
        return x_comoving_circular(derive_circular(case.a_sigma, case.R_sigma, dz), geom,
                                   det).value
    if case.op == "x_sync_two_radii":
        geom = PairGeometry(case.dd_sigma, dz, PairKind.CIRCULAR_SYNC_TWO_RADII)
        ka = circular_from_omega(case.omega_sigma, case.R_sigma, dz)
        kb = circular_from_omega(case.omega_B_sigma, case.R_B_sigma, dz)
        return x_sync_two_radii(ka, kb, geom, det).value
    if case.op == "x_uniform_pair":
        geom = PairGeometry(case.dd_sigma, dz, PairKind.UNIFORM_PAIR)
        return x_uniform_pair(UniformKinematics(case.a_sigma, dz), geom, det).value
    raise ValueError(f"no fast path for {case.op!r}")


def _cell(x) -> str:
    return "" if x is None else repr(float(x))


def generate(path: Path | str = FIXTURE_PATH, ladder: EpsilonLadder = FIXTURE_LADDER,
             only: list[Case] | None = None, log=None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for case in only or cases():
            ov = oracle_value(case, ladder)
            p = case.params()
            w.writerow([case.case_id, case.op] + [_cell(p[k]) for k in COLUMNS[2:10]]
                       + [repr(ov.real), repr(ov.imag), f"{ov.increment:.3e}", ov.ladder_hash])
            fh.flush()
            if log:
                log(f"{case.case_id} {case.op} {ov.value:.12g}")
    return path


def load(path: Path | str = FIXTURE_PATH) -> list[tuple[Case, complex, str]]:
    rows = []
    with Path(path).open() as fh:
        for r in csv.DictReader(fh):
            kw = {k: (float(r[k]) if r[k] else None) for k in COLUMNS[2:10]}
            case = Case(r["case_id"], r["op"], **kw)
            rows.append((case, complex(float(r["value_re"]), float(r["value_im"])),
                         r["eps_ladder_hash"]))
    return rows


@dataclass(frozen=True)
class ReplayRow:
    case_id: str
    op: str
    reference: complex
    computed: complex

    @property
    def rel_error(self) -> float:
        return abs(self.computed - self.reference) / abs(self.reference)


def replay(path: Path | str = FIXTURE_PATH) -> list[ReplayRow]:
    out = []
    for case, ref, _ in load(path):
        if case.op not in OPS:
            continue
        out.append(ReplayRow(case.case_id, case.op, ref, main_path_value(case)))
    return out


def replay_summary(rows: list[ReplayRow]) -> dict:
    summary = {}
    for op in OPS:
        errs = [r.rel_error for r in rows if r.op == op]
        summary[op] = {"count": len(errs), "max_rel_error": max(errs) if errs else math.nan}
    return summary
