"""Concurrence of the detector pair from P_A, P_B and |X|."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .correlation import x_comoving_circular, x_uniform_pair
from .errors import NegativeProbability
from .kinematics import (DetectorSpec, PairGeometry, PairKind, UniformKinematics,
                         derive_circular)
from .quadrature import QuadratureBudget
from .response import transition_circular, transition_uniform

__all__ = ["HarvestResult", "PairConfig", "concurrence", "harvest_pair"]

NOISE_FLOOR = 1e-9


def concurrence(p_a: float, p_b: float, abs_x: float) -> float:
    """2 max(0, |X| - sqrt(P_A P_B)), everything per lambda^2.

    Probabilities slightly below zero (quadrature noise, > -1e-9) are
    clamped; anything more negative signals an upstream failure.
    """
    for name, p in (("p_a", p_a), ("p_b", p_b)):
        if p < -NOISE_FLOOR:
            raise NegativeProbability(f"{name} = {p!r} is negative beyond the noise floor")
    if abs_x < 0:
        raise ValueError("abs_x must be non-negative")
    geo = math.sqrt(max(p_a, 0.0) * max(p_b, 0.0))
    return 2.0 * max(0.0, abs_x - geo)


@dataclass(frozen=True)
class HarvestResult:
    p_a: float
    p_b: float
    abs_x: float
    concurrence: float
    err_est: float


@dataclass(frozen=True)
class PairConfig:
    """A detector pair: trajectory family plus (a, R, Omega, dz, dd) in units of sigma.

    ``pb_boundary`` selects the height at which P_B is evaluated: "dz-plus-dd"
    follows the stacked geometry (B sits dd above A), "dz" reuses A's height.
    """

    trajectory: Literal["circular", "uniform"]
    a_sigma: float
    Omega_sigma: float
    dz_sigma: float
    dd_sigma: float
    R_sigma: float | None = None
    pb_boundary: Literal["dz-plus-dd", "dz"] = "dz-plus-dd"

    def __post_init__(self):
        if self.trajectory not in ("circular", "uniform"):
            raise ValueError(f"unknown trajectory {self.trajectory!r}")
        if self.trajectory == "circular" and self.R_sigma is None:
            raise ValueError("circular pairs need R_sigma")
        if self.pb_boundary not in ("dz-plus-dd", "dz"):
            raise ValueError(f"unknown pb_boundary {self.pb_boundary!r}")

    @property
    def dz_b(self) -> float:
        return self.dz_sigma + self.dd_sigma if self.pb_boundary == "dz-plus-dd" else self.dz_sigma


def harvest_pair(config: PairConfig, budget: QuadratureBudget | None = None) -> HarvestResult:
    budget = budget or QuadratureBudget()
    det = DetectorSpec(config.Omega_sigma)
    if config.trajectory == "circular":
        kin_a = derive_circular(config.a_sigma, config.R_sigma, config.dz_sigma)
        pa = transition_circular(kin_a, det, budget)
        pb = transition_circular(kin_a.with_boundary_dist(config.dz_b), det, budget)
        geom = PairGeometry(config.dd_sigma, config.dz_sigma, PairKind.CIRCULAR_COMOVING)
        x = x_comoving_circular(kin_a, geom, det, budget)
    else:
        kin_a = UniformKinematics(config.a_sigma, config.dz_sigma)
        pa = transition_uniform(kin_a, det, budget)
        pb = transition_uniform(kin_a.with_boundary_dist(config.dz_b), det, budget)
        geom = PairGeometry(config.dd_sigma, config.dz_sigma, PairKind.UNIFORM_PAIR)
        x = x_uniform_pair(kin_a, geom, det, budget)
    c = concurrence(pa.p_over_lambda2, pb.p_over_lambda2, x.abs_x_over_lambda2)
    err = 2.0 * (x.err_est + 0.5 * (pa.err_est + pb.err_est))
    return HarvestResult(pa.p_over_lambda2, pb.p_over_lambda2, x.abs_x_over_lambda2, c, err)
