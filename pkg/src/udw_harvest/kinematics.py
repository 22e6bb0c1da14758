"""Detector worldlines: circular motion and uniform (Rindler) acceleration.

All lengths and times are measured in units of the switching width sigma,
so ``accel_a`` is a*sigma, ``radius_R`` is R/sigma and so on.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from scipy.optimize import brentq

from .errors import NonPositiveParameter, RootNotBracketed


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0 or not math.isfinite(value):
            raise NonPositiveParameter(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class CircularKinematics:
    """Circular orbit parallel to the mirror, parameterised by (a, R, dz).

    The speed, Lorentz factor and angular velocity follow from
    a = gamma^2 v^2 / R, i.e. v^2 = aR / (1 + aR).
    """

    radius_R: float
    accel_a: float
    boundary_dist_dz: float
    speed_v: float = field(init=False)
    gamma: float = field(init=False)
    omega: float = field(init=False)

    def __post_init__(self):
        _require_positive(accel_a=self.accel_a, radius_R=self.radius_R,
                          boundary_dist_dz=self.boundary_dist_dz)
        aR = self.accel_a * self.radius_R
        object.__setattr__(self, "speed_v", math.sqrt(aR / (1.0 + aR)))
        object.__setattr__(self, "gamma", math.sqrt(1.0 + aR))
        object.__setattr__(self, "omega", self.speed_v / self.radius_R)

    @property
    def alpha(self) -> float:
        """Gaussian envelope rate R/a (equal to 1/(omega gamma)^2)."""
        return self.radius_R / self.accel_a

    @property
    def alpha_from_omega(self) -> float:
        return 1.0 / (self.omega * self.gamma) ** 2

    def beta(self, gap_Omega: float) -> float:
        """Frequency of the cosine factor in the reduced response integrals."""
        return 2.0 * gap_Omega / (self.gamma * self.omega)

    @property
    def beta_per_Omega(self) -> float:
        return 2.0 / (self.gamma * self.omega)

    @property
    def K_per_lambda2(self) -> float:
        return self.speed_v ** 2 * self.gamma * self.omega / (4.0 * math.pi ** 1.5)

    def with_boundary_dist(self, dz: float) -> "CircularKinematics":
        return CircularKinematics(self.radius_R, self.accel_a, dz)


@dataclass(frozen=True)
class UniformKinematics:
    accel_a: float
    boundary_dist_dz: float

    def __post_init__(self):
        _require_positive(accel_a=self.accel_a, boundary_dist_dz=self.boundary_dist_dz)

    def with_boundary_dist(self, dz: float) -> "UniformKinematics":
        return UniformKinematics(self.accel_a, dz)


@dataclass(frozen=True)
class DetectorSpec:
    """Energy gap in units of 1/sigma. sigma and lambda are fixed to 1;
    every reported quantity is per lambda^2."""

    gap_Omega: float
    switch_sigma: float = 1.0
    coupling_lambda: float = 1.0

    def __post_init__(self):
        _require_positive(switch_sigma=self.switch_sigma)
        if not math.isfinite(self.gap_Omega):
            raise NonPositiveParameter("gap_Omega must be finite")


class PairKind(enum.Enum):
    CIRCULAR_COMOVING = "CircularComoving"
    CIRCULAR_SYNC_TWO_RADII = "CircularSyncTwoRadii"
    UNIFORM_PAIR = "UniformPair"


@dataclass(frozen=True)
class PairGeometry:
    """Detector A sits at height dz above the mirror, B at dz + dd."""

    sep_dd: float
    boundary_dist_dz: float
    kind: PairKind = PairKind.CIRCULAR_COMOVING

    def __post_init__(self):
        _require_positive(boundary_dist_dz=self.boundary_dist_dz)
        if not self.sep_dd >= 0 or not math.isfinite(self.sep_dd):
            raise NonPositiveParameter(f"sep_dd must be >= 0, got {self.sep_dd!r}")

    @property
    def image_shift(self) -> float:
        """(z_A + z_B)^2 - (z_A - z_B)^2 = 4 dd dz + 4 dz^2."""
        return 4.0 * self.sep_dd * self.boundary_dist_dz + 4.0 * self.boundary_dist_dz ** 2


def derive_circular(accel_a: float, radius_R: float, dz: float) -> CircularKinematics:
    return CircularKinematics(radius_R=radius_R, accel_a=accel_a, boundary_dist_dz=dz)


def circular_from_omega(omega: float, radius_R: float, dz: float) -> CircularKinematics:
    """Circular kinematics fixed by angular velocity instead of acceleration."""
    _require_positive(omega=omega, radius_R=radius_R)
    v = omega * radius_R
    if not v < 1.0:
        raise NonPositiveParameter(f"omega*R = {v!r} must stay below 1")
    return CircularKinematics(radius_R, omega * omega * radius_R / (1.0 - v * v), dz)


def _light_cone_g(x, v, w):
    return x * x - (v * math.sin(x)) ** 2 - w * w


def solve_light_cone_root(v: float, omega_dz: float) -> float:
    """Positive root of x^2 - v^2 sin^2 x - (omega dz)^2 for 0 <= v < 1.

    g(0) < 0 and g'(x) = 2x - v^2 sin 2x > 0 for x > 0, so the root is unique.
    It lies in [omega_dz, omega_dz / sqrt(1 - v^2)] because
    0 <= v^2 sin^2 x <= v^2 x^2.
    """
    w = abs(omega_dz)
    if w == 0.0:
        return 0.0
    lo = w
    hi = w / math.sqrt(1.0 - v * v) if v < 1.0 else 2.0 * w + 1.0
    hi = min(hi, w + 1.0)  # v^2 sin^2 x <= 1 bounds the shift as well
    glo, ghi = _light_cone_g(lo, v, w), _light_cone_g(hi, v, w)
    if glo > 0 or ghi < 0:
        # Degenerate rounding at the bracket ends; widen once.
        lo, hi = 0.5 * w, w + 2.0
        glo, ghi = _light_cone_g(lo, v, w), _light_cone_g(hi, v, w)
        if glo > 0 or ghi < 0:
            raise RootNotBracketed(f"light-cone root not bracketed for v={v}, w={w}")
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    return brentq(_light_cone_g, lo, hi, args=(v, w), xtol=1e-15 * max(1.0, w),
                  rtol=8.9e-16, maxiter=200)


def light_cone_root_S(kin: CircularKinematics) -> float:
    """Root S where the detector is null separated from its mirror image."""
    return solve_light_cone_root(kin.speed_v, kin.omega * kin.boundary_dist_dz)
