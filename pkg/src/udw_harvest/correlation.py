"""Nonlocal correlation X for a pair of detectors above a mirror.

Every supported pair is stationary, so X collapses to one integral over the
coordinate-time lag s:

    X = -pref * int_0^inf ds  exp(-kappa s^2) cos(nu s)
                 * [1/(D(s) - i0) - 1/(D(s) + shift - i0)]

with D the squared spatial chord minus s^2 (the free Wightman denominator)
and shift = 4 dd dz + 4 dz^2 from the image charge. Each real zero s_k of a
denominator contributes a principal value plus i*pi*h(s_k)/|D'(s_k)|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import AngularVelocityMismatch, CoincidentDetectors
from .kinematics import (CircularKinematics, DetectorSpec, PairGeometry, PairKind,
                         UniformKinematics)
from .quadrature import QuadratureBudget, bracket_all_roots, integrate_pv

__all__ = ["XResult", "x_comoving_circular", "x_sync_two_radii", "x_uniform_pair"]

_PI32 = math.pi ** 1.5


@dataclass(frozen=True)
class XResult:
    x_real: float
    x_imag: float
    abs_x_over_lambda2: float
    err_est: float
    pole_count_free: int
    pole_count_image: int
    boundary_real: float = 0.0
    boundary_imag: float = 0.0

    @property
    def value(self) -> complex:
        return complex(self.x_real, self.x_imag)

    @property
    def abs_boundary(self) -> float:
        return math.hypot(self.boundary_real, self.boundary_imag)


def _lag_integral(h: Callable[[float], float], den: Callable[[float], float],
                  dden: Callable[[float], float], kappa: float, scan_upper: float,
                  max_step: float, budget: QuadratureBudget, scale: float):
    """int_0^inf h/(den - i0): returns (real, imag, err, n_poles)."""
    poles = bracket_all_roots(den, scan_upper, max_step, dg=dden)
    pv = integrate_pv(h, den, poles, kappa, budget, scale=scale)
    imag = math.pi * sum(h(r) / abs(d) for r, d in zip(poles.roots, poles.derivative_at_root))
    return pv.value, imag, pv.error, len(poles)


def _assemble(pref, h, free_den, free_dden, shift, kappa, scan_free, scan_img,
              max_step, budget, image, scale) -> XResult:
    fr, fi, ferr, nf = _lag_integral(h, free_den, free_dden, kappa, scan_free,
                                     max_step, budget, scale)
    br = bi = berr = 0.0
    ni = 0
    if image:
        img_den = lambda s: free_den(s) + shift  # noqa: E731
        ir, ii, berr, ni = _lag_integral(h, img_den, free_dden, kappa, scan_img,
                                         max_step, budget, scale)
        br, bi = pref * ir, pref * ii
    xr = -pref * fr + br
    xi = -pref * fi + bi
    return XResult(xr, xi, math.hypot(xr, xi), pref * (ferr + berr), nf, ni, br, bi)


def _circular_step(omega: float) -> float:
    return min(0.25, math.pi / (8.0 * abs(omega)))


def x_comoving_circular(kin: CircularKinematics, geom: PairGeometry, det: DetectorSpec,
                        budget: QuadratureBudget | None = None,
                        image: bool = True) -> XResult:
    """X for two detectors sharing (a, R, omega), stacked dd apart along the axis."""
    budget = budget or QuadratureBudget()
    dd, R, w, g = geom.sep_dd, kin.radius_R, kin.omega, kin.gamma
    if dd == 0.0:
        raise CoincidentDetectors("dd = 0 puts both comoving detectors on one worldline")
    dd2, R2x4 = dd * dd, 4.0 * R * R
    shift = geom.image_shift
    kappa = 1.0 / (4.0 * g * g)
    pref = math.exp(-det.gap_Omega ** 2) / (2.0 * _PI32 * g)

    def h(s):
        return math.exp(-kappa * s * s)

    def den(s):
        return dd2 + R2x4 * math.sin(0.5 * w * s) ** 2 - s * s

    def dden(s):
        return 2.0 * R * R * w * math.sin(w * s) - 2.0 * s

    scan_free = math.sqrt(dd2 + R2x4) + 0.5
    scan_img = math.sqrt(dd2 + R2x4 + shift) + 0.5
    return _assemble(pref, h, den, dden, shift, kappa, scan_free, scan_img,
                     _circular_step(w), budget, image, scale=1.0 / min(dd2, 1.0))


def x_sync_two_radii(kinA: CircularKinematics, kinB: CircularKinematics,
                     geom: PairGeometry, det: DetectorSpec,
                     budget: QuadratureBudget | None = None,
                     image: bool = True) -> XResult:
    """X for coaxial detectors with a common angular velocity but radii R_A, R_B."""
    budget = budget or QuadratureBudget()
    w = kinA.omega
    if abs(kinA.omega - kinB.omega) > 1e-12 * max(abs(kinA.omega), abs(kinB.omega)):
        raise AngularVelocityMismatch(
            f"omega_A = {kinA.omega!r} and omega_B = {kinB.omega!r} differ")
    RA, RB, gA, gB = kinA.radius_R, kinB.radius_R, kinA.gamma, kinB.gamma
    dd = geom.sep_dd
    if dd == 0.0 and RA == RB:
        raise CoincidentDetectors("dd = 0 with equal radii puts both detectors on one worldline")
    Om = det.gap_Omega
    sig2 = gA * gA + gB * gB
    kappa = 1.0 / (2.0 * sig2)
    nu = Om * (gA - gB) / sig2
    pref = math.exp(-Om * Om * (gA + gB) ** 2 / (2.0 * sig2)) / (_PI32 * math.sqrt(2.0 * sig2))
    base = dd * dd + (RA - RB) ** 2
    cross = 4.0 * RA * RB
    shift = geom.image_shift

    def h(s):
        return math.exp(-kappa * s * s) * math.cos(nu * s)

    # R_A^2 + R_B^2 - 2 R_A R_B cos(ws) = (R_A - R_B)^2 + 4 R_A R_B sin^2(ws/2)
    def den(s):
        return base + cross * math.sin(0.5 * w * s) ** 2 - s * s

    def dden(s):
        return 2.0 * RA * RB * w * math.sin(w * s) - 2.0 * s

    scan_free = math.sqrt(base + cross) + 0.5
    scan_img = math.sqrt(base + cross + shift) + 0.5
    return _assemble(pref, h, den, dden, shift, kappa, scan_free, scan_img,
                     _circular_step(w), budget, image, scale=1.0 / min(base, 1.0))


def uniform_pair_free_root(a: float, dd: float) -> float:
    return 2.0 / a * math.asinh(0.5 * a * dd)


def x_uniform_pair(kin: UniformKinematics, geom: PairGeometry, det: DetectorSpec,
                   budget: QuadratureBudget | None = None,
                   image: bool = True) -> XResult:
    """X for two detectors on parallel Rindler hyperbolae, dd apart."""
    budget = budget or QuadratureBudget()
    a, dd = kin.accel_a, geom.sep_dd
    if not dd > 0:
        raise CoincidentDetectors("uniform pair needs dd > 0")
    dd2 = dd * dd
    shift = geom.image_shift
    kappa = 0.25
    pref = math.exp(-det.gap_Omega ** 2) / (2.0 * _PI32)
    c2 = 4.0 / (a * a)

    def h(s):
        return math.exp(-0.25 * s * s)

    def den(s):
        y = 0.5 * a * s
        if y > 350.0:
            return -math.inf
        return dd2 - c2 * math.sinh(y) ** 2

    def dden(s):
        y = a * s
        if y > 700.0:
            return -math.inf
        return -2.0 / a * math.sinh(y)

    scan_free = uniform_pair_free_root(a, dd) + 0.5
    scan_img = uniform_pair_free_root(a, math.sqrt(dd2 + shift)) + 0.5
    return _assemble(pref, h, den, dden, shift, kappa, scan_free, scan_img,
                     0.25, budget, image, scale=1.0 / min(dd2, 1.0))
