"""Single-detector transition probability near a reflecting plane.

Both trajectories use the same decomposition of the Gaussian-switched
response:

    P = (regular free-space remainder) + (principal value of the image term)
        + (inertial 1/(s - i0)^2 piece, in closed form)
        + (residue of the image term at its light-cone root).

The circular worldline is reduced in the variable x = gamma*|omega|*s/2.
The uniformly accelerated worldline stays in proper time s, with the
kernel (2/a) sinh(a s/2) in place of the circular chord.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kinematics import (CircularKinematics, DetectorSpec, UniformKinematics,
                         light_cone_root_S)
from .quadrature import PoleSet, QuadratureBudget, integrate_damped, integrate_pv
from .specfun import sinh_minus_x, vacuum_static_term, x_minus_sin

__all__ = ["TransitionResult", "transition_circular", "transition_uniform"]

_PI32 = math.pi ** 1.5
_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class TransitionResult:
    """P/lambda^2 and its four additive pieces."""

    p_over_lambda2: float
    term_free_oscillatory: float
    term_boundary_pv: float
    term_static: float
    term_residue: float
    err_est: float

    @property
    def boundary_part(self) -> float:
        return self.term_boundary_pv + self.term_residue


def _assemble(free, pv, static, residue, err) -> TransitionResult:
    total = free + pv + static + residue
    return TransitionResult(total, free, pv, static, residue, err)


def circular_free_kernel(x: float, gamma: float) -> float:
    """(x^2 - sin^2 x) / (x^2 (x^2 - v^2 sin^2 x)), written without cancellation.

    With n = (x - sin x)(x + sin x) the denominator factor is
    x^2 - v^2 sin^2 x = n + sin^2(x)/gamma^2, which is positive for x > 0.
    """
    x = abs(x)
    inv_g2 = 1.0 / (gamma * gamma)
    if x < 1e-3:
        x2 = x * x
        n_over_x4 = (1.0 / 6.0 - x2 / 120.0) * (2.0 - x2 / 6.0)
        sinc2 = 1.0 - x2 / 3.0
        return n_over_x4 / (n_over_x4 * x2 + sinc2 * inv_g2)
    s = math.sin(x)
    n = x_minus_sin(x) * (x + s)
    den = n + s * s * inv_g2
    return n / (x * x * den)


def transition_circular(kin: CircularKinematics, det: DetectorSpec,
                        budget: QuadratureBudget | None = None,
                        image: bool = True) -> TransitionResult:
    """Transition probability per lambda^2 of a detector on a circular orbit.

    ``image=False`` drops the mirror term, giving the free-space response.
    """
    budget = budget or QuadratureBudget()
    v, g, w = kin.speed_v, kin.gamma, kin.omega
    alpha, beta = kin.alpha, kin.beta(det.gap_Omega)
    K = kin.K_per_lambda2

    def free_integrand(x):
        return math.exp(-alpha * x * x) * math.cos(beta * x) * circular_free_kernel(x, g)

    free = integrate_damped(free_integrand, alpha, budget, scale=max(g * g / 3.0, 1.0))
    static = vacuum_static_term(det.gap_Omega)
    if not image:
        return _assemble(K * free.value, 0.0, static, 0.0, K * free.error)

    wdz2 = (w * kin.boundary_dist_dz) ** 2
    v2 = v * v
    S = light_cone_root_S(kin)
    dS = 2.0 * S - v2 * math.sin(2.0 * S)

    def num(x):
        return math.exp(-alpha * x * x) * math.cos(beta * x)

    def den(x):
        return x * x - v2 * math.sin(x) ** 2 - wdz2

    coef = w / (4.0 * _PI32 * g)
    pv = integrate_pv(num, den, PoleSet((S,), (dS,)), alpha, budget, scale=g * g)
    residue = (w / (4.0 * _SQRT_PI * g)) * math.exp(-alpha * S * S) * math.sin(beta * S) / dS
    err = K * free.error + coef * pv.error
    return _assemble(K * free.value, coef * pv.value, static, residue, err)


def uniform_free_kernel(s: float, a: float) -> float:
    """(a^2/4)/sinh^2(a s/2) - 1/s^2, the non-inertial part of 1/chord^2."""
    y = 0.5 * a * abs(s)
    q = 0.25 * a * a
    if y < 1e-3:
        y2 = y * y
        return q * (-1.0 / 3.0 + y2 / 15.0 - 2.0 * y2 * y2 / 189.0)
    if y > 20.0:
        e = math.exp(-2.0 * y)
        return q * 4.0 * e / (1.0 - e) ** 2 - 1.0 / (s * s)
    sh = math.sinh(y)
    return -q * sinh_minus_x(y) * (sh + y) / (y * y * sh * sh)


def uniform_chord2(s: float, a: float) -> float:
    """Squared proper interval (2/a)^2 sinh^2(a s/2) along the hyperbola."""
    y = 0.5 * a * abs(s)
    if y > 350.0:
        return math.inf
    return (2.0 * math.sinh(y) / a) ** 2


def uniform_image_root(a: float, dz: float) -> float:
    """Proper time separation at which the detector is null to its image."""
    return 2.0 / a * math.asinh(a * dz)


def transition_uniform(kin: UniformKinematics, det: DetectorSpec,
                       budget: QuadratureBudget | None = None,
                       image: bool = True) -> TransitionResult:
    """Transition probability per lambda^2 for uniform acceleration."""
    budget = budget or QuadratureBudget()
    a, Om = kin.accel_a, det.gap_Omega
    alpha = 0.25

    def free_integrand(s):
        return math.exp(-0.25 * s * s) * math.cos(Om * s) * uniform_free_kernel(s, a)

    free = integrate_damped(free_integrand, alpha, budget, scale=max(a * a / 12.0, 1.0))
    free_coef = -1.0 / (2.0 * _PI32)
    static = vacuum_static_term(Om)
    if not image:
        return _assemble(free_coef * free.value, 0.0, static, 0.0, abs(free_coef) * free.error)

    dz2x4 = 4.0 * kin.boundary_dist_dz ** 2
    S = uniform_image_root(a, kin.boundary_dist_dz)
    dS = 2.0 / a * math.sinh(a * S)

    def num(s):
        return math.exp(-0.25 * s * s) * math.cos(Om * s)

    def den(s):
        return uniform_chord2(s, a) - dz2x4

    coef = 1.0 / (2.0 * _PI32)
    pv = integrate_pv(num, den, PoleSet((S,), (dS,)), alpha, budget, scale=1.0 / dz2x4)
    residue = math.exp(-0.25 * S * S) * math.sin(Om * S) / dS / (2.0 * _SQRT_PI)
    err = abs(free_coef) * free.error + coef * pv.error
    return _assemble(free_coef * free.value, coef * pv.value, static, residue, err)
