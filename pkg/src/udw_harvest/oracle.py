"""Brute-force reference values straight from the defining double integrals.

Nothing here uses the reductions in ``response`` or ``correlation``. The
Wightman function of the mirrored vacuum is evaluated at finite regulator
epsilon on the raw worldlines. The double integral over the two proper times
is done numerically. The limit epsilon -> 0 is then taken by polynomial
(Richardson) extrapolation over a ladder of epsilon values.

The regulator shifts the separation 4-vector by -i*eps*n, with n the mean
4-velocity of the two events. It is future timelike, so it gives the same
distributional limit as the textbook t - t' - i*eps. Unlike a pure time
shift it stays uniform along Rindler hyperbolae, where dt/dtau grows
exponentially.

Integration coordinates: c = (tau_1 + tau_2)/2 and s = tau_1 - tau_2. The
Gaussian switching factorises as exp(-c^2) exp(-s^2/4). Gauss-Hermite
handles c. For each node, s is integrated adaptively on [-L, L], with
breakpoints at every light-cone crossing found by a dense sign scan.
"""

from __future__ import annotations

import hashlib
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import integrate
from scipy.optimize import brentq

from .errors import ExtrapolationUnstable

__all__ = [
    "EpsilonLadder", "CircularWorldline", "UniformWorldline", "OracleValue",
    "oracle_transition", "oracle_x", "richardson_to_zero",
]

_FOUR_PI2 = 4.0 * math.pi ** 2


@dataclass(frozen=True)
class EpsilonLadder:
    eps_values: tuple = (1e-2, 5e-3, 2.5e-3)
    extrapolation_order: int = 2
    outer_nodes: int = 16
    domain_halfwidth: float = 12.5
    inner_epsabs: float = 1e-13
    inner_epsrel: float = 1e-11
    scan_points: int = 2001

    def __post_init__(self):
        eps = tuple(float(e) for e in self.eps_values)
        if any(e <= 0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
            raise ValueError("eps_values must be positive and strictly descending")
        if not 0 <= self.extrapolation_order < len(eps):
            raise ValueError("extrapolation_order must be below the ladder length")
        object.__setattr__(self, "eps_values", eps)

    def digest(self) -> str:
        text = repr((self.eps_values, self.extrapolation_order, self.outer_nodes,
                     self.domain_halfwidth, self.inner_epsabs, self.inner_epsrel))
        return hashlib.sha256(text.encode()).hexdigest()[:12]


class CircularWorldline:
    """t = gamma tau, (x, y) = R (cos, sin)(omega gamma tau), fixed height z."""

    def __init__(self, radius: float, omega: float, z: float):
        if not radius * abs(omega) < 1.0:
            raise ValueError("circular speed must stay below c")
        self.radius, self.omega, self.z = radius, omega, z
        self.gamma = 1.0 / math.sqrt(1.0 - (radius * omega) ** 2)

    @classmethod
    def from_accel(cls, accel: float, radius: float, z: float) -> "CircularWorldline":
        return cls(radius, math.sqrt(accel / (radius * (1.0 + accel * radius))), z)

    def event(self, tau):
        g, th = self.gamma, self.omega * self.gamma * tau
        t = g * tau
        x, y = self.radius * math.cos(th), self.radius * math.sin(th)
        gv = g * self.radius * self.omega
        return t, x, y, (g, -gv * math.sin(th), gv * math.cos(th))


class UniformWorldline:
    """t = sinh(a tau)/a, x = cosh(a tau)/a, fixed height z."""

    def __init__(self, accel: float, z: float):
        self.accel, self.z = accel, z

    def event(self, tau):
        a = self.accel
        ch, sh = math.cosh(a * tau), math.sinh(a * tau)
        return sh / a, ch / a, 0.0, (ch, sh, 0.0)


def _interval(w1, tau1, w2, tau2, eps, image):
    """Regulated squared interval of event1 - event2 (or event2's mirror image)."""
    dz = w1.z + w2.z if image else w1.z - w2.z
    if isinstance(w1, UniformWorldline) and isinstance(w2, UniformWorldline) \
            and w1.accel == w2.accel:
        # light-cone coordinates u = t + x, v = t - x avoid cancelling cosh/sinh
        a = w1.accel
        e1, e2 = math.exp(a * tau1), math.exp(a * tau2)
        du = e2 * math.expm1(a * (tau1 - tau2)) / a
        dv = -math.expm1(-a * (tau1 - tau2)) / (a * e2)
        nu = 0.5 * (e1 + e2)
        nv = 0.5 * (1.0 / e1 + 1.0 / e2)
        return (du - 1j * eps * nu) * (dv - 1j * eps * nv) - dz * dz
    t1, x1, y1, u1 = w1.event(tau1)
    t2, x2, y2, u2 = w2.event(tau2)
    n0 = 0.5 * (u1[0] + u2[0])
    n1 = 0.5 * (u1[1] + u2[1])
    n2 = 0.5 * (u1[2] + u2[2])
    dt = complex(t1 - t2, -eps * n0)
    dx = complex(x1 - x2, -eps * n1)
    dy = complex(y1 - y2, -eps * n2)
    return dt * dt - dx * dx - dy * dy - dz * dz


def _time(w, tau):
    return w.event(tau)[0]


def wightman(w1, tau1, w2, tau2, eps, free=True, image=True):
    """Regulated W(x1(tau1), x2(tau2)) for the vacuum with a Dirichlet mirror at z=0."""
    val = 0j
    if free:
        val -= 1.0 / _interval(w1, tau1, w2, tau2, eps, False)
    if image:
        val += 1.0 / _interval(w1, tau1, w2, tau2, eps, True)
    return val / _FOUR_PI2


def _real_interval(w1, tau1, w2, tau2, image):
    return _interval(w1, tau1, w2, tau2, 0.0, image).real


def _breakpoints(fns, L, n):
    """Sign changes of the given real functions of s on [-L, L], refined."""
    s = np.linspace(-L, L, n)
    pts = {0.0}
    for fn in fns:
        vals = np.array([fn(x) for x in s])
        sgn = np.sign(vals)
        for i in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
            pts.add(brentq(fn, s[i], s[i + 1], xtol=1e-14))
        for i in np.nonzero(sgn == 0)[0]:
            pts.add(float(s[i]))
    return sorted(p for p in pts if -L < p < L)


def _inner(fn, breaks, L, ladder):
    edges = [-L] + list(breaks) + [L]
    total = 0j
    for a, b in zip(edges[:-1], edges[1:]):
        if b - a <= 0:
            continue
        with warnings.catch_warnings():
            # roundoff warnings fire once the absolute floor is reached; harmless here
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, _ = integrate.quad(fn, a, b, epsabs=ladder.inner_epsabs,
                                    epsrel=ladder.inner_epsrel, limit=2000, complex_func=True)
        total += val
    return total


def richardson_to_zero(eps: Sequence[float], values: Sequence[complex], order: int):
    """Extrapolate values(eps) to eps = 0 with a Neville table.

    Returns (limit, increment): the diagonal entry of the requested order and
    its difference from the previous order. Raises ExtrapolationUnstable when
    the last increment is more than 10x the one before it.
    """
    eps = list(eps)
    n = len(values)
    table = [[complex(v)] for v in values]
    for k in range(1, n):
        for j in range(1, k + 1):
            ratio = eps[k - j] / eps[k]
            prev = table[k][j - 1]
            table[k].append(prev + (prev - table[k - 1][j - 1]) / (ratio - 1.0))
    diag = table[n - 1][: order + 1]
    if order == 0:
        return diag[0], abs(values[-1] - values[-2]) if n > 1 else math.inf
    incs = [abs(diag[j] - diag[j - 1]) for j in range(1, order + 1)]
    if len(incs) >= 2 and incs[-1] > 10.0 * incs[-2] and incs[-1] > 1e-14:
        raise ExtrapolationUnstable(f"extrapolants diverge: increments {incs}")
    return diag[order], incs[-1]


@dataclass(frozen=True)
class OracleValue:
    value: complex
    increment: float
    per_eps: tuple
    ladder_hash: str

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag


def _gh(n):
    nodes, weights = np.polynomial.hermite.hermgauss(n)
    return list(zip(nodes.tolist(), weights.tolist()))


def _ladder_transition(wl, gap, ladder, free, image):
    """Finite-eps transition probability for every eps on the ladder."""
    L = ladder.domain_halfwidth
    totals = [0j] * len(ladder.eps_values)
    for c, wc in _gh(ladder.outer_nodes):
        crossings = []
        if image:
            crossings.append(lambda s, c=c: _real_interval(wl, c + 0.5 * s, wl, c - 0.5 * s, True))
        breaks = _breakpoints(crossings, L, ladder.scan_points)
        for k, eps in enumerate(ladder.eps_values):
            def fn(s, c=c, eps=eps):
                w = wightman(wl, c + 0.5 * s, wl, c - 0.5 * s, eps, free, image)
                return math.exp(-0.25 * s * s) * complex(math.cos(gap * s), -math.sin(gap * s)) * w

            totals[k] += wc * _inner(fn, breaks, L, ladder)
    return totals


def oracle_transition(wl, gap: float, ladder: EpsilonLadder | None = None,
                      free: bool = True, image: bool = True) -> OracleValue:
    """P/lambda^2 = int int chi chi exp(-i gap (tau - tau')) W, extrapolated to eps -> 0."""
    ladder = ladder or EpsilonLadder()
    vals = _ladder_transition(wl, gap, ladder, free, image)
    limit, inc = richardson_to_zero(ladder.eps_values, vals, ladder.extrapolation_order)
    if abs(limit.imag) > 1e-4 * abs(limit.real) + 1e-12:
        raise ExtrapolationUnstable(f"transition probability keeps imaginary part {limit.imag:.3g}")
    return OracleValue(limit, inc, tuple(vals), ladder.digest())


def _ladder_x(wa, wb, gap, ladder, free, image):
    L = ladder.domain_halfwidth
    totals = [0j] * len(ladder.eps_values)
    for c, wc in _gh(ladder.outer_nodes):
        phase = complex(math.cos(2 * gap * c), -math.sin(2 * gap * c))
        crossings = [lambda s, c=c: _time(wb, c + 0.5 * s) - _time(wa, c - 0.5 * s)]
        if free:
            crossings.append(lambda s, c=c: _real_interval(wb, c + 0.5 * s, wa, c - 0.5 * s, False))
        if image:
            crossings.append(lambda s, c=c: _real_interval(wb, c + 0.5 * s, wa, c - 0.5 * s, True))
        breaks = _breakpoints(crossings, L, ladder.scan_points)
        for k, eps in enumerate(ladder.eps_values):
            def fn(s, c=c, eps=eps):
                tb, ta = c + 0.5 * s, c - 0.5 * s
                if _time(wb, tb) >= _time(wa, ta):
                    w = wightman(wa, ta, wb, tb, eps, free, image)
                else:
                    w = wightman(wb, tb, wa, ta, eps, free, image)
                return math.exp(-0.25 * s * s) * w

            totals[k] -= wc * phase * _inner(fn, breaks, L, ladder)
    return totals


def oracle_x(wa, wb, gap: float, ladder: EpsilonLadder | None = None,
             free: bool = True, image: bool = True) -> OracleValue:
    """X/lambda^2 = -int int chi_A chi_B exp(-i gap (tau_A + tau_B)) W(earlier, later).

    Works for any pair of worldlines, including unequal angular velocities.
    """
    ladder = ladder or EpsilonLadder()
    vals = _ladder_x(wa, wb, gap, ladder, free, image)
    limit, inc = richardson_to_zero(ladder.eps_values, vals, ladder.extrapolation_order)
    return OracleValue(limit, inc, tuple(vals), ladder.digest())
