"""Quadrature for the integral classes that the reduced formulas produce.

Three building blocks:

* ``integrate_damped`` -- regular integrands on [0, inf) that carry a
  Gaussian envelope exp(-alpha x^2); the range is cut where the envelope
  drops below the absolute tolerance and the rest goes to QUADPACK.
* ``integrate_pv`` -- Cauchy principal values through simple real poles,
  by symmetric pole-window subtraction.
* ``bracket_all_roots`` -- scan-and-refine enumeration of the simple zeros of
  a denominator on a ray.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy import integrate
from scipy.optimize import brentq, minimize_scalar

from .errors import BudgetExhausted, DegeneratePole, WindowOverlap

DEGENERACY_FLOOR = 1e-8
TANGENCY_FLOOR = 1e-10

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)
_GL_NODES_LO, _GL_WEIGHTS_LO = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class QuadratureBudget:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 2000
    pv_window_delta: float = 1e-3
    truncation_safety: float = 1.2

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "pv_window_delta", "truncation_safety"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")

    def replace(self, **changes) -> "QuadratureBudget":
        return replace(self, **changes)


@dataclass(frozen=True)
class PoleSet:
    roots: tuple = ()
    derivative_at_root: tuple = ()

    def __post_init__(self):
        roots = tuple(float(r) for r in self.roots)
        derivs = tuple(float(d) for d in self.derivative_at_root)
        if len(roots) != len(derivs):
            raise ValueError("roots and derivative_at_root differ in length")
        if any(b <= a for a, b in zip(roots, roots[1:])):
            raise ValueError("roots must be strictly increasing")
        for r, d in zip(roots, derivs):
            if abs(d) <= DEGENERACY_FLOOR:
                raise DegeneratePole(f"|g'({r:.12g})| = {abs(d):.3g} is below the degeneracy floor")
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "derivative_at_root", derivs)

    def __len__(self):
        return len(self.roots)


class Quad(NamedTuple):
    value: float
    error: float


def truncation_point(alpha: float, budget: QuadratureBudget, scale: float = 1.0) -> float:
    """Cut-off where scale*exp(-alpha x^2) falls below abs_tol (with safety factor)."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    ratio = max(scale, budget.abs_tol) / budget.abs_tol
    return budget.truncation_safety * math.sqrt(max(math.log(ratio), 1.0) / alpha)


def _quad(f, a, b, budget, epsabs, points=None) -> Quad:
    if b <= a:
        return Quad(0.0, 0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err, info = integrate.quad(
            f, a, b, epsabs=epsabs, epsrel=budget.rel_tol,
            limit=budget.max_subdivisions, points=points, full_output=True,
        )[:3]
    if not math.isfinite(value):
        raise BudgetExhausted(f"non-finite integral on [{a}, {b}]")
    if err > max(epsabs, budget.rel_tol * abs(value)) and info["last"] >= budget.max_subdivisions:
        raise BudgetExhausted(
            f"quadrature on [{a:.6g}, {b:.6g}] used {info['last']} subdivisions; "
            f"error estimate {err:.3g} above tolerance"
        )
    return Quad(value, err)


def integrate_damped(f: Callable[[float], float], alpha: float,
                     budget: QuadratureBudget | None = None, scale: float = 1.0) -> Quad:
    """Integrate f over [0, inf) when |f(x)| <= scale * exp(-alpha x^2).

    Returns ``Quad(value, error)``. The error includes a bound on the
    discarded Gaussian tail.
    """
    budget = budget or QuadratureBudget()
    x_max = truncation_point(alpha, budget, scale)
    res = _quad(f, 0.0, x_max, budget, budget.abs_tol)
    tail = scale * math.sqrt(math.pi / alpha) * 0.5 * math.erfc(math.sqrt(alpha) * x_max)
    return Quad(res.value, res.error + tail)


def _window_integral(f_num, g_den, s, c, half):
    """Integral of the pole-free remainder f/g - c/(x - s) over [s-half, s+half].

    The subtracted term is odd about s, so its principal value over the
    symmetric window is exactly zero and only the remainder is kept.
    """
    def rem(nodes):
        return np.array([f_num(x) / g_den(x) - c / (x - s) for x in nodes])

    hi = half * float(np.dot(_GL_WEIGHTS, rem(s + half * _GL_NODES)))
    lo = half * float(np.dot(_GL_WEIGHTS_LO, rem(s + half * _GL_NODES_LO)))
    return Quad(hi, abs(hi - lo))


def integrate_pv(f_num: Callable[[float], float], g_den: Callable[[float], float],
                 poles: PoleSet, alpha: float, budget: QuadratureBudget | None = None,
                 scale: float = 1.0) -> Quad:
    """Principal value of the integral of f_num/g_den over [0, inf).

    ``poles`` lists every simple zero of g_den on (0, inf) together with
    g_den' there. Outside the windows [s_k - delta, s_k + delta] the integrand
    is regular and handled adaptively; inside, c_k/(x - s_k) with
    c_k = f_num(s_k)/g_den'(s_k) is removed first. ``scale`` bounds
    |f_num/g_den| away from the poles for the truncation rule.
    """
    budget = budget or QuadratureBudget()
    roots = list(poles.roots)
    delta = budget.pv_window_delta
    if roots:
        delta = min(delta, 0.5 * roots[0])
        gaps = np.diff(roots)
        if gaps.size and gaps.min() <= 2.0 * delta:
            raise WindowOverlap(
                f"pole spacing {gaps.min():.3g} does not fit windows of half-width {delta:.3g}"
            )
    for r, d in zip(roots, poles.derivative_at_root):
        if abs(d) <= DEGENERACY_FLOOR:
            raise DegeneratePole(f"|g'({r})| below degeneracy floor")

    upper = truncation_point(alpha, budget, scale)
    if roots:
        upper = max(upper, roots[-1] + delta + 1.0)

    def integrand(x):
        return f_num(x) / g_den(x)

    edges = [0.0]
    for r in roots:
        edges += [r - delta, r + delta]
    edges.append(upper)
    n_pieces = len(roots) * 2 + 1
    epsabs = budget.abs_tol / n_pieces

    value = 0.0
    error = 0.0
    for a, b in zip(edges[::2], edges[1::2]):
        part = _quad(integrand, a, b, budget, epsabs)
        value += part.value
        error += part.error
    for r, d in zip(roots, poles.derivative_at_root):
        part = _window_integral(f_num, g_den, r, f_num(r) / d, delta)
        value += part.value
        error += part.error
    tail = scale * math.sqrt(math.pi / alpha) * 0.5 * math.erfc(math.sqrt(alpha) * upper)
    return Quad(value, error + tail)


def _as_vector(g):
    def call(x):
        try:
            y = np.asarray(g(x), dtype=float)
            if y.shape == x.shape:
                return y
        except (TypeError, ValueError):
            pass
        return np.array([g(float(t)) for t in x])
    return call


def bracket_all_roots(g: Callable, upper: float, max_step: float,
                      dg: Callable[[float], float] | None = None,
                      lower: float = 0.0) -> PoleSet:
    """All simple zeros of g on (lower, upper].

    A uniform scan with spacing <= max_step finds sign changes, each refined
    by Brent's method to 1e-12. Touch-without-crossing (|g| < 1e-10 at a local
    minimum of |g| with no sign change) raises DegeneratePole.
    """
    if not upper > lower:
        return PoleSet()
    n = max(int(math.ceil((upper - lower) / max_step)), 2)
    xs = np.linspace(lower, upper, n + 1)
    ys = _as_vector(g)(xs)
    gs = lambda t: float(g(t))  # noqa: E731

    roots = []
    sgn = np.sign(ys)
    for i in range(1, n + 1):
        a, b = xs[i - 1], xs[i]
        ya, yb = ys[i - 1], ys[i]
        if ya == 0.0 and i - 1 > 0:
            continue  # already recorded as the right end of the previous cell
        if yb == 0.0:
            left = sgn[i - 1]
            right = sgn[i + 1] if i + 1 <= n else -left
            if left != 0 and left == right:
                raise DegeneratePole(f"g touches zero without crossing at x={b:.12g}")
            roots.append(b)
            continue
        if ya * yb < 0:
            roots.append(brentq(gs, a, b, xtol=1e-12, rtol=8.9e-16, maxiter=200))

    absy = np.abs(ys)
    for i in range(1, n):
        if absy[i] <= absy[i - 1] and absy[i] <= absy[i + 1] and sgn[i - 1] == sgn[i + 1] != 0 \
                and sgn[i] == sgn[i - 1]:
            res = minimize_scalar(lambda t: abs(gs(t)), bounds=(xs[i - 1], xs[i + 1]),
                                  method="bounded", options={"xatol": 1e-13})
            if res.fun < TANGENCY_FLOOR:
                raise DegeneratePole(f"g touches zero without crossing near x={res.x:.12g}")

    derivs = []
    for r in roots:
        if dg is not None:
            d = float(dg(r))
        else:
            h = 1e-6
            d = (gs(r + h) - gs(r - h)) / (2 * h)
        if abs(d) <= DEGENERACY_FLOOR:
            raise DegeneratePole(f"|g'({r:.12g})| = {abs(d):.3g}: double root")
        derivs.append(d)
    return PoleSet(tuple(roots), tuple(derivs))
