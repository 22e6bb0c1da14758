import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from udw_harvest import (DegeneratePole, PoleSet, QuadratureBudget, WindowOverlap,
                         bracket_all_roots, integrate_damped, integrate_pv)
from udw_harvest.kinematics import derive_circular, light_cone_root_S

DAMPED_REF = 0.779081630900578372278129558151  # mpmath quad, 30 digits
PV_REF = -1.30230853573841065050964980623      # PV int_0^inf e^{-x^2}/(x-1), mpmath


def kernel(x):
    if x == 0:
        return 2.0 / 3.0
    s2 = math.sin(x) ** 2
    return math.exp(-0.25 * x * x) * (x * x - s2) / (x * x * (x * x - 0.5 * s2))


def test_budget_validation():
    with pytest.raises(ValueError):
        QuadratureBudget(abs_tol=0)
    with pytest.raises(ValueError):
        QuadratureBudget(max_subdivisions=0)
    assert QuadratureBudget().replace(rel_tol=1e-6).rel_tol == 1e-6


def test_damped_closed_forms(budget):
    r = integrate_damped(lambda x: math.exp(-x * x), 1.0, budget)
    assert r.value == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-10)
    r = integrate_damped(lambda x: math.exp(-x * x) * math.cos(2 * x), 1.0, budget)
    assert r.value == pytest.approx(math.sqrt(math.pi) / 2 / math.e, abs=1e-10)
    assert r.error <= max(budget.abs_tol, budget.rel_tol * abs(r.value)) * 10


def test_damped_kernel_against_reference(budget):
    assert integrate_damped(kernel, 0.25, budget).value == pytest.approx(DAMPED_REF, abs=1e-8)


def test_damped_trapezoid_cross_check():
    xs = np.linspace(0, 40, 1_000_001)
    s2 = np.sin(xs[1:]) ** 2
    y = np.empty_like(xs)
    y[0] = 2.0 / 3.0
    y[1:] = np.exp(-0.25 * xs[1:] ** 2) * (xs[1:] ** 2 - s2) / (xs[1:] ** 2 * (xs[1:] ** 2 - 0.5 * s2))
    # float cancellation near 0 limits the brute-force sum, not the library
    assert np.trapezoid(y, xs) == pytest.approx(DAMPED_REF, abs=1e-6)


@pytest.mark.parametrize("f,alpha", [(lambda x: math.exp(-x * x), 1.0),
                                     (lambda x: math.exp(-x * x) * math.cos(2 * x), 1.0),
                                     (kernel, 0.25)])
def test_damped_halving_tolerance_is_self_consistent(f, alpha):
    b = QuadratureBudget()
    r1 = integrate_damped(f, alpha, b)
    r2 = integrate_damped(f, alpha, b.replace(abs_tol=b.abs_tol / 2, rel_tol=b.rel_tol / 2))
    assert abs(r1.value - r2.value) <= max(r1.error, 1e-15)


def window_oracle(delta):
    lo = integrate.quad(lambda x: math.exp(-x * x) / (x - 1), 0, 1 - delta, epsabs=1e-14)[0]
    hi = integrate.quad(lambda x: math.exp(-x * x) / (x - 1), 1 + delta, 12, epsabs=1e-14, limit=200)[0]
    return lo + hi


def test_pv_simple_pole_against_window_extrapolation(budget):
    deltas = [1e-2, 1e-3, 1e-4]
    vals = [window_oracle(d) for d in deltas]
    # the dropped window carries 2 f'(1) delta + O(delta^3): linear Richardson step
    extrap = vals[2] + (vals[2] - vals[1]) / 9.0
    assert extrap == pytest.approx(PV_REF, abs=1e-9)
    r = integrate_pv(lambda x: math.exp(-x * x), lambda x: x - 1.0, PoleSet((1.0,), (1.0,)),
                     1.0, budget)
    assert r.value == pytest.approx(PV_REF, abs=1e-10)


def test_pv_odd_numerator_window_is_pure_remainder(budget):
    # f/g = c/(x - s) exactly: the window contributes nothing, the rest is two logs
    s = 2.0
    r = integrate_pv(lambda x: 1.0, lambda x: x - s, PoleSet((s,), (1.0,)), 1e-6,
                     budget.replace(truncation_safety=1.0))
    upper = s + 1e-3 + 1.0
    upper = max(upper, 1.0 * math.sqrt(math.log(1 / budget.abs_tol) / 1e-6))
    assert r.value == pytest.approx(math.log((upper - s) / s), rel=1e-8)


def test_pv_rejects_double_root_and_overlap(budget):
    with pytest.raises(DegeneratePole):
        PoleSet((1.0,), (0.0,))
    with pytest.raises(DegeneratePole):
        bracket_all_roots(lambda x: (x - 1.0) ** 2, 3.0, 0.1)
    with pytest.raises(WindowOverlap):
        integrate_pv(lambda x: 1.0, lambda x: (x - 1) * (x - 1.0005), PoleSet((1.0, 1.0005), (-5e-4, 5e-4)),
                     1.0, budget)
    with pytest.raises(ValueError):
        PoleSet((2.0, 1.0), (1.0, 1.0))


def test_bracket_examples():
    p = bracket_all_roots(lambda x: x * x - 4, 10.0, 0.1)
    assert p.roots == pytest.approx((2.0,), abs=1e-12)
    assert p.derivative_at_root == pytest.approx((4.0,), rel=1e-6)
    p = bracket_all_roots(math.sin, 10.0, 0.1, dg=math.cos)
    assert p.roots == pytest.approx((math.pi, 2 * math.pi, 3 * math.pi), abs=1e-12)
    assert p.derivative_at_root == pytest.approx((-1.0, 1.0, -1.0), abs=1e-12)


def circ_den(R, dd, w):
    return lambda s: dd * dd + 4 * R * R * np.sin(0.5 * w * s) ** 2 - s * s


def dense_roots(g, upper, n=1_000_000):
    xs = np.linspace(0, upper, n + 1)[1:]
    y = g(xs)
    return int(np.count_nonzero(np.sign(y[:-1]) != np.sign(y[1:])))


def test_bracket_circular_denominator_against_dense_scan():
    R, dd, w = 2.0, 0.2, 0.6
    g = circ_den(R, dd, w)
    upper = math.sqrt(dd * dd + 4 * R * R) + 0.5
    p = bracket_all_roots(lambda s: float(g(s)), upper, min(0.25, math.pi / (8 * w)))
    assert len(p) == dense_roots(g, upper) == 1
    assert abs(g(p.roots[0])) < 1e-10


def test_bracket_count_on_random_draws():
    rng = np.random.default_rng(3)
    for _ in range(100):
        R, dd = rng.uniform(0.05, 5), rng.uniform(0.01, 3)
        w = rng.uniform(0.05, 0.99) / R
        g = circ_den(R, dd, w)
        upper = math.sqrt(dd * dd + 4 * R * R) + 0.5
        p = bracket_all_roots(lambda s: float(g(s)), upper, min(0.25, math.pi / (8 * w)))
        assert len(p) == dense_roots(g, upper)


def test_pv_window_independence_on_response_integrand():
    k = derive_circular(2.0, 1.0, 0.2)
    S = light_cone_root_S(k)
    v2, wdz2, alpha, beta = k.speed_v ** 2, (k.omega * k.boundary_dist_dz) ** 2, k.alpha, k.beta(0.1)
    f = lambda x: math.exp(-alpha * x * x) * math.cos(beta * x)  # noqa: E731
    g = lambda x: x * x - v2 * math.sin(x) ** 2 - wdz2  # noqa: E731
    poles = PoleSet((S,), (2 * S - v2 * math.sin(2 * S),))
    vals = [integrate_pv(f, g, poles, alpha, QuadratureBudget(pv_window_delta=d)).value
            for d in (1e-2, 1e-3, 1e-4)]
    assert max(vals) - min(vals) < 10 * QuadratureBudget().abs_tol


@settings(max_examples=30)
@given(st.floats(0.2, 5.0), st.floats(0.1, 3.0))
def test_pv_delta_independence_property(s, alpha):
    f = lambda x: math.exp(-alpha * x * x) * (1 + x)  # noqa: E731
    g = lambda x: x - s  # noqa: E731
    poles = PoleSet((s,), (1.0,))
    a = integrate_pv(f, g, poles, alpha, QuadratureBudget(pv_window_delta=1e-2))
    b = integrate_pv(f, g, poles, alpha, QuadratureBudget(pv_window_delta=1e-3))
    assert abs(a.value - b.value) < 10 * max(a.error + b.error, 1e-10)
