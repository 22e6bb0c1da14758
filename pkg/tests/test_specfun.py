import math

import mpmath as mp
import numpy as np
import pytest

from udw_harvest.specfun import erfc, sinh_minus_x, vacuum_static_term, x_minus_sin

ERFC_1 = 0.157299207050285130658779364917  # mpmath, 30 digits


def test_erfc_basics():
    assert erfc(0.0) == 1.0
    assert erfc(1.0) == pytest.approx(ERFC_1, abs=1e-15)
    for x in (0.3, 1.7, 4.2):
        assert erfc(-x) + erfc(x) == pytest.approx(2.0, abs=1e-15)


def test_erfc_against_mpmath():
    rng = np.random.default_rng(11)
    xs = rng.uniform(-8, 8, 1000)
    ref = np.array([float(mp.erfc(mp.mpf(float(x)))) for x in xs])
    assert np.max(np.abs(erfc(xs) - ref)) < 1e-13
    assert all(abs(erfc(float(x)) - r) < 1e-13 for x, r in zip(xs[:100], ref[:100]))


def test_erfc_range():
    xs = np.linspace(-10, 10, 2001)
    y = erfc(xs)
    assert np.all((y >= 0) & (y <= 2))


def test_static_term_values():
    assert vacuum_static_term(0.0) == pytest.approx(1 / (4 * math.pi), rel=1e-15)
    assert 0 < vacuum_static_term(5.0) < 1e-6
    assert vacuum_static_term(-2.0) > 1 / (4 * math.pi)


def test_static_term_tail_against_asymptotic():
    mp.mp.dps = 40
    w = mp.mpf(5)
    ref = (mp.e ** (-w * w) - mp.sqrt(mp.pi) * w * mp.erfc(w)) / (4 * mp.pi)
    assert vacuum_static_term(5.0) == pytest.approx(float(ref), rel=1e-6)


def test_static_term_strictly_decreasing():
    y = vacuum_static_term(np.linspace(-5, 5, 1000))
    assert np.all(np.diff(y) < 0)


@pytest.mark.parametrize("x", [1e-8, 1e-4, 0.1, 0.49, 0.51, 2.0, -0.3])
def test_cancellation_free_helpers(x):
    mp.mp.dps = 40
    assert x_minus_sin(x) == pytest.approx(float(mp.mpf(x) - mp.sin(x)), rel=1e-14)
    assert sinh_minus_x(x) == pytest.approx(float(mp.sinh(x) - mp.mpf(x)), rel=1e-14)
    arr = np.array([x, 1.0])
    assert x_minus_sin(arr)[0] == pytest.approx(x_minus_sin(x), rel=1e-15)
    assert sinh_minus_x(arr)[0] == pytest.approx(sinh_minus_x(x), rel=1e-15)
