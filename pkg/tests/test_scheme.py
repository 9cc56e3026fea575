import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dubovsky.errors import ConfigError
from dubovsky.scheme import gamma_eval, memory_weights, scheme_coefficient

# high-precision references, computed with mpmath at 30 digits
GAMMA_1_2 = 0.918168742399760610640951655186
COEF_08_01 = 6.87191052519495740633880389617  # 10**0.8 / Gamma(1.2)
PREFIX_08_3 = 0.31950791077289425937400197123  # 4**0.2 - 1


def test_gamma_integers():
    assert gamma_eval(1.0) == 1.0
    assert gamma_eval(2.0) == 1.0


def test_gamma_against_mpmath():
    assert gamma_eval(1.2) == pytest.approx(GAMMA_1_2, rel=1e-12)
    for x in np.linspace(1.0, 2.0, 101):
        ref = float(mpmath.gamma(mpmath.mpf(float(x))))
        assert gamma_eval(x) == pytest.approx(ref, rel=1e-12)


@given(st.floats(min_value=1.0, max_value=2.0))
def test_gamma_recurrence(x):
    assert gamma_eval(x + 1.0) == pytest.approx(x * gamma_eval(x), rel=1e-12)


@pytest.mark.parametrize("bad", [0.0, -1.5, math.nan, math.inf])
def test_gamma_domain(bad):
    with pytest.raises(ValueError):
        gamma_eval(bad)


@pytest.mark.parametrize(
    "order, tau, expected",
    [(1.0, 0.1, 10.0), (1.0, 0.5, 2.0), (0.8, 0.1, COEF_08_01)],
)
def test_scheme_coefficient(order, tau, expected):
    assert scheme_coefficient(order, tau) == pytest.approx(expected, rel=1e-12)


def test_scheme_coefficient_errors():
    with pytest.raises(ValueError):
        scheme_coefficient(0.5, 0.0)
    with pytest.raises(ConfigError):
        scheme_coefficient(1.2, 0.1)
    with pytest.raises(ConfigError):
        scheme_coefficient(0.0, 0.1)


@given(st.floats(min_value=0.01, max_value=1.0), st.floats(min_value=1e-4, max_value=10.0))
def test_scheme_coefficient_positive(order, tau):
    assert scheme_coefficient(order, tau) > 0.0


def test_weights_examples():
    assert np.all(memory_weights(1.0, 100) == 0.0)
    assert memory_weights(0.5, 1)[0] == pytest.approx(math.sqrt(2) - 1, rel=1e-14)
    assert memory_weights(0.8, 3).sum() == pytest.approx(PREFIX_08_3, rel=1e-14)
    assert len(memory_weights(0.3, 0)) == 0


def test_weights_read_only():
    w = memory_weights(0.5, 5)
    with pytest.raises(ValueError):
        w[0] = 1.0


@settings(max_examples=50)
@given(st.floats(min_value=0.01, max_value=0.999), st.integers(min_value=1, max_value=2000))
def test_weights_properties(order, count):
    w = memory_weights(order, count)
    assert np.all(w >= 0.0) and np.all(w < 1.0)
    assert w[0] == pytest.approx(2.0 ** (1.0 - order) - 1.0, rel=1e-13)
    assert np.all(np.diff(w) < 0.0)
    m = np.arange(1, count + 1)
    err = np.abs(np.cumsum(w) - ((1.0 + m) ** (1.0 - order) - 1.0))
    assert np.all(err <= 1e-12 * m)
