import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geometry import clausen2, lobachevsky

mpmath.mp.dps = 30


def reference_lobachevsky(theta: float) -> float:
    return float(mpmath.clsin(2, 2 * mpmath.mpf(theta)) / 2)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-10.0, max_value=10.0, allow_nan=False))
def test_matches_high_precision_clausen(theta):
    assert lobachevsky(theta) == pytest.approx(reference_lobachevsky(theta), abs=1e-14)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=-20.0, max_value=20.0, allow_nan=False))
def test_clausen_matches_high_precision(phi):
    assert clausen2(phi) == pytest.approx(float(mpmath.clsin(2, mpmath.mpf(phi))), abs=1e-14)


def test_known_values():
    assert lobachevsky(math.pi / 3) == pytest.approx(0.33831386880321787, abs=1e-15)
    assert lobachevsky(math.pi / 6) == pytest.approx(0.5074708032048268, abs=1e-15)
    # regular ideal tetrahedron
    assert 3 * lobachevsky(math.pi / 3) == pytest.approx(1.0149416064096536, abs=1e-14)


def test_zeros_symmetry_and_period():
    assert lobachevsky(0.0) == 0.0
    assert lobachevsky(math.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert lobachevsky(math.pi) == pytest.approx(0.0, abs=1e-15)
    theta = np.linspace(-3.0, 3.0, 41)
    assert np.allclose(lobachevsky(-theta), -lobachevsky(theta), atol=1e-15)
    assert np.allclose(lobachevsky(theta + math.pi), lobachevsky(theta), atol=1e-14)


def test_maximum_at_pi_over_six():
    theta = np.linspace(0.01, math.pi / 2 - 0.01, 500)
    values = lobachevsky(theta)
    assert abs(theta[np.argmax(values)] - math.pi / 6) < 0.01


def test_array_input_keeps_shape():
    values = lobachevsky(np.zeros((3, 2)))
    assert values.shape == (3, 2)
    assert isinstance(lobachevsky(0.5), float)
