import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from resurgent.series import (FormalGammaSeries, LaurentSeries, SeriesError, bernoulli_fraction,
                              borel_transform, exp_series, formal_laplace)


def test_bernoulli_numbers():
    assert bernoulli_fraction(0) == 1
    assert bernoulli_fraction(2) == Fraction(1, 6)
    assert bernoulli_fraction(4) == Fraction(-1, 30)
    assert bernoulli_fraction(12) == Fraction(-691, 2730)
    assert bernoulli_fraction(7) == 0


def test_exp_phi_matches_expm1():
    s = exp_series()
    u = np.array([1e-8, 1e-3, 0.3 + 0.2j, 2.0, -4 + 1j])
    # phi_0(u) = e^u - 1
    assert np.allclose(s.phi(u, 0), np.expm1(u), rtol=1e-13, atol=0)


@settings(max_examples=40, deadline=None)
@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), st.integers(0, 10))
def test_phi_plus_poly_is_f(u, n):
    s = exp_series()
    total = s.phi(np.array([u]), n)[0] + s.poly(np.array([u]), n)[0]
    assert abs(total - np.exp(u)) <= 1e-12 * max(1.0, abs(np.exp(u)))


def test_laurent_validation():
    with pytest.raises(SeriesError):
        LaurentSeries(1, np.array([0.0, 1.0]))
    with pytest.raises(SeriesError):
        LaurentSeries(-1, np.array([1.0]))


def test_borel_laplace_roundtrip():
    ms = np.arange(-1, 7)
    terms = np.array([2.0, 0, 1, -0.5, 0.25, 3, 1e-2, 7], dtype=complex)
    g = FormalGammaSeries(ms, terms, split=1)
    b, (mminus, cminus) = borel_transform(g)
    mback, cback = formal_laplace(b)
    assert list(mminus) == [-1, 0]
    assert np.allclose(cback, terms[2:])
    assert list(mback) == list(range(1, 7))


def test_value_and_partial_sums():
    g = FormalGammaSeries(np.arange(0, 4), np.ones(4, dtype=complex), split=0)
    assert g.value(0.5) == pytest.approx(1 + 0.5 + 0.25 + 0.125)
    assert g.value(0.5, n=1) == pytest.approx(1.5)
    ms, ps = g.partial_sums(0.5)
    assert ps[-1] == pytest.approx(g.value(0.5))
