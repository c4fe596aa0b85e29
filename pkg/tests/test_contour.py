import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from resurgent.contour import (Contour, arc, cos_theta_bound, integrate, line, make_circle, make_hankel,
                               make_rotated_line, min_modulus, ray, split_at_radius)


def test_circle_residue():
    res = integrate(make_circle(0j, 1.0), lambda z: 1 / z, tol=1e-13)
    assert abs(res.value - 2j * math.pi) < 1e-12


def test_ray_exponential():
    c = Contour((ray(0j, 0.0),))
    res = integrate(c, lambda z: np.exp(-z), tol=1e-13, tail_decay=1.0)
    assert abs(res.value - 1) < 1e-12


def test_reversal_flips_sign_exactly():
    c = make_rotated_line(0.2, 0.1)
    f = lambda z: np.exp(-z * z)
    a = integrate(c, f, tol=1e-12).value
    b = integrate(c.reversed(), f, tol=1e-12).value
    assert a == -b


def test_gaussian_on_shifted_line():
    # Cauchy: the shifted line gives the same value as the real axis
    res = integrate(make_rotated_line(0.0, 0.3), lambda z: np.exp(-z * z), tol=1e-13)
    assert abs(res.value - math.sqrt(math.pi)) < 1e-11


def test_hankel_reciprocal_gamma():
    # 1/Gamma(s) = (1/2 pi i) int_H e^t t^{-s} dt
    for s in (0.5, 1.0, 2.5):
        res = integrate(make_hankel(1.0), lambda t: np.exp(t) * t ** (-s), tol=1e-13)
        assert abs(res.value / (2j * math.pi) - 1 / math.gamma(s)) < 1e-11


@settings(max_examples=25, deadline=None)
@given(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
       st.integers(0, 5))
def test_polynomial_on_segment(a, b, k):
    if abs(a - b) < 1e-3:
        return
    res = integrate(Contour((line(a, b),)), lambda z: z ** k, tol=1e-12)
    exact = (b ** (k + 1) - a ** (k + 1)) / (k + 1)
    assert abs(res.value - exact) <= 1e-10 * max(1, abs(exact))


def test_geometry_helpers():
    assert min_modulus(make_circle(0j, 2.0)) == pytest.approx(2.0)
    assert min_modulus(make_rotated_line(0.0, 0.5)) == pytest.approx(0.5)
    # a ray from the origin is radial: |cos Theta| = 1 everywhere
    assert cos_theta_bound(Contour((ray(0j, 0.7),))) == pytest.approx(1.0)
    # circles about 0 are tangential
    assert cos_theta_bound(make_circle(0j, 1.0)) == pytest.approx(0.0, abs=1e-12)
    # on R + i eps, outside |z| >= r the bound is sqrt(1 - (eps/r)^2)
    eps, r = 0.1, 0.5
    assert cos_theta_bound(make_rotated_line(0.0, eps), outside_radius=r) == pytest.approx(
        math.sqrt(1 - (eps / r) ** 2), rel=1e-9)


def test_split_at_radius_lengths():
    c = make_rotated_line(0.0, 0.0)
    inner, outer = split_at_radius(c, 1.0)
    assert sum(s.length for s in inner.segments) == pytest.approx(2.0)
    assert all(s.kind == "ray" for s in outer.segments)


def test_arc_segment_length():
    a = arc(0j, 2.0, 0.0, math.pi)
    assert a.length == pytest.approx(2 * math.pi)
    assert abs(a.end - (-2)) < 1e-14
