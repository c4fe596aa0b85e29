import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from resurgent import borel
from resurgent.borel import (BorelFunction, GrowthBound, Inadmissible, PolePart, admissible, laplace_along_ray,
                             laplace_borel_reconstruct, stokes_jump)


def simple_pole(p):
    return BorelFunction(w=0j, evaluate=lambda xi: 1 / (np.asarray(xi, dtype=complex) - p),
                         poles=lambda R: [p] if abs(p) <= R else [], growth=GrowthBound(0.0))


def test_admissibility():
    assert admissible(0.0, 0.3)
    assert not admissible(2.0, 0.3)
    assert not admissible(0.0, 0.3, alpha=4.0)  # cos/|gamma| = 3.3 < 4
    with pytest.raises(Inadmissible):
        laplace_along_ray(lambda x: x, None, math.pi, 1.0)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6), st.floats(-math.pi / 4, math.pi / 4), st.floats(0.1, 0.8))
def test_laplace_inverts_borel_on_monomials(m, theta, r):
    gamma = r * cmath.exp(0.5j * theta)
    psi = lambda xi: xi ** (m - 1) / math.factorial(m - 1)
    val = laplace_along_ray(psi, GrowthBound(0.0, ((1.0, m - 1),)), theta, gamma, tol=1e-15 * abs(gamma) ** m)
    assert abs(val - gamma ** m) <= 1e-11 * abs(gamma) ** m


def test_synthetic_stokes_jump():
    p = 2j
    for gamma in (0.5j, 0.4 * cmath.exp(1.2j)):
        sd = stokes_jump(simple_pole(p), math.pi / 2, gamma, tol=1e-12)
        exact = 2j * math.pi * cmath.exp(-p / gamma)
        assert abs(sd.jump - exact) < 1e-10
        assert abs(sd.lateral_difference - exact) < 1e-9


def test_stokes_needs_admissible_gamma():
    with pytest.raises(Inadmissible):
        stokes_jump(simple_pole(2j), math.pi / 2, -0.5j)


def test_sector_impurity():
    two = BorelFunction(w=0j, evaluate=lambda xi: 1 / (xi - 2j) + 1 / (xi - 2 * cmath.exp(1.5j)),
                        poles=lambda R: [2j, 2 * cmath.exp(1.5j)], growth=GrowthBound(0.0))
    with pytest.raises(borel.SectorImpurity):
        stokes_jump(two, math.pi / 2, 0.5j, eps=0.2)


def test_reconstruct_with_constant_borel():
    # B = 1 is the Borel transform of gamma; g- = 0
    B = BorelFunction(w=0j, evaluate=lambda xi: np.ones_like(np.asarray(xi, dtype=complex)), growth=GrowthBound(0.0))
    assert abs(laplace_borel_reconstruct(None, 0, 0.3, B, 0.0) - 0.3) < 1e-12


def test_pole_sum_of_geometric_principal_parts():
    # f(u) = sum_n 1/(u - p_n) restricted to two poles; kernel moments of a point mass at z = 1:
    # int delta(z - 1) e^{z xi/p} (z/p)^k dz
    parts = [PolePart(2.0, (1.0,)), PolePart(-3.0, (0.5,))]
    km = lambda p, k, xi: cmath.exp(xi / p) / p ** k
    xi = 0.7
    val = borel.borel_via_pole_sum(parts, km, xi)
    # b/(gamma z - p) = -(b/p) sum (gamma z/p)^m has Borel transform -(b/p)(z/p) e^{z xi/p}
    ref = sum(-(pp.coeffs[0] / pp.p ** 2) * cmath.exp(xi / pp.p) for pp in parts)
    assert abs(val - ref) < 1e-12


def test_alpha_theta_unbounded_ray():
    from resurgent.transform import HypothesisViolation
    from resurgent.contour import Contour, ray
    with pytest.raises(HypothesisViolation):
        borel.alpha_theta([1.0], Contour((ray(0j, 0.0),)), 0.0)
    assert borel.alpha_theta([1.0], None, 0.0) == 0.0
