import cmath
import json
import math
from importlib import resources

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from resurgent import faddeev


def test_inv_sinh_coefficients_against_taylor():
    # independent: mpmath Taylor coefficients of u/sinh(u), shifted by one
    ref = mp.taylor(lambda u: u / mp.sinh(u) if u != 0 else mp.mpf(1), 0, 14)
    for m in range(-1, 14):
        assert faddeev.inv_sinh_coeff(m) == pytest.approx(float(ref[m + 1]), rel=1e-14, abs=1e-300)


def test_inv_sinh_large_order_branch():
    # zeta-formula regime agrees with the Bernoulli regime at the handover
    a = faddeev.inv_sinh_coeff(119)
    b = float(mp.taylor(lambda u: u / mp.sinh(u) if u != 0 else mp.mpf(1), 0, 120)[120])
    assert a == pytest.approx(b, rel=1e-12)


def test_kernel_is_overflow_safe():
    z = np.array([400 + 0.1j, -400 + 0.1j])
    v = faddeev.kernel(1.0, z)
    assert np.all(np.isfinite(v)) and np.all(np.abs(v) < 1e-300)


def test_roots_match_golden_file():
    with resources.files("resurgent").joinpath("data/faddeev_roots.json").open() as fh:
        gold = json.load(fh)["roots"]
    for n, v in gold.items():
        assert abs(faddeev.rn_root(int(n)) - v) < 1e-10


def test_BwF_at_origin():
    # B(0) = c_1 = a_1 h_1(w) = (-1/6)(-2i)(-1) Li_0(-e^{iw}) ... = i/(3(1 + e^{-iw}))
    for w in (1.0, 0.4 + 0.3j):
        assert abs(faddeev.BwF(w, 0) - 1j / (3 * (1 + cmath.exp(-1j * w)))) < 1e-14


def test_BwF_taylor_coefficients():
    w = 0.8
    b = faddeev.borel_coefficients(w, 6)
    xi = 0.05
    series = sum(b[l] * xi ** l for l in range(7))
    assert abs(faddeev.BwF(w, xi) - series) < 1e-10


def test_BwF_vectorised_equals_scalar():
    xs = np.array([0.1, 0.5 + 0.2j, 2.0])
    vec = faddeev.BwF(1.0, xs)
    assert np.allclose(vec, [faddeev.BwF(1.0, x) for x in xs], rtol=1e-14)


def test_BwF_rejects_poles():
    p = faddeev.BwF_poles(1.0, 1, 0)[0]
    with pytest.raises(ValueError):
        faddeev.BwF(1.0, p)


def test_BwF_pole_locations():
    # 1/(1 + e^{-iw}) has poles at w = pi + 2 pi k; BwF blows up approaching i pi (pi - w)
    w = 1.0
    p = 1j * math.pi * (math.pi - w)
    near = [abs(faddeev.BwF(w, p * (1 - t))) for t in (1e-2, 1e-3, 1e-4)]
    assert near[0] < near[1] < near[2]


def test_fe_certificate_passes():
    certs = faddeev.verify_FE(1.0, 0.2, 0.0, 2)
    assert [c.theorem for c in certs] == ["faddeev_exact", "faddeev_envelope", "faddeev_weakest"]
    assert all(c.passed for c in certs)


def test_log_S_matches_mpmath_oracle():
    # independent quadrature of (1/4) int e^{wz}/(sinh(pi z) z sinh(gamma z)) dz over R + i/2 with mpmath
    w, g = 1.0, 0.6
    f = lambda x: mp.exp(w * (x + 0.5j)) / (mp.sinh(mp.pi * (x + 0.5j)) * (x + 0.5j) * mp.sinh(g * (x + 0.5j)))
    ref = complex(mp.quad(f, [-mp.inf, -5, 0, 5, mp.inf])) / 4
    assert abs(faddeev.eval_gF(w, g, tol=1e-12) / 4 - ref) < 1e-9


@settings(max_examples=10, deadline=None)
@given(st.floats(-2.0, 2.0), st.floats(-0.5, 0.5), st.floats(0.02, 0.3), st.floats(-0.4, 0.4),
       st.integers(1, 3))
def test_fe_bound_holds(wr, wi, r, tg, n):
    certs = faddeev.verify_FE(complex(wr, wi), r * cmath.exp(1j * tg), 0.0, n)
    assert all(c.passed for c in certs), [(c.theorem, c.measured, c.bound, c.reason) for c in certs]


def test_gevrey_radius():
    est = faddeev.borel_radius_estimate(1.0)
    assert abs(est - math.pi * (math.pi - 1)) / (math.pi * (math.pi - 1)) < 0.1
    assert faddeev.nearest_pole_modulus(1.0) == pytest.approx(math.pi * (math.pi - 1))


def test_remainder_against_mpmath_difference():
    # Log S - P^{2n} with Log S from an independent mpmath quadrature; gamma large enough that
    # the remainder is well above the oracle's accuracy
    w, g, n = 0.5, 0.6, 1
    mp.mp.dps = 30
    f = lambda x: mp.exp(w * (x + 0.5j)) / (mp.sinh(mp.pi * (x + 0.5j)) * (x + 0.5j) * mp.sinh(g * (x + 0.5j)))
    logS = complex(mp.quad(f, [-mp.inf, -5, 0, 5, mp.inf])) / 4
    mp.mp.dps = 15
    ref = logS - faddeev.P2n(w, g, n)
    val, err = faddeev.remainder(w, g, n)
    assert abs(val - ref) < 1e-10
