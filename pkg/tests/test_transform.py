import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from resurgent import classical, faddeev
from resurgent.transform import (DomainViolation, MomentTable, assemble_formal_series, evaluate_g, measure_remainder,
                                 moment_h, moments, truncated_series)


@pytest.fixture(scope="module")
def gam():
    return classical.gamma_problem(0.75)


def test_quadrature_moments_match_closed_form(gam):
    w = 1.5
    for m in range(0, 5):
        q = moment_h(gam, m, w, tol=1e-13, table=MomentTable())
        assert abs(q - gam.moment_closed_form(m, w)) < 1e-10 * max(1, abs(q))


def test_faddeev_moments_pinned_to_quadrature():
    p = faddeev.problem()
    w = 0.7 + 0.1j
    for m in (-1, 1, 3, 5):
        q = moment_h(p, m, w, tol=1e-13, table=MomentTable())
        assert abs(q - faddeev.h_closed(m, w)) < 1e-9 * max(1, abs(q))


def test_remainder_equals_difference(gam):
    w, g = 2.0, 0.3
    full = evaluate_g(gam, w, g, tol=1e-13)
    for n in (0, 2, 4):
        rem = measure_remainder(gam, n, w, g, tol=1e-13).value
        diff = full - truncated_series(gam, n, w, g, closed_form=True)
        assert abs(rem - diff) < 1e-10


def test_truncation_below_pole_order_is_zero(gam):
    assert truncated_series(gam, -1, 1.0, 0.5) == 0
    assert truncated_series(faddeev.problem(), -2, 1.0, 0.5) == 0


def test_domain_checks(gam):
    with pytest.raises(DomainViolation):
        evaluate_g(gam, 1.0, 0.0)
    with pytest.raises(DomainViolation):
        evaluate_g(faddeev.problem(), 3.5, 0.2)  # |Re w| >= pi
    with pytest.raises(ValueError):
        moment_h(gam, -1, 1.0)


def test_moment_table_persistence(tmp_path, gam):
    path = str(tmp_path / "cache" / "moments.json")
    t = MomentTable(path)
    v = moment_h(gam, 2, 1.25, tol=1e-12, table=t)
    assert len(t) == 1
    t2 = MomentTable(path)
    assert t2.get(gam.id, 2, 1.25, 1e-12)[0] == v
    # a different tolerance is a different key
    assert t2.get(gam.id, 2, 1.25, 1e-11) is None


def test_corrupt_cache_is_ignored(tmp_path):
    p = tmp_path / "m.json"
    p.write_text("{not json")
    assert len(MomentTable(str(p))) == 0


@settings(max_examples=15, deadline=None)
@given(st.floats(0.6, 3.0), st.floats(0.05, 0.4))
def test_gamma_transform_oracle(w, g):
    # int over the Hankel-type contour gives Gamma(w)(alpha + (1 - alpha) gamma)^{-w}
    p = classical.gamma_problem(0.75)
    val = evaluate_g(p, w, g, tol=1e-12)
    ref = math.gamma(w) * (0.75 + 0.25 * g) ** (-w)
    assert abs(val - ref) < 1e-9 * max(1, abs(ref))


def test_formal_series_split(gam):
    s = assemble_formal_series(gam, 1.5, 6, closed_form=True)
    assert s.value(0.2) == pytest.approx(truncated_series(gam, 6, 1.5, 0.2, closed_form=True))
    hs = moments(gam, 1.5, 3, closed_form=True)
    assert set(hs) == {0, 1, 2, 3}
