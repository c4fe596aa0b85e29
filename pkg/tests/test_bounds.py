import math

import pytest

from resurgent import classical, faddeev
from resurgent.bounds import ErrorCertificate, OrderOutOfRange, global_constant


def test_reason_forces_failure():
    c = ErrorCertificate("global", 1, 1.0, bound=10.0, reason="hypothesis violated")
    c.judge(1.0)
    assert not c.passed and c.reason == "hypothesis violated"


def test_exceeding_bound_records_reason():
    c = ErrorCertificate("global", 1, 1.0, bound=1e-3).judge(1.0)
    assert not c.passed and "exceeds" in c.reason
    ok = ErrorCertificate("global", 1, 1.0, bound=1.0).judge(1e-3)
    assert ok.passed and ok.reason == ""


def test_nonfinite_bound_never_passes():
    assert not ErrorCertificate("global", 1, 1.0, bound=math.inf).judge(0.0).passed


@pytest.mark.parametrize("pid,w,g", [("gamma", 1.5, 0.5), ("riemann_zeta", 2.0, 0.5)])
def test_global_bound_holds(pid, w, g):
    p = classical.ExampleSpec(pid).build()
    certs = classical.certify_global(p, w, g, 0.75, n_max=4)
    assert certs and all(c.passed for c in certs), [c.reason for c in certs]


def test_wrong_delta1_fails_closed():
    p = classical.zeta_problem(0.75)
    certs = classical.certify_global(p, 2.0, 0.5, 0.75, n_max=1, delta1=0.8)
    assert certs and not any(c.passed for c in certs)
    assert all("delta1" in c.reason for c in certs)


def test_order_out_of_range():
    p = classical.gamma_problem(0.75)
    h = classical.mellin_hypotheses(p, 1.5, 0.5, 0.75)
    with pytest.raises(OrderOutOfRange):
        global_constant(p.function.laurent, h, h.k0 - 2, 0.5)


def test_faddeev_low_order_and_outer_angle():
    assert faddeev.low_order_certificate(1.0, 0.2, -1).passed
    for n in (1, 3):
        assert faddeev.outer_angle_certificate(0.5, 0.1, n).passed


def test_entire_bounds():
    assert classical.hurwitz_entire_certificate(3.0, 1.5, 3).passed
    assert classical.airy_entire_certificate(1.0, 1.0, 2).passed


def test_faddeev_tiers_ordered():
    for n in (1, 2, 3):
        exact, env, weak = faddeev.CtildeF(n)
        assert exact <= env <= weak
