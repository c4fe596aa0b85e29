"""End-to-end acceptance checks, one test per criterion.

Each test records a one-line verdict; the lines are printed in the terminal
summary (see conftest.py).  Reference values are either tabulated constants
or oracles computed here without the transform machinery.
"""
import cmath
import math
import time
from contextlib import contextmanager

import mpmath as mp
import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from resurgent import borel, classical, cli, faddeev
from resurgent.borel import GrowthBound, laplace_along_ray

ROOT_TABLE = {2: 2.42067585291066, 4: 2.64172230058665, 6: 2.75972744591817,
              8: 2.83308766213237, 10: 2.88302232511053}


@contextmanager
def criterion(k: int, title: str, budget: float):
    """Time the block, record PASS/FAIL with a detail string, and enforce the time budget."""
    info = {"detail": ""}
    t0 = time.perf_counter()
    ok = False
    try:
        yield info
        ok = True
    finally:
        dt = time.perf_counter() - t0
        ok = ok and dt < budget
        ACCEPTANCE_LINES.append(f"CRITERION {k}: {'PASS' if ok else 'FAIL'}  {title}  "
                                f"[{info['detail']}; {dt:.2f}s / {budget:g}s]")
    assert dt < budget, f"criterion {k} took {dt:.2f}s (budget {budget}s)"


def test_1_root_table(capsys):
    with criterion(1, "r_n root table", 1.0) as info:
        code = cli.main(["roots", "--orders", "2,4,6,8,10", "--format", "csv"])
        out = capsys.readouterr().out.splitlines()[1:]
        got = {int(line.split(",")[0]): float(line.split(",")[1]) for line in out}
        dev = max(abs(got[n] - v) for n, v in ROOT_TABLE.items())
        info["detail"] = f"max |r_n - table| = {dev:.2e}"
        assert code == 0 and dev <= 1e-10


def test_2_laplace_borel_monomials():
    with criterion(2, "L_theta(B(gamma^m)) = gamma^m", 1.0) as info:
        worst = 0.0
        for theta in (0.0, math.pi / 6, -math.pi / 6):
            gamma = 0.3 * cmath.exp(0.5j * theta)
            for m in range(1, 9):
                psi = lambda xi, m=m: xi ** (m - 1) / math.factorial(m - 1)
                val = laplace_along_ray(psi, GrowthBound(0.0, ((1.0, m - 1),)), theta, gamma,
                                        tol=1e-16 * abs(gamma) ** m)
                worst = max(worst, abs(val - gamma ** m) / abs(gamma ** m))
        info["detail"] = f"max rel err = {worst:.2e}"
        assert worst <= 1e-12


def test_3_dual_borel_representations():
    with criterion(3, "closed-form BwF vs integral representation", 30.0) as info:
        pts = [(w, xi) for w in (0.5, 1.0, 1 + 0.2j) for xi in (0.3, 1 + 0.5j, -2j)]
        worst = 0.0
        for w, xi in pts:
            assert math.pi - abs(complex(w).real) - abs(xi) / math.pi > 0
            d = abs(faddeev.BwF(w, xi) - faddeev.borel_integral(w, xi, tol=1e-12))
            worst = max(worst, d)
        info["detail"] = f"{len(pts)} points, max diff = {worst:.2e}"
        assert worst <= 1e-8


def test_4_laplace_borel_reconstruction():
    with criterion(4, "g = g^- + L_0(BwF)", 30.0) as info:
        worst = 0.0
        for w, gamma in ((1.0, 0.3), (0.5, 0.2), (1 + 0.2j, 0.3 * cmath.exp(0.2j))):
            g = faddeev.eval_gF(w, gamma, tol=1e-12)
            B = faddeev.borel_function(w)
            rec = borel.laplace_borel_reconstruct(faddeev.problem(), w, gamma, B,
                                                  lambda gg: faddeev.g_minus(w, gg), theta=0.0, tol=1e-12)
            worst = max(worst, abs(g - rec))
        info["detail"] = f"3 points, max |g - reconstruction| = {worst:.2e}"
        assert worst <= 1e-6


def test_5_fe_grid():
    with criterion(5, "Faddeev remainder bound, 27 points x 3 tiers", 120.0) as info:
        fails, total = [], 0
        for w in (0.5, 1.0, 1 + 0.2j):
            for gamma in (0.2, 0.1, 0.05 * cmath.exp(0.3j)):
                for n in (1, 2, 3):
                    for c in faddeev.verify_FE(w, gamma, 0.0, n):
                        total += 1
                        if not c.passed:
                            fails.append((w, gamma, n, c.theorem, c.reason))
        info["detail"] = f"{total} certificates, {len(fails)} failures"
        assert total == 81 and not fails, fails


def test_6_global_bound_certification():
    with criterion(6, "global bound for zeta and Gamma, n = k0-1..8", 120.0) as info:
        total, fails = 0, []
        for pid, pts in (("gamma", ((1.5, 0.5), (2.5, 0.3))), ("riemann_zeta", ((2.0, 0.5), (3.0, 0.3)))):
            p = classical.ExampleSpec(pid, alpha=0.75).build()
            for w, gamma in pts:
                certs = classical.certify_global(p, w, gamma, 0.75, n_max=8)
                assert certs[0].n == classical.mellin_hypotheses(p, w, gamma, 0.75).k0 - 1
                total += len(certs)
                fails += [(pid, w, gamma, c.n, c.reason) for c in certs if not c.passed]
        info["detail"] = f"{total} certificates, {len(fails)} failures"
        assert not fails, fails


def _dirichlet_hurwitz(s, q, N=200000):
    # direct sum plus integral tail correction
    n = np.arange(N, dtype=float)
    head = math.fsum((n + q) ** -s)
    x = N + q
    return head + x ** (1 - s) / (s - 1) + 0.5 * x ** -s


def _hyp2f1_series(a, b, c, x, terms=200):
    tot, t = 0.0, 1.0
    for k in range(terms):
        tot += t
        t *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x
    return tot


def _airy_series(x, terms=60):
    c1 = 1 / (3 ** (2 / 3) * math.gamma(2 / 3))
    c2 = 1 / (3 ** (1 / 3) * math.gamma(1 / 3))
    f = g = 0.0
    tf, tg = 1.0, x
    for k in range(terms):
        f, g = f + tf, g + tg
        tf *= x ** 3 / ((3 * k + 2) * (3 * k + 3))
        tg *= x ** 3 / ((3 * k + 3) * (3 * k + 4))
    return c1 * f - c2 * g


def test_7_reference_values():
    with criterion(7, "classical reference values", 60.0) as info:
        checks = {
            "Gamma(1/2)": (classical.gamma_eval(0.5), math.sqrt(math.pi)),
            "zeta(2)": (classical.zeta_eval(2.0), math.pi ** 2 / 6),
            "zeta_H(3,1.5)": (classical.hurwitz_eval(3.0, 1.5), _dirichlet_hurwitz(3.0, 1.5)),
            "2F1(1,1;2;-0.3)": (classical.gauss2f1_eval(-0.3), _hyp2f1_series(1, 1, 2, -0.3)),
            "Ai(1)": (classical.airy_eval(1.0), _airy_series(1.0)),
        }
        devs = {k: abs(v - r) for k, (v, r) in checks.items()}
        info["detail"] = ", ".join(f"{k}: {d:.1e}" for k, d in devs.items())
        assert max(devs.values()) <= 1e-6


def test_8_stokes_jump():
    with criterion(8, "Stokes jump: synthetic pole and Faddeev", 60.0) as info:
        p = 2j
        B1 = borel.BorelFunction(w=0j, evaluate=lambda xi: 1 / (np.asarray(xi, dtype=complex) - p),
                                 poles=lambda R: [p] if abs(p) <= R else [], growth=GrowthBound(0.0))
        gamma = 0.5j
        sd = borel.stokes_jump(B1, math.pi / 2, gamma, tol=1e-12)
        syn = abs(sd.jump - 2j * math.pi * cmath.exp(-p / gamma))
        # Faddeev at w = 1, |gamma| = 0.3, gamma rotated onto the Stokes ray pi/2 so both lateral sums exist
        B = faddeev.borel_function(1.0)
        fd = borel.stokes_jump(B, math.pi / 2, 0.3j, tol=1e-12)
        fad = abs(fd.jump - fd.lateral_difference)
        info["detail"] = f"synthetic err = {syn:.1e}, Faddeev |residues - lateral| = {fad:.1e}"
        assert syn <= 1e-10 and fad <= 1e-6


def test_9_gevrey_radius():
    with criterion(9, "Gevrey-1 growth and Borel radius", 60.0) as info:
        est = faddeev.borel_radius_estimate(1.0, m_max=8)
        target = math.pi * (math.pi - 1)
        rel = abs(est - target) / target
        s = faddeev.gplus_series(1.0, 17)
        # (2m)!-type growth: |c_{2m+1}| / ((2m)! / R^{2m}) stays bounded
        ratios = [abs(s.term(2 * m + 1)) * target ** (2 * m) / math.factorial(2 * m) for m in range(2, 9)]
        info["detail"] = f"radius {est:.5f} vs {target:.5f} (rel {rel:.1e})"
        assert rel <= 0.1
        assert max(ratios) / min(ratios) < 10


def test_10_gamma_series_convergence():
    with criterion(10, "Gamma series converges inside, diverges outside the radius", 60.0) as info:
        alpha, w = 0.75, 1.5
        R = classical.gamma_series_radius(alpha)
        inside, outside = 0.8 * R, 1.2 * R
        s = classical.gamma_series_terms(w, alpha, 240)
        _, ps_in = s.partial_sums(inside)
        ref = classical.gamma_eval(w, inside, alpha)
        oracle = math.gamma(w) * (alpha + (1 - alpha) * inside) ** (-w)
        err_in = abs(ps_in[-1] - ref)
        _, ps_out = s.partial_sums(outside)
        errs_out = np.abs(ps_out - math.gamma(w) * (alpha + (1 - alpha) * outside) ** (-w))
        # beyond the radius the error eventually grows without bound
        diverging = errs_out[-1] > 1e3 * errs_out[:20].min()
        info["detail"] = f"inside err {err_in:.1e} (oracle diff {abs(ref - oracle):.1e}), outside err grows to {errs_out[-1]:.1e}"
        assert err_in <= 1e-8 and abs(ref - oracle) <= 1e-8 and diverging
