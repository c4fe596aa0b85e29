"""Faddeev's quantum dilogarithm as a meromorphic transform.

g_gamma(w) = int e^{w z} / (sinh(pi z) z sinh(gamma z)) dz over the rotated line
e^{i theta~}(R + i eps), and Log S_gamma(w) = g_gamma(w)/4.

Kernel K(w, z) = e^{w z}/(sinh(pi z) z) (pole order k0 = 2 at 0), function
f = 1/sinh (n0 = 1, R_f = pi).  The moments have closed forms in terms of
polylogarithms:

    h_{-1}(w)     = -2i Li_2(-e^{iw}),
    h_{2m-1}(w)   = -2i (-1)^m Li_{2-2m}(-e^{iw}),   so h_1 = -2i/(1 + e^{-iw}).

The Borel transform of the g+ part (split index 1) is

    B_w(xi) = 2/(i pi^2) sum_{n>=1} (-1)^n/n^2 [F(w + i xi/(pi n)) + F(w - i xi/(pi n))],
    F(w) = 1/(1 + e^{-iw}),

with poles at +-i pi n (pi - w + 2 pi k), n >= 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import mpmath as mp
import numpy as np
from scipy import optimize
from scipy.special import zeta as _hzeta

from .bounds import DecayHypotheses, ErrorCertificate, QUAD_SLACK
from .contour import Contour, arc, incoming_ray, make_rotated_line, ray
from .series import LaurentSeries, bernoulli_fraction
from .transform import (FunctionSpec, KernelSpec, TransformProblem, evaluate_g, measure_remainder)

C_F = math.sqrt(2) / (math.sqrt(math.pi) * (1 - math.exp(-2)))
DEFAULT_EPS = 0.5  # offset of the integration line; clamped below the nearest non-origin pole
OUTER_EPS = 1e-2  # offset used by the outer-angle certificate, where a thin strip keeps b(r) close to 1


# ----------------------------------------------------------------------------
# elementary pieces, written to avoid overflow

def inv_sinh(u):
    """1/sinh(u) for complex arrays, via e^{-|Re u|} forms."""
    u = np.asarray(u, dtype=complex)
    out = np.empty(u.shape, dtype=complex)
    pos = u.real >= 0
    with np.errstate(all="ignore"):
        up = u[pos]
        out[pos] = 2 * np.exp(-up) / (1 - np.exp(-2 * up))
        un = u[~pos]
        out[~pos] = -2 * np.exp(un) / (1 - np.exp(2 * un))
    return out


def kernel(w, z):
    """e^{wz}/(sinh(pi z) z), written so that neither factor overflows."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape, dtype=complex)
    pos = z.real >= 0
    with np.errstate(all="ignore"):
        zp = z[pos]
        out[pos] = 2 * np.exp((w - np.pi) * zp) / ((1 - np.exp(-2 * np.pi * zp)) * zp)
        zn = z[~pos]
        out[~pos] = -2 * np.exp((w + np.pi) * zn) / ((1 - np.exp(2 * np.pi * zn)) * zn)
    return out


def F(w):
    """1/(1 + e^{-iw})."""
    w = np.asarray(w, dtype=complex)
    with np.errstate(all="ignore"):
        e = np.exp(-1j * w)
        out = 1.0 / (1.0 + e)
    return np.where(np.isinf(e), 0.0, out)


@lru_cache(maxsize=None)
def _a_exact(m: int) -> float:
    # 2(1 - 2^{2k-1}) B_{2k} / (2k)!, m = 2k - 1
    k = (m + 1) // 2
    val = 2 * (1 - mp.mpf(2) ** (2 * k - 1)) * mp.mpf(bernoulli_fraction(2 * k).numerator) \
        / bernoulli_fraction(2 * k).denominator / mp.factorial(2 * k)
    return float(val)


def inv_sinh_coeff(m: int) -> float:
    """Laurent coefficient a_m of 1/sinh at 0 (a_{-1} = 1, even m vanish)."""
    if m < -1 or m % 2 == 0:
        return 0.0
    if m == -1:
        return 1.0
    k = (m + 1) // 2
    if 2 * k <= 120:
        return _a_exact(m)
    # |B_2k|/(2k)! = 2 zeta(2k)/(2 pi)^{2k}
    return (-1) ** k * 2 * (1 - 2.0 ** (1 - 2 * k)) * float(_hzeta(2 * k, 1)) / math.pi ** (2 * k) \
        if k < 400 else 0.0


def inv_sinh_series(M: int = 64) -> LaurentSeries:
    return LaurentSeries.from_callable(inv_sinh_coeff, 1, M, math.pi, inv_sinh)


# ----------------------------------------------------------------------------
# moments

def _polylog_arg(w):
    return -mp.exp(1j * mp.mpc(w))


def h_closed(m: int, w) -> complex:
    """Closed-form moment h_m(w) for m = -1 and odd m >= 1."""
    with mp.workdps(30):
        u = _polylog_arg(complex(w))
        if m == -1:
            return complex(-2j * mp.polylog(2, u))
        if m >= 1 and m % 2 == 1:
            k = (m + 1) // 2
            return complex(-2j * (-1) ** k * mp.polylog(2 - 2 * k, u))
    raise ValueError("closed forms exist for m = -1 and odd m >= 1")


def F_derivatives(w, J: int):
    """[F^{(2j)}(w) for j = 0..J] via d^k F = -i^k Li_{-k}(-e^{iw})."""
    return list(_F_derivatives(complex(w), int(J)))


@lru_cache(maxsize=256)
def _F_derivatives(w: complex, J: int) -> tuple:
    with mp.workdps(30):
        u = _polylog_arg(w)
        return tuple(complex(-(1j) ** (2 * j) * mp.polylog(-2 * j, u)) for j in range(J + 1))


# ----------------------------------------------------------------------------
# domains and contours

@dataclass(frozen=True)
class FaddeevDomain:
    """W: -pi cos(t) + delta < Re(w e^{i t}) < pi cos(t) - delta;  U: cos(t - arg gamma) > 0."""

    theta_tilde: float = 0.0
    delta: float = 0.5

    def __post_init__(self):
        if abs(self.theta_tilde) >= math.pi / 2:
            raise ValueError("|theta_tilde| must be < pi/2")
        if not (0 < self.delta < math.pi * math.cos(self.theta_tilde)):
            raise ValueError("delta must lie in (0, pi cos theta_tilde)")

    def projection(self, w) -> float:
        return (complex(w) * complex(math.cos(self.theta_tilde), math.sin(self.theta_tilde))).real

    def in_W(self, w) -> bool:
        lim = math.pi * math.cos(self.theta_tilde) - self.delta
        return -lim < self.projection(w) < lim

    def in_U(self, gamma) -> bool:
        gamma = complex(gamma)
        return gamma != 0 and math.cos(self.theta_tilde - math.atan2(gamma.imag, gamma.real)) > 0


def max_delta(w, theta_tilde: float = 0.0) -> float:
    """Largest admissible delta for w (the W-condition is open, so shrink by 1e-9)."""
    proj = (complex(w) * complex(math.cos(theta_tilde), math.sin(theta_tilde))).real
    d = math.pi * math.cos(theta_tilde) - abs(proj)
    if d <= 0:
        raise ValueError(f"w={w} outside every W-domain for theta_tilde={theta_tilde}")
    return d * (1 - 1e-9)


def kernel_decay(w, theta_tilde: float = 0.0) -> float:
    proj = (complex(w) * complex(math.cos(theta_tilde), math.sin(theta_tilde))).real
    return math.pi * math.cos(theta_tilde) - abs(proj)


def shifted_contour(theta_tilde: float = 0.0, eps: float = DEFAULT_EPS) -> Contour:
    """e^{i theta~}(R + i eps), split at its point nearest 0."""
    return make_rotated_line(theta_tilde, eps)


def safe_offset(eps: float, theta_tilde: float, gamma=None) -> float:
    """Shrink eps to half the offset of the nearest pole above the line e^{i theta~} R.

    Poles of the kernel sit at i Z and those of 1/sinh(gamma z) at i pi Z / gamma;
    the integral is unchanged as long as none of them lies between the line
    and its shift.
    """
    rot = complex(math.cos(theta_tilde), math.sin(theta_tilde))
    poles = [1j * k for k in (1, 2, 3)]
    if gamma is not None and gamma != 0:
        poles += [1j * math.pi * k / complex(gamma) for k in (-1, 1)]
    for p in poles:
        off = (p / rot).imag
        if off > 0:
            eps = min(eps, 0.5 * off)
    return eps


def wedge_contour(rho: float = 0.5, psi: float = math.pi / 6) -> Contour:
    """Two rays from the apex i rho rising at angle psi to the left and right.

    Both arms point away from the origin, so |cos Theta| >= sin(psi) everywhere
    and the distance to 0 is rho.  For rho < 1 no pole of the kernel (at i Z)
    lies between this contour and R + i eps.
    """
    if not (0 < rho < 1) or not (0 < psi < math.pi / 2):
        raise ValueError("need 0 < rho < 1 and 0 < psi < pi/2")
    apex = complex(0, rho)
    left, _ = incoming_ray(apex, math.pi - psi)
    return Contour((left, ray(apex, psi)), (-1, 1), label=f"wedge({rho:g},{psi:g})")


def problem(theta_tilde: float = 0.0, eps: float = DEFAULT_EPS, delta: Optional[float] = None,
            M: int = 64) -> TransformProblem:
    lau = inv_sinh_series(M)

    def in_W(w):
        try:
            d = max_delta(w, theta_tilde)
        except ValueError:
            return False
        return delta is None or d >= delta

    dom = FaddeevDomain(theta_tilde, 0.5)
    ker = KernelSpec(kernel, 2, lambda w: kernel_decay(w, theta_tilde),
                     R_K=lambda w: 1.0, poles=lambda w: [1j * k for k in range(-3, 4) if k])
    fun = FunctionSpec(inv_sinh, lau, 0.0, c=C_F,
                       c_tilde=lambda g: C_F / math.cos(theta_tilde - math.atan2(complex(g).imag, complex(g).real)),
                       poles=lambda g: [1j * math.pi * k / g for k in range(-3, 4) if k])

    def tail(w, gamma):
        d = kernel_decay(w, theta_tilde)
        if gamma is not None:
            g = complex(gamma)
            d += abs(g) * math.cos(theta_tilde - math.atan2(g.imag, g.real))
        return max(d, 1e-3)

    return TransformProblem(
        id="faddeev", kernel=ker, function=fun,
        contour=lambda w, g: shifted_contour(theta_tilde, safe_offset(eps, theta_tilde, g)),
        deformed=lambda w, g: shifted_contour(theta_tilde, safe_offset(eps, theta_tilde, g)),
        in_W=in_W, in_U=dom.in_U, split=1, moment_closed_form=h_closed,
        tail_decay=tail, params={"theta_tilde": theta_tilde, "eps": eps},
        description="Faddeev quantum dilogarithm, 4 Log S_gamma(w)")


# ----------------------------------------------------------------------------
# evaluation

def eval_gF(w, gamma, theta_tilde: float = 0.0, tol: float = 1e-12, eps: float = DEFAULT_EPS) -> complex:
    """g_gamma(w) = 4 Log S_gamma(w) by quadrature over e^{i theta~}(R + i eps)."""
    return evaluate_g(problem(theta_tilde, eps), w, gamma, tol)


def eval_S(w, gamma, theta_tilde: float = 0.0, tol: float = 1e-12) -> complex:
    return complex(np.exp(eval_gF(w, gamma, theta_tilde, tol) / 4))


def P2n(w, gamma, n: int, closed_form: bool = True, theta_tilde: float = 0.0, tol: float = 1e-13) -> complex:
    """(1/4) sum_{m=0}^{n} a_{2m-1} gamma^{2m-1} h_{2m-1}(w)."""
    if n < 0:
        return 0j
    p = problem(theta_tilde)
    terms = []
    for m in range(0, n + 1):
        k = 2 * m - 1
        h = h_closed(k, w) if closed_form else _moment_quad(p, k, w, tol)
        terms.append(inv_sinh_coeff(k) * complex(gamma) ** k * h)
    return 0.25 * complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def _moment_quad(p, m, w, tol):
    from .transform import moment_h
    return moment_h(p, m, w, tol)


# ----------------------------------------------------------------------------
# constant chain

def _root_fun(r, n):
    return C_F * (n + 1) * math.sin(r) ** 2 + n * r * math.sin(r) + r * r * math.cos(r)


def rn_root(n: int) -> float:
    """Minimiser r_n in (0, pi) of r^{-n}(c^F/r + 1/sin r), for series order n >= 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lo, hi = (0.75 * math.pi, math.pi - 1e-12) if n >= 2 else (1e-6, math.pi - 1e-12)
    if _root_fun(lo, n) * _root_fun(hi, n) > 0:
        grid = np.linspace(1e-6, math.pi - 1e-9, 4001)
        vals = np.array([_root_fun(r, n) for r in grid])
        idx = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
        if idx.size == 0:
            raise ValueError("no sign change found")
        lo, hi = grid[idx[-1]], grid[idx[-1] + 1]
    r = optimize.brentq(_root_fun, lo, hi, args=(n,), xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    # Newton polish
    for _ in range(3):
        s, c = math.sin(r), math.cos(r)
        df = C_F * (n + 1) * 2 * s * c + n * (s + r * c) + 2 * r * c - r * r * s
        step = _root_fun(r, n) / df
        r -= step
        if abs(step) < 1e-16:
            break
    return r


def b_n(r: float, n: int) -> float:
    return r ** (-n) * (C_F / r + 1 / math.sin(r))


def cprime(order: int) -> float:
    """c'_n = b_n(r_n) for the Faddeev data (kappa = 1/sin, c = c^F)."""
    return b_n(rn_root(order), order)


def cprime_envelope(n: int) -> float:
    """(4 c^F/(3 pi) + sqrt 2)(2/3)^{2n}(2/pi)^{2n}: upper bound for c'_{2n}."""
    return (4 * C_F / (3 * math.pi) + math.sqrt(2)) * (2 / 3) ** (2 * n) * (2 / math.pi) ** (2 * n)


def CtildeF(n: int, theta_tilde: float = 0.0, theta_gamma: float = 0.0):
    """(exact, envelope, weakest) tiers of the order-2n Faddeev constant."""
    cg = math.cos(theta_tilde - theta_gamma)
    if cg <= 0:
        raise ValueError("need cos(theta_tilde - theta_gamma) > 0")
    if n < 1:
        raise ValueError("n must be a positive integer")
    denom = (1 - math.exp(-2 * math.pi * math.cos(theta_tilde))) * cg
    pref = 4 * math.sqrt(2) / (math.pi * math.sqrt(4 * n - 3)) / (1 - 1 / (2 * n)) ** (2 * n - 1)
    exact = pref * cprime(2 * n) / denom
    envelope = pref * (math.sqrt(2) + 4 * C_F / (3 * math.pi)) * (2 / 3) ** (2 * n) * (2 / math.pi) ** (2 * n) / denom
    weakest = 3 * (2 / math.pi) ** (2 * n) / denom
    if not (exact <= envelope * (1 + 1e-12) and envelope <= weakest * (1 + 1e-12)):
        raise ArithmeticError("tier ordering violated")
    return exact, envelope, weakest


def remainder(w, gamma, n: int, theta_tilde: float = 0.0, tol: float = 1e-15):
    """Log S_gamma(w) - P^{2n}_gamma(w), measured as (1/4) int K phi_{2n-1}(gamma z) dz."""
    res = measure_remainder(problem(theta_tilde), 2 * n - 1, w, gamma, tol=4 * tol)
    return res.value / 4, res.error / 4


def verify_FE(w, gamma, theta_tilde: float = 0.0, n: int = 1, delta: Optional[float] = None,
              tol: Optional[float] = None):
    """Certificates for |Log S - P^{2n}| <= C~_{2n} |gamma|^{2n} delta^{-2n} (2n)!, one per tier."""
    dom_delta = max_delta(w, theta_tilde) if delta is None else delta
    FaddeevDomain(theta_tilde, dom_delta)  # validates delta
    if not FaddeevDomain(theta_tilde, dom_delta).in_W(w):
        from .transform import DomainViolation
        raise DomainViolation(f"w={w} not in W for delta={dom_delta}")
    g = complex(gamma)
    tg = math.atan2(g.imag, g.real)
    if math.cos(theta_tilde - tg) <= 0:
        from .transform import DomainViolation
        raise DomainViolation(f"gamma={gamma} not in U for theta_tilde={theta_tilde}")
    tiers = CtildeF(n, theta_tilde, tg)
    scale = abs(g) ** (2 * n) * dom_delta ** (-2 * n) * math.factorial(2 * n)
    bounds = [t * scale for t in tiers]
    qtol = tol if tol is not None else max(min(bounds) * QUAD_SLACK, 1e-16)
    val, err = remainder(w, gamma, n, theta_tilde, qtol)
    certs = []
    for name, C, b in zip(("exact", "envelope", "weakest"), tiers, bounds):
        c = ErrorCertificate("faddeev_" + name, 2 * n, C, b, w=complex(w), gamma=g,
                             extra={"delta": dom_delta, "theta_tilde": theta_tilde})
        certs.append(c.judge(abs(val), err))
    return certs


# ----------------------------------------------------------------------------
# Borel plane

@lru_cache(maxsize=None)
def _alt_tail_cached(s: int, N0: int) -> float:
    # sum_{n > N0} (-1)^n n^{-s} = (-1)^{N0+1} 2^{-s} [zeta(s, (N0+1)/2) - zeta(s, (N0+2)/2)]
    with mp.workdps(40):
        v = (-1) ** (N0 + 1) * mp.mpf(2) ** (-s) * (mp.zeta(s, mp.mpf(N0 + 1) / 2) - mp.zeta(s, mp.mpf(N0 + 2) / 2))
        return float(v)


def alternating_tail(s: int, N0: int) -> float:
    """sum_{n > N0} (-1)^n / n^s."""
    return _alt_tail_cached(int(s), int(N0))


def _even_taylor_tail(coef_j, x, N0: int, jmax: int = 80):
    """sum_{n > N0} (-1)^n/n^2 * sum_j coef_j(j) (x/n)^{2j}, summed over j first."""
    x = np.asarray(x, dtype=complex)
    acc = np.zeros(x.shape, dtype=complex)
    xmax = float(np.max(np.abs(x))) if x.size else 0.0
    for j in range(jmax):
        cj = coef_j(j)
        if cj == 0:
            continue
        T = alternating_tail(2 + 2 * j, N0)
        term = cj * T * x ** (2 * j)
        acc += term
        if j > 2 and abs(cj * T) * xmax ** (2 * j) < 1e-18 * max(1e-300, float(np.max(np.abs(acc)))):
            break
    return acc


def inv_laplace_phi_sum(x):
    """S(x) = sum_{n>=1} (-1)^n cos(x/n)/n^2 for complex arrays x."""
    x = np.asarray(x, dtype=complex)
    xmax = float(np.max(np.abs(x))) if x.size else 0.0
    N0 = max(4, int(math.ceil(2 * xmax)))
    n = np.arange(1, N0 + 1)
    head = ((-1.0) ** n / n ** 2 * np.cos(x[..., None] / n)).sum(axis=-1)
    tail = _even_taylor_tail(lambda j: (-1) ** j / math.factorial(2 * j), x, N0)
    return head + tail


def inv_laplace_phi(z, xi):
    """Inverse Laplace transform in gamma of 1/sinh(gamma z) - 1/(gamma z), at xi."""
    z = np.asarray(z, dtype=complex)
    return 2 * z / np.pi ** 2 * inv_laplace_phi_sum(xi * z / np.pi)


def BwF_poles(w, nmax: int = 4, kmax: int = 2):
    """Poles +-i pi n (pi - w + 2 pi k), sorted by modulus."""
    pts = []
    for n in range(1, nmax + 1):
        for k in range(-kmax, kmax + 1):
            base = 1j * math.pi * n * (math.pi - complex(w) + 2 * math.pi * k)
            pts += [base, -base]
    return sorted(pts, key=abs)


def BwF(w, xi, clearance: float = 1e-9):
    """Closed-form Borel transform of the Faddeev g+ series (split index 1)."""
    w = complex(w)
    if abs(((w.real - math.pi) / (2 * math.pi)) - round((w.real - math.pi) / (2 * math.pi))) < 1e-14 and w.imag == 0:
        raise ValueError("w in pi + 2 pi Z")
    xi = np.asarray(xi, dtype=complex)
    scalar = xi.ndim == 0
    xi = np.atleast_1d(xi)
    xmax = float(np.max(np.abs(xi))) if xi.size else 0.0
    # pole proximity
    if xmax > 0:
        pmin = abs(math.pi * (math.pi - abs(w.real)))
        if xmax >= pmin * 0.5:
            for p in BwF_poles(w, nmax=int(xmax / max(pmin, 1e-3)) + 2, kmax=int(xmax / (2 * math.pi ** 2)) + 2):
                if np.any(np.abs(xi - p) < clearance * max(1.0, abs(p))):
                    raise ValueError(f"xi within clearance of the pole {p:.6g}")
    N0 = max(8, int(math.ceil(4 * xmax / math.pi)))
    n = np.arange(1, N0 + 1)
    hshift = 1j * xi[:, None] / (math.pi * n[None, :])
    head = ((-1.0) ** n / n ** 2 * (F(w + hshift) + F(w - hshift))).sum(axis=1)
    J = 60
    Fd = F_derivatives(w, J)
    # F(w+h) + F(w-h) = 2 sum_j F^{(2j)} h^{2j}/(2j)!,  h = i xi/(pi n)  =>  h^{2j} = (-1)^j (xi/pi)^{2j} / n^{2j}
    coef = lambda j: 2 * Fd[j] * (-1) ** j / math.factorial(2 * j) if j <= J else 0.0
    tail = _even_taylor_tail(coef, xi / math.pi, N0, jmax=J + 1)
    val = 2 / (1j * math.pi ** 2) * (head + tail)
    return complex(val[0]) if scalar else val


def borel_coefficients(w, L: int):
    """Taylor coefficients b_l of BwF at xi = 0, from the moment closed forms (b_{m-1} = c_m/(m-1)!)."""
    b = np.zeros(L + 1, dtype=complex)
    for m in range(1, L + 2):
        if m % 2 == 1:
            b[m - 1] = inv_sinh_coeff(m) * h_closed(m, w) / math.factorial(m - 1)
    return b


def pole_parts(nmax: int):
    """Principal parts of 1/sinh: poles i pi n with residue (-1)^n, n != 0 (ordered by |p|)."""
    from .borel import PolePart
    parts = []
    for n in range(1, nmax + 1):
        parts += [PolePart(1j * math.pi * n, ((-1) ** n,)), PolePart(-1j * math.pi * n, ((-1) ** n,))]
    return parts


def kernel_moment_closed(w):
    """(p, k, xi) -> int K(w, z) e^{z xi/p} (z/p)^k dz for k = 1 (= h_1(w + xi/p)/p)."""
    def km(p, k, xi):
        if k != 1:
            raise ValueError("closed form only for k = 1")
        return -2j * F(w + xi / p) / p
    return km


def borel_integral(w, xi, theta_tilde: float = 0.0, tol: float = 1e-12, eps: float = DEFAULT_EPS):
    """B_w(xi) = int K(w, z) L^{-1}(phi_z)(xi) dz over e^{i theta~}(R + i eps)."""
    from .borel import borel_via_integral
    return borel_via_integral(problem(theta_tilde, eps), w, xi, inv_laplace_phi, tol=tol)


def borel_function(w, theta_tilde: float = 0.0):
    from .borel import BorelFunction
    return BorelFunction(w=complex(w), evaluate=lambda xi: BwF(w, xi), poles=lambda R: [
        p for p in BwF_poles(w, nmax=int(R / max(abs(math.pi * (math.pi - abs(complex(w).real))), 1e-3)) + 2,
                             kmax=int(R / (2 * math.pi ** 2)) + 2) if abs(p) <= R])


def g_minus(w, gamma) -> complex:
    """a_{-1} h_{-1}(w) / gamma (the split-index-1 part)."""
    return h_closed(-1, w) / complex(gamma)


def gplus_series(w, M: int = 16):
    """Formal gamma-series of g_gamma(w) up to order M (closed-form moments, split index 1)."""
    from .transform import assemble_formal_series
    return assemble_formal_series(problem(), w, M, closed_form=True, split=1)


def borel_radius_estimate(w, m_max: int = 8) -> float:
    """Borel radius from |b_l / b_{l+2}|^{1/2}, using coefficients c_{2m-1} with m <= m_max.

    The Borel coefficients are even in xi, so consecutive nonzero ones are two
    orders apart.  The last ratio in the window is returned.
    """
    if m_max < 2:
        raise ValueError("need m_max >= 2")
    b = borel_coefficients(w, 2 * m_max - 2)
    return float(abs(b[2 * m_max - 4] / b[2 * m_max - 2]) ** 0.5)


def nearest_pole_modulus(w) -> float:
    return min(abs(p) for p in BwF_poles(w, 2, 2))


# ----------------------------------------------------------------------------
# low-order and outer-angle bounds on explicit contours

def bound_hypotheses(w, gamma, contour: Contour, delta1_fraction: float = 0.9, far: float = 80.0,
                     rho: Optional[float] = None, L=None, b: Optional[float] = None) -> DecayHypotheses:
    """Envelope constants of the Faddeev problem on ``contour`` (numerical sups, delta2 = 0).

    The kernel rate is a fraction of pi cos(psi) - |Re(w e^{i psi})| minimised over
    the ray directions psi; the rest of the exponential absorbs |z| prefactors.
    """
    from .bounds import sup_on_contour
    from .contour import cos_theta_bound, min_modulus
    w, gamma = complex(w), complex(gamma)
    rates = []
    for seg in contour.segments:
        if seg.kind == "ray":
            u = complex(math.cos(seg.angle), math.sin(seg.angle))
            rates.append(math.pi * abs(u.real) - abs((w * u).real))
    if not rates or min(rates) <= 0:
        raise ValueError("kernel does not decay along the contour rays")
    delta1 = delta1_fraction * min(rates)
    k0, n0 = 2, 1
    c_w = sup_on_contour(lambda z: np.abs(kernel(w, z)) * np.exp(delta1 * np.abs(z)) * np.abs(z) ** k0,
                         contour, far) * (1 + 1e-6)
    c_tilde = sup_on_contour(lambda z: np.abs(inv_sinh(gamma * z)) * np.abs(gamma * z) ** n0, contour, far) * (1 + 1e-6)
    if b is None:
        b = cos_theta_bound(contour)
    if rho is None:
        rho = min_modulus(contour)
    return DecayHypotheses(delta1=delta1, delta2=0.0, c=c_tilde, b=b, d=contour.d, k0=k0, n0=n0,
                           c_w=c_w, c_tilde=c_tilde, rho=rho, L=L)


def low_order_certificate(w, gamma, n: int = -1, rho: float = 0.5, psi: float = math.pi / 6,
                          theta_tilde: float = 0.0):
    """Low-order bound (-n0 <= n < k0 - 1, i.e. n = -1) on a wedge with apex i rho."""
    from .bounds import low_order_bound
    c = wedge_contour(rho, psi)
    h = bound_hypotheses(w, gamma, c)
    return low_order_bound(problem(theta_tilde), h, n, None, w, gamma, contour=c)


def outer_angle_certificate(w, gamma, n: int, eps: float = OUTER_EPS):
    """Outer-angle bound on R + i eps: b(r) = sqrt(1 - (eps |gamma|/r)^2), L(r) = 2 sqrt((r/|gamma|)^2 - eps^2).

    The angle bound depends on r, so the radius is optimised here with b
    updated along the way, and the final certificate uses the optimal r.
    """
    from .bounds import _inf_over_r, outer_angle_bound, outer_angle_value
    g = abs(complex(gamma))
    c = shifted_contour(0.0, eps)
    f = inv_sinh_series()
    h = bound_hypotheses(w, gamma, c, rho=eps, L=lambda r: 2 * math.sqrt(max((r / g) ** 2 - eps ** 2, 0.0)), b=1.0)
    b_of = lambda r: math.sqrt(1 - (eps * g / r) ** 2)

    def value(r):
        h.b = b_of(r)
        branches = ("high", "low") if n == h.k0 else ("auto",)
        return max(outer_angle_value(f, h, n, r, h.L(r), gamma, br) for br in branches)

    r, _ = _inf_over_r(value, 2 * eps * g, math.pi * (1 - 1e-12))
    h.b = b_of(r)
    return outer_angle_bound(problem(0.0, eps), h, n, w, gamma, r=r, contour=c)
