"""Classical special functions written as transforms g_gamma(w) = int K(w, z) f(gamma z) dz.

Each builder returns a :class:`TransformProblem`; the ``*_eval`` helpers
evaluate it at the point where it reproduces the special function.

Conventions fixed numerically (see the tests):

* Gamma:   K = z^{w-1} e^{alpha z} / (2i sin(pi w)), f = e^{(1-alpha) z}; g_1(w) = Gamma(w).
* 1/Gamma: K = z^{-w} e^{alpha z} / (2 pi i),        f = e^{(1-alpha) z}; g_1(w) = 1/Gamma(w).
* zeta:    K = Gamma(1-w) z^{w-1} e^{alpha z}/(2 pi i), f = e^{(1-alpha) z}/(1 - e^z); g_1(w) = zeta(w).
* Hurwitz: K = Gamma(1-w) z^{w-1} / (2 pi i (e^{-z} - 1)), f = e^z; g_{q-1}(w) = zeta(w, q).
* 2F1:     K = z (-w)^{z^2}/cos(alpha z^2), f = cos(alpha u^2) Gamma(-u^2)Gamma(u^2+a)Gamma(u^2+b)/Gamma(u^2+c);
           2F1(a,b;c;w) = 1 + g_1 Gamma(c)/(pi i Gamma(a) Gamma(b)).
* Airy:    K = e^{(alpha - w) z}, f = e^{u^3/3 - alpha u}; g_1(w)/(2 pi i) = Ai(w).

All Hankel integrals use the principal branch of log z, which is continuous
along the contour (arg z runs from -pi on the lower ray to pi on the upper one).
At integer w where Gamma(1-w) has a pole, the integral over the closed
contour vanishes and the kernel is replaced by its limit,
Gamma(1-w) z^{w-1} -> (-1)^N/(N-1)! z^{N-1} log z.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import mpmath as mp
import numpy as np
from scipy.special import loggamma

from .bounds import DecayHypotheses, ErrorCertificate, entire_bound, global_bound, sup_on_contour
from .contour import Contour, arc, incoming_ray, make_hankel, make_two_ray, ray, sample_points
from .series import FormalGammaSeries, LaurentSeries, bernoulli, exp_series
from .transform import (DomainViolation, FunctionSpec, KernelSpec, TransformProblem, evaluate_g,
                        moment_h)

HANKEL_EPS = 1.0
DEFORMED_ANGLE = 0.75 * math.pi
HURWITZ_ANGLE = 5 * math.pi / 6
GAUSS_EPS = 0.5


@dataclass(frozen=True)
class ExampleSpec:
    id: str
    alpha: float = 0.75
    a: float = 1.0
    b: float = 1.0
    c: float = 2.0
    theta_tilde: float = math.pi / 3

    def __post_init__(self):
        if self.id not in ("gamma", "recip_gamma", "riemann_zeta", "hurwitz_zeta", "gauss_2f1", "airy"):
            raise ValueError(f"unknown example {self.id!r}")
        if self.id in ("gamma", "recip_gamma", "riemann_zeta") and not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if self.id == "airy" and not (math.pi / 6 - 1e-12 <= self.theta_tilde <= math.pi / 3 + 1e-12):
            raise ValueError("theta_tilde must lie in [pi/6, pi/3]")
        if self.id == "gauss_2f1":
            for v in (self.a, self.b):
                if v <= 0 and float(v).is_integer():
                    raise ValueError("a, b must not be nonpositive integers")

    def build(self) -> TransformProblem:
        if self.id == "gamma":
            return gamma_problem(self.alpha)
        if self.id == "recip_gamma":
            return recip_gamma_problem(self.alpha)
        if self.id == "riemann_zeta":
            return zeta_problem(self.alpha)
        if self.id == "hurwitz_zeta":
            return hurwitz_problem()
        if self.id == "gauss_2f1":
            return gauss2f1_problem(self.a, self.b, self.c, self.alpha)
        return airy_problem(self.alpha, self.theta_tilde)


def _is_int(w) -> Optional[int]:
    w = complex(w)
    if w.imag == 0 and float(w.real).is_integer():
        return int(w.real)
    return None


def mellin_factor(w):
    """z -> Gamma(1-w) z^{w-1}/(2 pi i), or its integer-w limit."""
    w = complex(w)
    N = _is_int(w)
    if N is not None and N >= 1:
        pref = (-1) ** N / math.factorial(N - 1) / (2j * math.pi)

        def fac(z):
            z = np.asarray(z, dtype=complex)
            with np.errstate(all="ignore"):
                return pref * z ** (N - 1) * np.log(z)
        return fac
    g1w = complex(mp.gamma(1 - w))

    def fac(z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(all="ignore"):
            return g1w / (2j * math.pi) * np.exp((w - 1) * np.log(z))
    return fac


# ----------------------------------------------------------------------------
# Gamma and 1/Gamma

def _exp_f(alpha):
    s = 1 - alpha
    return lambda u: np.exp(s * np.asarray(u, dtype=complex))


def _scaled_exp_series(alpha: float, M: int = 64) -> LaurentSeries:
    s = 1 - alpha
    coeff = lambda m: 0.0 if s == 0 else math.exp(m * math.log(s) - math.lgamma(m + 1))
    return LaurentSeries.from_callable(coeff, 0, M, math.inf, _exp_f(alpha))


def gamma_problem(alpha: float = 0.75, M: int = 64) -> TransformProblem:
    def K(w, z):
        N = _is_int(w)
        if N is not None and N <= 0:
            raise DomainViolation("Gamma has poles at nonpositive integers")
        gw = complex(mp.gamma(w)) if N is None else float(math.factorial(N - 1))
        return gw * mellin_factor(w)(z) * np.exp(alpha * np.asarray(z, dtype=complex))

    def in_W(w):
        N = _is_int(w)
        return N is None or N >= 1

    def h_closed(m, w):
        # (-1)^m Gamma(w+m) alpha^{-w-m}  (= d^m/d alpha^m of Gamma(w) alpha^{-w})
        return complex((-1) ** m * mp.gamma(w + m) * mp.power(alpha, -w - m))

    return TransformProblem(
        id="gamma", kernel=KernelSpec(K, 0, alpha / math.sqrt(2)),
        function=FunctionSpec(_exp_f(alpha), _scaled_exp_series(alpha, M), lambda g: (1 - alpha) * abs(g), c=1.0,
                              c_tilde=lambda g: 1.0),
        contour=lambda w, g: make_hankel(HANKEL_EPS),
        deformed=lambda w, g: make_hankel(HANKEL_EPS, deformed=True, angle=DEFORMED_ANGLE),
        in_W=in_W, in_U=lambda g: (alpha + (1 - alpha) * complex(g)).real > 0,
        moment_closed_form=h_closed, tail_decay=lambda w, g: _ray_rate(alpha, g),
        params={"alpha": alpha}, description="Euler Gamma function")


def _ray_rate(alpha, gamma, extra: float = 0.0) -> float:
    # decay of e^{(alpha + (1-alpha) gamma) z} along the Hankel rays (direction pi) and the
    # deformed rays (direction 3pi/4): the smaller of the two rates
    s = complex(alpha + extra) + (0 if gamma is None else (1 - alpha) * complex(gamma))
    rates = [(-s * complex(math.cos(t), math.sin(t))).real for t in (math.pi, DEFORMED_ANGLE, -DEFORMED_ANGLE)]
    return max(min(rates), 1e-3)


def recip_gamma_problem(alpha: float = 0.75, M: int = 64) -> TransformProblem:
    def K(w, z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(all="ignore"):
            return np.exp(-w * np.log(z) + alpha * z) / (2j * math.pi)

    def h_closed(m, w):
        # int z^{m-w} e^{alpha z} dz/(2 pi i) = alpha^{w-m-1}/Gamma(w-m)
        return complex(mp.power(alpha, w - m - 1) * mp.rgamma(w - m))

    return TransformProblem(
        id="recip_gamma", kernel=KernelSpec(K, 0, alpha / math.sqrt(2)),
        function=FunctionSpec(_exp_f(alpha), _scaled_exp_series(alpha, M), lambda g: (1 - alpha) * abs(g), c=1.0,
                              c_tilde=lambda g: 1.0),
        contour=lambda w, g: make_hankel(HANKEL_EPS),
        in_U=lambda g: (alpha + (1 - alpha) * complex(g)).real > 0,
        moment_closed_form=h_closed, tail_decay=lambda w, g: _ray_rate(alpha, g),
        params={"alpha": alpha}, description="reciprocal Gamma function")


def gamma_eval(w, gamma=1.0, alpha: float = 0.75, tol: float = 1e-12) -> complex:
    """g^{Gamma, alpha}_gamma(w); equals Gamma(w) (alpha + (1-alpha) gamma)^{-w}, so Gamma(w) at gamma = 1."""
    return evaluate_g(gamma_problem(alpha), w, gamma, tol)


def recip_gamma_eval(w, gamma=1.0, alpha: float = 0.75, tol: float = 1e-12) -> complex:
    return evaluate_g(recip_gamma_problem(alpha), w, gamma, tol)


def gamma_series_terms(w, alpha: float, M: int) -> FormalGammaSeries:
    """c_m = a_m h_m = (-(1-alpha)/alpha)^m (w)_m/m! Gamma(w) alpha^{-w}, computed in log space."""
    w = complex(w)
    ms = np.arange(0, M + 1)
    lg = np.array([complex(mp.loggamma(w + m)) - math.lgamma(m + 1) for m in ms])
    logs = lg + ms * math.log(1 - alpha) - (w + ms) * math.log(alpha)
    terms = np.exp(logs) * (-1.0) ** ms
    return FormalGammaSeries(ms, terms, 0, w)


def gamma_series_radius(alpha: float) -> float:
    """alpha R with R = 1/(1 - alpha)."""
    return alpha / (1 - alpha)


# ----------------------------------------------------------------------------
# Riemann and Hurwitz zeta

def zeta_coeff(m: int, alpha: float) -> float:
    """a_m of e^{(1-alpha)u}/(1-e^u) = -e^{(1-alpha)u} u^{-1} sum_k B_k u^k/k!."""
    if m < -1:
        return 0.0
    s = 1 - alpha
    terms = [s ** m1 / math.factorial(m1) * bernoulli(m + 1 - m1) / math.factorial(m + 1 - m1)
             for m1 in range(0, m + 2)]
    return -math.fsum(terms)


def _zeta_f(alpha):
    s = 1 - alpha

    def f(u):
        u = np.asarray(u, dtype=complex)
        with np.errstate(all="ignore"):
            # for Re u > 0 rewrite as -e^{-alpha u}/(1 - e^{-u})
            big = u.real > 0
            out = np.empty(u.shape, dtype=complex)
            out[~big] = np.exp(s * u[~big]) / (1 - np.exp(u[~big]))
            out[big] = -np.exp(-alpha * u[big]) / (1 - np.exp(-u[big]))
        return out
    return f


def zeta_problem(alpha: float = 0.75, M: int = 60) -> TransformProblem:
    def K(w, z):
        if _is_int(w) == 1:
            raise DomainViolation("zeta has a pole at w = 1")
        return mellin_factor(w)(z) * np.exp(alpha * np.asarray(z, dtype=complex))

    def h_closed(m, w):
        # Gamma(1-w)/Gamma(1-w-m) alpha^{-w-m} = (-1)^m (w)_m alpha^{-w-m}
        return complex((-1) ** m * mp.rf(w, m) * mp.power(alpha, -w - m))

    lau = LaurentSeries.from_callable(lambda m: zeta_coeff(m, alpha), 1, M, 2 * math.pi, _zeta_f(alpha))
    return TransformProblem(
        id="riemann_zeta", kernel=KernelSpec(K, 0, alpha / math.sqrt(2)),
        function=FunctionSpec(_zeta_f(alpha), lau, lambda g: (1 - alpha) * abs(g), c=1.0,
                              poles=lambda g: [2j * math.pi * k / g for k in (-2, -1, 1, 2)]),
        contour=lambda w, g: make_hankel(min(HANKEL_EPS, math.pi / max(abs(complex(g)), 1e-12)) if g is not None
                                         else HANKEL_EPS),
        deformed=lambda w, g: make_hankel(HANKEL_EPS, deformed=True, angle=DEFORMED_ANGLE),
        in_W=lambda w: _is_int(w) != 1, in_U=lambda g: complex(g).real > 0,
        moment_closed_form=h_closed, tail_decay=lambda w, g: _ray_rate(alpha, g),
        params={"alpha": alpha}, description="Riemann zeta function")


def zeta_eval(w, gamma=1.0, alpha: float = 0.75, tol: float = 1e-12) -> complex:
    return evaluate_g(zeta_problem(alpha), w, gamma, tol)


def hurwitz_moment(m: int, w) -> complex:
    """h_m(w) = (-1)^m (w)_m zeta(w + m)."""
    return complex((-1) ** m * mp.rf(w, m) * mp.zeta(w + m))


def _hurwitz_kernel(w, z):
    z = np.asarray(z, dtype=complex)
    with np.errstate(all="ignore"):
        # 1/(e^{-z} - 1) = e^{z}/(1 - e^{z}), bounded for Re z -> -inf
        return mellin_factor(w)(z) * np.exp(z) / (1 - np.exp(z))


def hurwitz_problem(M: int = 64, angle: float = HURWITZ_ANGLE) -> TransformProblem:
    def tail(w, gamma):
        q = 1 + (0 if gamma is None else complex(gamma).real)
        return max(q * abs(math.cos(angle)), 1e-3)

    return TransformProblem(
        id="hurwitz_zeta", kernel=KernelSpec(_hurwitz_kernel, 0, abs(math.cos(angle))),
        function=FunctionSpec(lambda u: np.exp(np.asarray(u, dtype=complex)), exp_series(M), lambda g: abs(g)),
        contour=lambda w, g: make_hankel(HANKEL_EPS),
        deformed=lambda w, g: make_hankel(HANKEL_EPS, deformed=True, angle=angle),
        in_W=lambda w: _is_int(w) != 1, in_U=lambda g: complex(g).real > -1,
        moment_closed_form=lambda m, w: hurwitz_moment(m, w), tail_decay=tail,
        description="Hurwitz zeta function, gamma = q - 1")


def hurwitz_eval(w, q, tol: float = 1e-12) -> complex:
    """zeta(w, q) = g_{q-1}(w)."""
    if complex(q).real <= 0:
        raise DomainViolation("q must have positive real part")
    p = hurwitz_problem()
    if complex(q) == 1:
        # gamma = 0: f(0 z) = 1, so the value is the moment h_0(w) = zeta(w)
        return moment_h(p, 0, w, tol)
    return evaluate_g(p, w, complex(q) - 1, tol)


# ----------------------------------------------------------------------------
# Gauss hypergeometric function

def _gauss_contour(eps: float = GAUSS_EPS) -> Contour:
    lower, _ = incoming_ray(eps * complex(math.cos(-math.pi / 4), math.sin(-math.pi / 4)), -math.pi / 4)
    mid = arc(0j, eps, -math.pi / 4, math.pi / 4)
    upper = ray(eps * complex(math.cos(math.pi / 4), math.sin(math.pi / 4)), math.pi / 4)
    return Contour((lower, mid, upper), (-1, 1, 1), label=f"gauss({eps:g})")


def _laurent_fft(func, n0: int, radius: float, M: int, N: int = 256) -> np.ndarray:
    # a_m = (1/N) sum f(r e^{it}) r^{-m} e^{-imt}
    t = 2 * np.pi * np.arange(N) / N
    u = radius * np.exp(1j * t)
    vals = np.asarray(func(u), dtype=complex)
    out = []
    for m in range(-n0, M + 1):
        out.append(np.mean(vals * np.exp(-1j * m * t)) * radius ** (-m))
    return np.array(out)


def gauss2f1_problem(a: float = 1.0, b: float = 1.0, c: float = 2.0, alpha: float = 0.5,
                     M: int = 24) -> TransformProblem:
    for v in (a, b):
        if v <= 0 and float(v).is_integer():
            raise DomainViolation("a, b must not be nonpositive integers")

    def f(u):
        s = np.asarray(u, dtype=complex) ** 2
        with np.errstate(all="ignore"):
            lg = loggamma(-s) + loggamma(s + a) + loggamma(s + b) - loggamma(s + c)
            return np.cos(alpha * s) * np.exp(lg)

    def K(w, z):
        z = np.asarray(z, dtype=complex)
        lw = np.log(-complex(w))
        with np.errstate(all="ignore"):
            return z * np.exp(z * z * lw) / np.cos(alpha * z * z)

    def in_W(w):
        w = complex(w)
        return w != 0 and abs(np.angle(-w)) < math.pi

    # radius of convergence of the Laurent data: nearest nonzero pole in u^2 (1 or a, b)
    R2 = min([1.0] + [abs(v) for v in (a, b) if v != 0])
    lau = LaurentSeries(2, _laurent_fft(f, 2, 0.5 * math.sqrt(R2), M), math.sqrt(R2), func=f)

    def tail(w, gamma):
        return 1.0

    return TransformProblem(
        id="gauss_2f1", kernel=KernelSpec(K, -1, 0.0), function=FunctionSpec(f, lau),
        contour=lambda w, g: _gauss_contour(), in_W=in_W, in_U=lambda g: complex(g) == 1 or abs(complex(g)) > 0,
        tail_decay=tail, params={"a": a, "b": b, "c": c, "alpha": alpha},
        description="Gauss hypergeometric function (Mellin-Barnes form)")


def gauss2f1_eval(w, gamma=1.0, alpha: float = 0.5, a: float = 1.0, b: float = 1.0, c: float = 2.0,
                  tol: float = 1e-12) -> complex:
    """2F1(a, b; c; w) = 1 + g_1(w) Gamma(c) / (pi i Gamma(a) Gamma(b))."""
    p = gauss2f1_problem(a, b, c, alpha)
    g = evaluate_g(p, w, gamma, tol)
    if gamma != 1:
        return g
    pref = complex(mp.gamma(c) / (mp.gamma(a) * mp.gamma(b)))
    return 1 + g * pref / (1j * math.pi)


# ----------------------------------------------------------------------------
# Airy

def airy_coeff(m: int, alpha: float) -> float:
    """a_m of e^{u^3/3 - alpha u}."""
    if m < 0:
        return 0.0
    return math.fsum((-alpha) ** (m - 3 * l) / (math.factorial(l) * math.factorial(m - 3 * l) * 3 ** l)
                     for l in range(m // 3 + 1))


def airy_problem(alpha: float = 0.5, theta_tilde: float = math.pi / 3, M: int = 48) -> TransformProblem:
    def f(u):
        u = np.asarray(u, dtype=complex)
        return np.exp(u ** 3 / 3 - alpha * u)

    def K(w, z):
        return np.exp((alpha - complex(w)) * np.asarray(z, dtype=complex))

    def decay(w):
        # |e^{(alpha - w) z}| on both rays: exponent |z| Re((alpha - w) e^{+-i theta})
        return -max(((alpha - complex(w)) * complex(math.cos(s * theta_tilde), math.sin(s * theta_tilde))).real
                    for s in (1, -1))

    lau = LaurentSeries.from_callable(lambda m: airy_coeff(m, alpha), 0, M, math.inf, f)
    return TransformProblem(
        id="airy", kernel=KernelSpec(K, 0, decay), function=FunctionSpec(f, lau),
        contour=lambda w, g: make_two_ray(-theta_tilde, theta_tilde),
        moment_closed_form=lambda m, w: 0j, tail_decay=None,
        params={"alpha": alpha, "theta_tilde": theta_tilde}, description="Airy function")


def airy_eval(w, gamma=1.0, alpha: float = 0.5, theta_tilde: float = math.pi / 3, tol: float = 1e-12) -> complex:
    """g_gamma(w)/(2 pi i); equals Ai(w) at gamma = 1."""
    return evaluate_g(airy_problem(alpha, theta_tilde), w, gamma, tol) / (2j * math.pi)


# ----------------------------------------------------------------------------
# remainder-bound set-ups

def _envelope_violation(K, w, c: Contour, c_w: float, delta1: float, k0: int, far: float) -> str:
    """Check |K| <= c_w e^{-delta1 |z|} |z|^{-k0} well beyond the sup window; '' when it holds."""
    zs = sample_points(c, 400, far=far)
    zs = zs[np.abs(zs) > 0]
    with np.errstate(all="ignore"):
        v = np.abs(K(w, zs)) * np.exp(delta1 * np.abs(zs)) * np.abs(zs) ** k0
    bad = ~(v <= c_w * (1 + 1e-6))
    if np.any(bad):
        z0 = zs[np.argmax(bad)]
        return f"kernel envelope with delta1={delta1:.4g} fails at |z|={abs(z0):.4g}"
    return ""


def mellin_hypotheses(p: TransformProblem, w, gamma, alpha: float, margin: float = 0.1,
                      far: float = 80.0, delta1: Optional[float] = None) -> DecayHypotheses:
    """Constants of the global bound for the Gamma and zeta problems on the deformed Hankel rays.

    The kernel envelope rate defaults to alpha cos(pi/4) - margin (the margin
    absorbs |z|^{Re w - 1} and log factors); c_w and c~ are numerical sups.
    An overridden ``delta1`` that the kernel does not satisfy is recorded in
    ``violated`` instead of raising.
    """
    N = _is_int(w)
    k0 = max(0, math.ceil(1 - complex(w).real)) if N is None else 0
    c = p.remainder_contour(w, gamma)
    if delta1 is None:
        delta1 = alpha * math.cos(math.pi - DEFORMED_ANGLE) - margin
    K = p.kernel.K
    c_w = sup_on_contour(lambda z: np.abs(K(w, z)) * np.exp(delta1 * np.abs(z)) * np.abs(z) ** k0, c, far) * (1 + 1e-6)
    violated = _envelope_violation(K, w, c, c_w, delta1, k0, 10 * far)
    delta2 = (1 - alpha) * abs(gamma)
    n0 = p.n0
    f = p.function.f
    c_tilde = sup_on_contour(lambda z: np.abs(f(gamma * z)) * np.exp(-delta2 * np.abs(z)) * np.abs(gamma * z) ** n0,
                             c, far) * (1 + 1e-6)
    return DecayHypotheses(delta1=delta1, delta2=delta2, c=max(c_tilde, 1.0) if n0 else 1.0, b=1.0, d=2,
                           k0=k0, n0=n0, c_w=c_w, c_tilde=c_tilde, violated=violated)


def certify_global(p: TransformProblem, w, gamma, alpha: float, n_max: int = 8, margin: float = 0.1,
                   delta1: Optional[float] = None, n_min: Optional[int] = None):
    """Global-bound certificates for n = k0-1 .. n_max."""
    h = mellin_hypotheses(p, w, gamma, alpha, margin, delta1=delta1)
    lo = h.k0 - 1 if n_min is None else max(n_min, h.k0 - 1)
    return [global_bound(p, h, n, w, gamma) for n in range(lo, n_max + 1)]


def hurwitz_entire_certificate(w, q, n: int, angle: float = HURWITZ_ANGLE, margin: float = 0.05,
                               printed_exponent: bool = False) -> ErrorCertificate:
    """Entire-f bound for the Hurwitz problem with C^{(n)} = 1 and delta~ = |q - 1|."""
    p = hurwitz_problem(angle=angle)
    gamma = complex(q) - 1
    c = p.remainder_contour(w, gamma)
    delta1 = abs(math.cos(angle)) - margin
    K = p.kernel.K
    k0 = max(0, math.ceil(2 - complex(w).real))
    c_w = sup_on_contour(lambda z: np.abs(K(w, z)) * np.exp(delta1 * np.abs(z)) * np.abs(z) ** k0, c, 80.0) * (1 + 1e-6)
    h = DecayHypotheses(delta1=delta1, delta2=abs(gamma), c=1.0, b=1.0, d=2, k0=k0, n0=0, c_w=c_w, c_tilde=1.0,
                        delta_tilde=abs(gamma), C_n=lambda _n: 1.0)
    return entire_bound(p, h, n, w, gamma, printed_exponent=printed_exponent)


def airy_entire_certificate(w, gamma, n: int, alpha: float = 0.5, theta_tilde: float = math.pi / 3,
                            printed_exponent: bool = False) -> ErrorCertificate:
    """Entire-f bound for the Airy problem with C^{(n)} = sup |phi_n(gamma z)/(gamma z)^{n+1}| and delta~ = 0."""
    p = airy_problem(alpha, theta_tilde)
    c = p.contour(w, gamma)
    delta1 = p.kernel.delta1_at(w)
    if delta1 <= 0:
        raise DomainViolation("kernel does not decay on the Airy rays at this w")
    lau = p.function.laurent
    gamma = complex(gamma)

    def Cn(n_):
        return sup_on_contour(lambda z: np.abs(lau.phi(gamma * z, n_)) / np.abs(gamma * z) ** (n_ + 1), c, 40.0) \
            * (1 + 1e-6)

    h = DecayHypotheses(delta1=delta1, delta2=0.0, c=1.0, b=1.0, d=2, k0=0, n0=0, c_w=1.0, c_tilde=1.0,
                        delta_tilde=0.0, C_n=Cn)
    return entire_bound(p, h, n, w, gamma, printed_exponent=printed_exponent)
