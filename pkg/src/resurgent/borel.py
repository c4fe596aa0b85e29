"""Laplace transforms along rays, Borel functions of transforms, and Stokes jumps.

Conventions: L_theta(psi)(gamma) = int_0^{inf e^{i theta}} e^{-xi/gamma} psi(xi) d xi,
which is well defined when cos(theta - arg gamma) > |gamma| alpha for psi of
exponential type alpha.  The jump across a Stokes direction theta_j is

    Delta = L_{theta_j - eps}(B) - L_{theta_j + eps}(B) = 2 pi i sum_p Res_{xi=p} e^{-xi/gamma} B(xi),

the sum running over the poles on the ray e^{i theta_j} R+.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import special

from .contour import Contour, NonConvergence, integrate, ray, sample_points
from .transform import HypothesisViolation, TransformProblem


class Inadmissible(ValueError):
    """gamma lies outside the half-plane where the Laplace integral converges."""


class SectorImpurity(ValueError):
    """Poles inside the Stokes sector but off the Stokes ray."""


@dataclass(frozen=True)
class Ray:
    theta: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValueError("ray angle must be finite")

    @property
    def direction(self) -> complex:
        return complex(math.cos(self.theta), math.sin(self.theta))

    def contains(self, p: complex, atol: float = 1e-9) -> bool:
        p = complex(p)
        return abs(p) > 0 and abs(_angle_diff(math.atan2(p.imag, p.real), self.theta)) <= atol


@dataclass(frozen=True)
class GrowthBound:
    """|psi(xi)| <= e^{alpha |xi|} sum_i C_i |xi|^{m_i}."""

    alpha: float = 0.0
    terms: tuple = ((1.0, 0),)

    def __post_init__(self):
        for C, m in self.terms:
            if C <= 0 or m < 0 or int(m) != m:
                raise ValueError("growth terms need C_i > 0 and integer m_i >= 0")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return np.exp(self.alpha * r) * sum(C * r ** m for C, m in self.terms)

    def laplace_tail(self, beta: float, T: float) -> float:
        """Bound on int_T^inf e^{-beta r} e^{alpha r} sum C r^m dr (beta = cos/|gamma|)."""
        b = beta - self.alpha
        if b <= 0:
            return math.inf
        return float(sum(C * special.gammaincc(m + 1, b * T) * special.gamma(m + 1) / b ** (m + 1)
                         for C, m in self.terms))


@dataclass(frozen=True)
class PolePart:
    """Principal part sum_k b_k / (u - p)^k of f at the pole p (k = 1..n_phi)."""

    p: complex
    coeffs: tuple

    def __post_init__(self):
        if complex(self.p) == 0:
            raise ValueError("poles of the principal part must be nonzero")
        if not self.coeffs:
            raise ValueError("empty principal part")

    @property
    def order(self) -> int:
        return len(self.coeffs)


@dataclass
class BorelFunction:
    """A Borel-plane function B_w with its pole set and optional alternative representations."""

    w: complex
    evaluate: Callable
    poles: Optional[Callable] = None  # R -> poles with |p| <= R
    growth: Optional[GrowthBound] = None
    taylor: Optional[Callable] = None
    pole_parts: Optional[Sequence[PolePart]] = None

    def __call__(self, xi):
        return self.evaluate(xi)

    def poles_within(self, R: float) -> list:
        return [] if self.poles is None else sorted((complex(p) for p in self.poles(R)), key=abs)


@dataclass
class StokesData:
    theta: float
    gamma: complex
    eps: float
    poles: list
    residues: list
    jump: complex
    lateral_difference: Optional[complex] = None
    lateral_error: float = 0.0
    extra: dict = field(default_factory=dict)

    def as_record(self) -> dict:
        c = lambda z: {"re": complex(z).real, "im": complex(z).imag}
        rec = {"theta": self.theta, "gamma": c(self.gamma), "eps": self.eps,
               "poles": [c(p) for p in self.poles], "jump": c(self.jump)}
        if self.lateral_difference is not None:
            rec["lateral_difference"] = c(self.lateral_difference)
            rec["discrepancy"] = abs(self.jump - self.lateral_difference)
        return rec


def _angle_diff(a: float, b: float) -> float:
    return (a - b + math.pi) % (2 * math.pi) - math.pi


def _arg(z) -> float:
    z = complex(z)
    return math.atan2(z.imag, z.real)


# ----------------------------------------------------------------------------
# Laplace transforms

def admissible(theta: float, gamma, alpha: float = 0.0) -> bool:
    """gamma in U_{theta, alpha}: cos(theta - arg gamma) > |gamma| alpha."""
    gamma = complex(gamma)
    if gamma == 0:
        return False
    return math.cos(theta - _arg(gamma)) > abs(gamma) * alpha


def _vectorised(psi):
    def f(x):
        try:
            out = np.asarray(psi(x), dtype=complex)
            if out.shape == np.shape(x):
                return out
        except (TypeError, ValueError):
            pass
        return np.array([complex(psi(complex(v))) for v in np.ravel(x)], dtype=complex).reshape(np.shape(x))
    return f


def laplace_result(psi, bound: Optional[GrowthBound], theta: float, gamma, tol: float = 1e-12):
    gamma = complex(gamma)
    alpha = bound.alpha if bound is not None else 0.0
    if not admissible(theta, gamma, alpha):
        raise Inadmissible(f"gamma={gamma} not admissible for theta={theta:.6g}, alpha={alpha:g}")
    beta = math.cos(theta - _arg(gamma)) / abs(gamma)
    f = _vectorised(psi)
    return integrate(Contour((ray(0j, theta),), (1,), label=f"ray({theta:.4g})"),
                     lambda xi: np.exp(-xi / gamma) * f(xi), tol=tol, tail_decay=beta - alpha)


def laplace_along_ray(psi, bound: Optional[GrowthBound], theta: float, gamma, tol: float = 1e-12) -> complex:
    """int over e^{i theta} R+ of e^{-xi/gamma} psi(xi) d xi."""
    return laplace_result(psi, bound, theta, gamma, tol).value


# ----------------------------------------------------------------------------
# Borel functions of transforms

def borel_via_integral(p: TransformProblem, w, xi, inv_laplace_phi: Optional[Callable],
                       tol: float = 1e-12, contour: Optional[Contour] = None, phi_growth: float = 1 / math.pi):
    """B_w(xi) = int K(w, z) L^{-1}(phi_z)(xi) dz.

    ``inv_laplace_phi(z, xi)`` is the Borel-plane inverse of phi_z.  Its
    growth in z is taken as e^{phi_growth |xi| |z|} when sizing the ray tails.
    """
    if inv_laplace_phi is None:
        raise ValueError(f"problem {p.id} has no inverse-Laplace handle for phi_z")
    p.check_domain(w)
    xi = complex(xi)
    c = contour if contour is not None else p.contour(w, None)
    K = p.kernel.K
    d = p.decay(w, None)
    decay = None if d is None else d - phi_growth * abs(xi)
    if decay is not None and decay <= 0:
        raise NonConvergence(f"xi={xi} too large for the integral representation at w={w}")
    return integrate(c, lambda z: K(w, z) * inv_laplace_phi(z, xi), tol=tol, tail_decay=decay).value


def _pole_term(part: PolePart, kernel_moments: Callable, xi) -> complex:
    # B of sum_k b_k (gamma z - p)^{-k}:
    #   (-p)^{-k} b_k sum_{i<k} C(k, k-1-i)/i! xi^i int K e^{z xi/p} (z/p)^{i+1} dz
    p = complex(part.p)
    total = 0j
    for k, b in enumerate(part.coeffs, start=1):
        if b == 0:
            continue
        inner = sum(comb(k, k - 1 - i) / math.factorial(i) * xi ** i * kernel_moments(p, i + 1, xi) for i in range(k))
        total += (-p) ** (-k) * b * inner
    return total


def _euler_average(partials: np.ndarray, depth: int) -> complex:
    s = np.asarray(partials, dtype=complex)
    for _ in range(min(depth, len(s) - 1)):
        s = 0.5 * (s[1:] + s[:-1])
    return complex(s[-1])


def borel_via_pole_sum(poles: Callable | Sequence[PolePart], kernel_moments: Callable, xi,
                       entire_part: Optional[Callable] = None, tol: float = 1e-10,
                       n_start: int = 64, n_max: int = 8192, accelerate: bool = True) -> complex:
    """Sum of the pole contributions to B_w(xi), plus the entire-part integral.

    ``poles`` is either a finite list of :class:`PolePart` or a callable
    N -> the first N parts (ordered by modulus).  Parts of equal modulus are
    grouped into shells; the shell partial sums are averaged repeatedly
    (Euler transform), which handles the alternating, slowly decaying tails
    of 1/sinh-type functions.  The sum is doubled until two consecutive
    estimates agree within tol.
    """
    xi = complex(xi)
    base = complex(entire_part(xi)) if entire_part is not None else 0j
    if not callable(poles):
        parts = list(poles)
        for pp in parts:
            if not all(np.isfinite(complex(b)) for b in pp.coeffs):
                raise ValueError("non-finite principal-part coefficient")
        return base + complex(math.fsum(_pole_term(pp, kernel_moments, xi).real for pp in parts),
                              math.fsum(_pole_term(pp, kernel_moments, xi).imag for pp in parts))

    def shells(N):
        parts = sorted(poles(N), key=lambda q: abs(complex(q.p)))
        groups, cur, r0 = [], 0j, None
        for pp in parts:
            r = abs(complex(pp.p))
            if r0 is not None and abs(r - r0) > 1e-12 * max(1.0, r):
                groups.append(cur)
                cur = 0j
            cur += _pole_term(pp, kernel_moments, xi)
            r0 = r
        groups.append(cur)
        return np.cumsum(groups)

    N = n_start
    prev = None
    while N <= n_max:
        ps = shells(N)
        est = _euler_average(ps[len(ps) // 2:], 24) if accelerate else complex(ps[-1])
        if prev is not None and abs(est - prev) < tol:
            return base + est
        prev = est
        N *= 2
    raise NonConvergence(f"pole sum not converged to {tol:g} with {n_max} poles")


def alpha_theta(poles: Sequence[complex], contour: Optional[Contour], theta: float, far: float = 60.0,
                n: int = 2000) -> float:
    """(1/r_m) sup over z in the contour of |z| cos(theta + arg z - arg p), sup also over pole arguments."""
    if contour is None or not contour.segments:
        return 0.0
    poles = [complex(p) for p in poles]
    if not poles:
        return 0.0
    r_m = min(abs(p) for p in poles)
    if r_m <= 0:
        raise ValueError("poles must be nonzero")
    classes = sorted({round(_arg(p), 12) for p in poles})
    for seg in contour.segments:
        if seg.kind == "ray":
            for tp in classes:
                if math.cos(theta + seg.angle - tp) > 1e-12:
                    raise HypothesisViolation(
                        f"unbounded sup: ray at angle {seg.angle:.4g} with cos(...) > 0 for pole argument {tp:.4g}")
    zs = sample_points(contour, n, far=far)
    best = -math.inf
    for tp in classes:
        vals = (zs * np.exp(1j * (theta - tp))).real  # |z| cos(theta + arg z - arg p)
        best = max(best, float(np.max(vals)))
    return best / r_m


def laplace_borel_reconstruct(p: Optional[TransformProblem], w, gamma, B: BorelFunction, g_minus,
                              theta: float = 0.0, alpha: float = 0.0, tol: float = 1e-12) -> complex:
    """g^-_gamma(w) + L_theta(B_w)(gamma)."""
    if p is not None:
        p.check_domain(w, gamma)
    gm = g_minus(gamma) if callable(g_minus) else complex(g_minus)
    bound = B.growth if B.growth is not None else GrowthBound(alpha)
    if not admissible(theta, gamma, max(alpha, bound.alpha)):
        raise Inadmissible(f"gamma={gamma} outside U_(theta={theta:.4g}, alpha={alpha:.4g})")
    return gm + laplace_along_ray(B, bound, theta, gamma, tol)


# ----------------------------------------------------------------------------
# Stokes jumps

def residue_circle(fun: Callable, p: complex, radius: float, nodes: int = 64) -> complex:
    """(1/2 pi i) contour integral of fun around p, trapezoid rule on a circle."""
    t = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    vals = np.asarray(fun(p + radius * t), dtype=complex)
    if not np.all(np.isfinite(vals)):
        raise ValueError(f"residue circle around {p} meets a singularity")
    return complex(np.mean(vals * radius * t))


def stokes_jump(B: BorelFunction, theta_j: float, gamma, eps: Optional[float] = None, tol: float = 1e-10,
                lateral: bool = True, nodes: int = 64) -> StokesData:
    """Residue-sum jump across e^{i theta_j} R+, cross-checked with the two lateral Laplace transforms."""
    gamma = complex(gamma)
    cg = math.cos(theta_j - _arg(gamma))
    if cg <= 0:
        raise Inadmissible("gamma must satisfy cos(theta_j - arg gamma) > 0")
    # poles with e^{-|p| cos/|gamma|} above tol (with a safety factor)
    R = abs(gamma) / cg * math.log(1e3 / tol)
    allp = B.poles_within(R * 1.5 + 1.0)
    on = [p for p in allp if abs(p) <= R and Ray(theta_j).contains(p, 1e-9)]
    off = [p for p in allp if not Ray(theta_j).contains(p, 1e-9)]
    gaps = [abs(_angle_diff(_arg(q), theta_j)) for q in off]
    gap = min(gaps) if gaps else math.pi
    if eps is None:
        eps = min(0.5 * gap, math.pi / 4)
    if off and min(gaps) <= eps:
        raise SectorImpurity(f"pole off the Stokes ray inside the sector of half-width {eps:.4g}")
    if math.cos(theta_j + eps - _arg(gamma)) <= 0 or math.cos(theta_j - eps - _arg(gamma)) <= 0:
        raise Inadmissible("lateral rays not admissible for this gamma; reduce eps")
    f = lambda xi: np.exp(-np.asarray(xi) / gamma) * np.asarray(B(xi), dtype=complex)
    residues = []
    for p in on:
        others = [abs(p - q) for q in allp if q != p]
        rad = min(0.1 * min(others) if others else 0.1 * abs(p), 0.1 * abs(p))
        residues.append(residue_circle(f, p, rad, nodes))
    jump = 2j * math.pi * complex(math.fsum(r.real for r in residues), math.fsum(r.imag for r in residues))
    data = StokesData(theta_j, gamma, eps, on, residues, jump)
    if lateral:
        lo = laplace_result(B, B.growth, theta_j - eps, gamma, tol)
        hi = laplace_result(B, B.growth, theta_j + eps, gamma, tol)
        data.lateral_difference = lo.value - hi.value
        data.lateral_error = lo.error + hi.error
    return data


def laplace_scan(B: BorelFunction, gamma, thetas: Sequence[float], tol: float = 1e-10):
    """[(theta, L_theta(B)(gamma))] over admissible thetas, skipping directions that hit poles."""
    out = []
    for th in thetas:
        if not admissible(th, gamma, B.growth.alpha if B.growth else 0.0):
            continue
        try:
            out.append((float(th), laplace_along_ray(B, B.growth, th, gamma, tol)))
        except (ArithmeticError, ValueError):
            continue
    return out
