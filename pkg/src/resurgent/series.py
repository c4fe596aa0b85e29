"""Windowed Laurent and formal power series, kappa sums, Bernoulli numbers and the formal Borel transform."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

BERNOULLI_MAX = 200


class SeriesError(ValueError):
    pass


@lru_cache(maxsize=None)
def _bernoulli_table(kmax: int) -> tuple:
    # sum_{j=0}^{k} C(k+1, j) B_j = 0, B_0 = 1
    B = [Fraction(1)]
    for k in range(1, kmax + 1):
        s = Fraction(0)
        c = 1  # C(k+1, 0)
        for j in range(k):
            s += c * B[j]
            c = c * (k + 1 - j) // (j + 1)
        B.append(-s / (k + 1))
    return tuple(B)


def bernoulli_fraction(k: int, kmax: int = BERNOULLI_MAX) -> Fraction:
    """Exact B_k (convention B_1 = -1/2)."""
    if k < 0:
        raise SeriesError("k must be nonnegative")
    if k > kmax:
        raise SeriesError(f"k={k} above configured maximum {kmax}")
    if k > 1 and k % 2:
        return Fraction(0)
    size = max(32, 1 << (k.bit_length()))
    return _bernoulli_table(min(max(size, k), kmax))[k]


def bernoulli(k: int, kmax: int = BERNOULLI_MAX) -> float:
    """B_k as a float; odd k > 1 give exactly 0."""
    return float(bernoulli_fraction(k, kmax))


# ----------------------------------------------------------------------------

@dataclass
class LaurentSeries:
    """Laurent data of f at 0: a_m for m = -n0 .. M, plus the radius R_f.

    ``coeff`` (optional) returns a_m for any m >= -n0 and lets kappa sums run
    past the stored window.
    """

    n0: int
    coeffs: np.ndarray
    R_f: float = math.inf
    coeff: Optional[Callable[[int], complex]] = None
    func: Optional[Callable] = None

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.n0 < 0:
            raise SeriesError("pole order must be nonnegative")
        if self.coeffs.size == 0:
            raise SeriesError("empty coefficient window")
        if self.n0 > 0 and self.coeffs[0] == 0:
            raise SeriesError("a_{-n0} must be nonzero")

    @classmethod
    def from_callable(cls, coeff, n0, M=64, R_f=math.inf, func=None):
        return cls(n0, np.array([coeff(m) for m in range(-n0, M + 1)], dtype=complex), R_f, coeff, func)

    @property
    def M(self) -> int:
        return self.coeffs.size - self.n0 - 1

    def a(self, m: int) -> complex:
        if m < -self.n0:
            return 0j
        if m <= self.M:
            return complex(self.coeffs[m + self.n0])
        if self.coeff is None:
            raise SeriesError(f"a_{m} outside the window and no coefficient rule")
        return complex(self.coeff(m))

    def orders(self, lo=None, hi=None):
        lo = -self.n0 if lo is None else max(lo, -self.n0)
        hi = self.M if hi is None else hi
        return range(lo, hi + 1)

    def radius_check(self) -> float:
        """Heuristic limsup |a_m|^{1/m} over the upper half of the window."""
        ms = [m for m in self.orders(max(1, self.M // 2)) if self.a(m) != 0]
        if not ms:
            return 0.0
        return max(abs(self.a(m)) ** (1.0 / m) for m in ms)

    # -- kappa sums ----------------------------------------------------------
    def _abs_sum(self, lo: int, hi: Optional[int], r: float, rtol: float = 1e-15, mmax: int = 100000) -> float:
        if not (0 < r < self.R_f):
            raise SeriesError(f"r={r} outside (0, R_f={self.R_f})")
        lo = max(lo, -self.n0)
        if hi is not None:
            return math.fsum(abs(self.a(m)) * r ** m for m in range(lo, hi + 1))
        q = r / self.R_f if math.isfinite(self.R_f) else 0.0
        terms = []
        last = []  # recent nonzero terms
        m = lo
        while True:
            if m > self.M and self.coeff is None:
                break
            am = abs(self.a(m))
            if am:
                t = am * r ** m
                terms.append(t)
                last = (last + [t])[-2:]
                if m >= max(lo, 0) + 8 and len(last) == 2:
                    s = math.fsum(terms)
                    ratio = max(q, last[1] / last[0] if last[0] else 0.0)
                    if ratio < 1:
                        tail = last[1] * ratio / (1 - ratio)
                        if tail <= rtol * s:
                            return s + tail
            m += 1
            if m - lo > mmax:
                raise SeriesError(f"kappa sum did not converge at r={r} (R_f={self.R_f})")
        s = math.fsum(terms)
        if not last:
            return s
        ratio = max(q, last[-1] / last[0] if len(last) == 2 and last[0] else q)
        if ratio >= 1:
            raise SeriesError("tail bound cannot close")
        return s + last[-1] * ratio / (1 - ratio)

    def kappa(self, r: float) -> float:
        """kappa(r) = sum_{m >= -n0} |a_m| r^m."""
        return self._abs_sum(-self.n0, None, r)

    def kappa_tail(self, n: int, r: float) -> float:
        """kappa_n(r) = sum_{m >= n+1} |a_m| r^m."""
        return self._abs_sum(n + 1, None, r)

    def kappa_range(self, n: int, n2: int, r: float) -> float:
        """kappa_{n,n'}(r) = sum_{n <= m <= n'} |a_m| r^m."""
        if n2 < n:
            return 0.0
        return self._abs_sum(n, n2, r)

    # -- remainder function phi_n -------------------------------------------
    def poly(self, u, n: int):
        """sum_{m=-n0}^{n} a_m u^m."""
        u = np.asarray(u, dtype=complex)
        out = np.zeros(u.shape, dtype=complex)
        for m in self.orders(None, n):
            am = self.a(m)
            if am:
                out = out + am * u ** m
        return out

    def phi(self, u, n: int, switch: float | None = None):
        """phi_n(u) = f(u) - sum_{m <= n} a_m u^m, stable near u = 0.

        Inside |u| < switch the Laurent tail sum_{m > n} a_m u^m is summed
        directly; outside, f is evaluated and the polynomial subtracted.
        """
        if self.func is None:
            raise SeriesError("phi needs the function itself")
        u = np.asarray(u, dtype=complex)
        if switch is None:
            switch = min(1.5, 0.5 * self.R_f) if math.isfinite(self.R_f) else 1.5
        small = np.abs(u) < switch
        out = np.empty(u.shape, dtype=complex)
        if np.any(~small):
            with np.errstate(all="ignore"):
                out[~small] = self.func(u[~small]) - self.poly(u[~small], n)
        if np.any(small):
            us = u[small]
            acc = np.zeros(us.shape, dtype=complex)
            scale = float(np.max(np.abs(us))) if us.size else 0.0
            m = n + 1
            quiet = 0
            while m < n + 4000:
                am = self.a(m)
                if am:
                    t = am * us ** m
                    acc = acc + t
                    bound = abs(am) * scale ** m
                    ref = np.max(np.abs(acc)) if acc.size else 0.0
                    if bound <= 1e-17 * max(ref, 1e-300):
                        quiet += 1
                        if quiet >= 2:
                            break
                    else:
                        quiet = 0
                m += 1
            out[small] = acc
        return out


def exp_series(M: int = 64) -> LaurentSeries:
    return LaurentSeries.from_callable(lambda m: math.exp(-math.lgamma(m + 1)), 0, M, math.inf, np.exp)


# ----------------------------------------------------------------------------

@dataclass
class FormalGammaSeries:
    """Terms c_m(w) = a_m h_m(w) of the formal gamma-series at a fixed w."""

    m_values: np.ndarray
    terms: np.ndarray
    split: int = 1
    w: complex = 0j
    errors: Optional[np.ndarray] = None

    def __post_init__(self):
        self.m_values = np.asarray(self.m_values, dtype=int)
        self.terms = np.asarray(self.terms, dtype=complex)
        if self.m_values.shape != self.terms.shape:
            raise SeriesError("one term per order")

    def term(self, m: int) -> complex:
        idx = np.nonzero(self.m_values == m)[0]
        return complex(self.terms[idx[0]]) if idx.size else 0j

    @property
    def minus(self):
        sel = self.m_values < self.split
        return self.m_values[sel], self.terms[sel]

    @property
    def plus(self):
        sel = self.m_values >= self.split
        return self.m_values[sel], self.terms[sel]

    def value(self, gamma: complex, n: Optional[int] = None) -> complex:
        """Truncation sum_{m <= n} c_m gamma^m (all stored terms when n is None)."""
        sel = self.m_values <= (n if n is not None else self.m_values.max(initial=0))
        if not np.any(sel):
            return 0j
        vals = self.terms[sel] * np.power(complex(gamma), self.m_values[sel].astype(float))
        return complex(math.fsum(vals.real), math.fsum(vals.imag))

    def g_minus(self, gamma: complex) -> complex:
        ms, cs = self.minus
        vals = cs * np.power(complex(gamma), ms.astype(float))
        return complex(math.fsum(vals.real), math.fsum(vals.imag))

    def partial_sums(self, gamma: complex):
        order = np.argsort(self.m_values)
        vals = self.terms[order] * np.power(complex(gamma), self.m_values[order].astype(float))
        return self.m_values[order], np.cumsum(vals)


@dataclass
class BorelSeries:
    """Coefficients b_l of xi^l, l = 0 .. L."""

    coeffs: np.ndarray
    radius: float = math.nan

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=complex)
        out = np.zeros(xi.shape, dtype=complex)
        for b in self.coeffs[::-1]:
            out = out * xi + b
        return out


def borel_transform(g: FormalGammaSeries):
    """gamma^m -> xi^{m-1}/(m-1)! on the g+ part; returns (BorelSeries, (m, c) of g-)."""
    if g.split < 1:
        raise SeriesError("split index must be >= 1 for the Borel transform")
    ms, cs = g.plus
    if np.any(ms <= 0):
        raise SeriesError("g+ terms need m >= 1")
    L = int(ms.max(initial=0))
    b = np.zeros(max(L, 1), dtype=complex)
    for m, c in zip(ms, cs):
        b[m - 1] += c / math.factorial(m - 1)
    bs = BorelSeries(b)
    bs.radius = borel_radius(bs)
    return bs, g.minus


def formal_laplace(b: BorelSeries):
    """Term-by-term Laplace: sum b_l l! gamma^{l+1}, returned as (m, c_m)."""
    ls = np.arange(b.coeffs.size)
    return ls + 1, np.array([b.coeffs[l] * math.factorial(l) for l in ls], dtype=complex)


def borel_radius(b: BorelSeries) -> float:
    """Radius from the nonzero coefficients in the upper half of the window.

    Uses a least-squares slope of log|b_l| against l, which handles series
    with only even (or only odd) powers.
    """
    ls = np.arange(b.coeffs.size)
    nz = np.abs(b.coeffs) > 0
    ls, mags = ls[nz], np.abs(b.coeffs[nz])
    if ls.size < 3:
        return math.inf
    half = ls >= ls.max() / 2
    if half.sum() < 2:
        half = np.ones_like(ls, dtype=bool)
    slope, _ = np.polyfit(ls[half], np.log(mags[half]), 1)
    return math.exp(-slope) if slope < 0 else (math.inf if slope < -50 else math.exp(-slope))


@dataclass
class GevreyReport:
    A: float
    sigma: float
    residual: float
    convergent: bool
    used_orders: tuple = ()

    @property
    def borel_radius(self) -> float:
        return math.inf if self.sigma == 0 else 1.0 / self.sigma


def gevrey1_diagnose(g: FormalGammaSeries, window: str = "upper") -> GevreyReport:
    """Fit |c_m| ~ A sigma^m (m - s)! on the nonzero g+ terms.

    sigma is the fitted growth rate; 1/sigma estimates the Borel radius.  The
    fit uses the ratio of consecutive nonzero terms (so parity gaps are fine)
    over the upper half of the window.  Terms decaying faster than any
    geometric rate times the factorial are reported as convergent.
    """
    ms, cs = g.plus
    nz = np.abs(cs) > 0
    ms, cs = ms[nz], cs[nz]
    if ms.size == 0:
        return GevreyReport(0.0, 0.0, 0.0, True, ())
    if ms.size < 8:
        raise SeriesError("need at least 8 nonzero g+ terms")
    s = g.split
    logs = np.log(np.abs(cs)) - np.array([math.lgamma(m - s + 1) for m in ms])
    sel = ms >= ms[len(ms) // 2] if window == "upper" else np.ones_like(ms, dtype=bool)
    slope, icpt = np.polyfit(ms[sel], logs[sel], 1)
    resid = float(np.sqrt(np.mean((logs[sel] - (icpt + slope * ms[sel])) ** 2)))
    sigma = math.exp(slope)
    # a plain geometric fit: convergent series have |c_m|^{1/m} bounded
    gslope, _ = np.polyfit(ms[sel], np.log(np.abs(cs[sel])), 1)
    lg = np.array([math.lgamma(m - s + 1) for m in ms[sel]])
    # factorial growth shows as the log-factorial explaining the curvature;
    # if the raw geometric fit is already good and the fitted sigma is tiny
    # compared with the window, the series is flagged convergent.
    raw_resid = float(np.sqrt(np.mean((np.log(np.abs(cs[sel])) - np.polyval(np.polyfit(ms[sel], np.log(np.abs(cs[sel])), 1), ms[sel])) ** 2)))
    convergent = sigma * ms[sel].max() < 0.5 and raw_resid <= resid + 1e-9
    return GevreyReport(math.exp(icpt), sigma, resid, bool(convergent), tuple(int(m) for m in ms))
