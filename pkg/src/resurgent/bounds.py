"""Explicit remainder constants and certificates for the asymptotic expansions.

Four families of bounds are provided:

* ``global_bound``: orders n >= k0 - 1 under the global angle and envelope
  hypotheses, with the factorial-times-power shape
  C_n c_w c~ |gamma|^n delta^{-(n-k0+1)} (n-k0+1)!.
* ``low_order_bound``: low orders -n0 <= n < k0 - 1 on a contour that stays a
  distance rho > 0 away from the origin.
* ``outer_angle_bound``: the variant where the angle condition is only required
  outside a disc of radius r/|gamma| and the inner arc length L(r) enters.
* ``entire_bound``: entire f (R_f = inf) with a per-order envelope
  |phi~_n(gamma z)| <= C^{(n)} e^{delta~ |z|}.

Every bound returns an :class:`ErrorCertificate` comparing it with the
measured remainder int K(w, z) phi_n(gamma z) dz.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import optimize

from .contour import Contour, arc_length_within, cos_theta_bound, min_modulus, sample_points
from .series import FormalGammaSeries, LaurentSeries, SeriesError
from .transform import TransformProblem, measure_remainder

QUAD_SLACK = 1e-2
MEASURE_TOL = 1e-9



class OrderOutOfRange(ValueError):
    """The requested truncation order is outside the range a bound covers."""

@dataclass
class DecayHypotheses:
    """Constants entering the remainder bounds for one (w, gamma) pair."""

    delta1: float
    delta2: float
    c: float
    b: float
    d: int
    k0: int
    n0: int
    c_w: float = 1.0
    c_tilde: float = 1.0
    delta_tilde: Optional[float] = None
    C_n: Optional[Callable[[int], float]] = None
    r_wg: Optional[float] = None
    rho: Optional[float] = None
    L: Optional[Callable[[float], float]] = None
    violated: str = ""

    def __post_init__(self):
        if self.b <= 0:
            raise ValueError("angle bound b must be positive")
        if self.d < 1:
            raise ValueError("segment count d must be >= 1")
        if self.delta_tilde is None and self.delta <= 0:
            raise ValueError("delta = delta1 - delta2 must be positive")
        if self.delta_tilde is not None and self.delta1 - self.delta_tilde <= 0:
            raise ValueError("delta1 - delta~ must be positive")

    @property
    def delta(self) -> float:
        if self.delta_tilde is not None:
            return self.delta1 - self.delta_tilde
        return self.delta1 - self.delta2


@dataclass
class ErrorCertificate:
    theorem: str
    n: int
    constant: float
    bound: float
    measured: float = math.nan
    measured_error: float = 0.0
    passed: bool = False
    w: complex = 0j
    gamma: complex = 0j
    reason: str = ""
    extra: dict = field(default_factory=dict)

    def judge(self, measured: float, measured_error: float = 0.0) -> "ErrorCertificate":
        self.measured = float(measured)
        self.measured_error = float(measured_error)
        self.passed = bool(math.isfinite(self.bound) and self.measured <= self.bound * (1 + QUAD_SLACK))
        if self.reason:
            # a recorded hypothesis failure voids the certificate whatever was measured
            self.passed = False
        elif not self.passed:
            self.reason = "measured remainder exceeds the bound"
        return self

    def as_record(self) -> dict:
        d = asdict(self)
        for k in ("w", "gamma"):
            z = complex(d[k])
            d[k] = {"re": z.real, "im": z.imag}
        return d


# ----------------------------------------------------------------------------
# helpers

def sup_on_contour(fun: Callable, c: Contour, far: float = 60.0, n: int = 4000) -> float:
    """Numerical sup of a nonnegative function over a contour (dense grid plus local refinement)."""
    best = 0.0
    for seg in c.segments:
        if seg.kind == "ray":
            t = seg.t0 + np.concatenate([np.linspace(0.0, 2.0, n // 2), np.geomspace(2.0, far, n // 2)[1:]])
        else:
            t = np.linspace(seg.t0, seg.t1, n)
        with np.errstate(all="ignore"):
            v = np.asarray(fun(seg.point(t)), dtype=float)
        v = np.where(np.isfinite(v), v, -np.inf)
        i = int(np.argmax(v))
        if not np.isfinite(v[i]):
            continue
        lo, hi = t[max(i - 1, 0)], t[min(i + 1, t.size - 1)]
        if hi > lo:
            res = optimize.minimize_scalar(lambda s: -float(fun(seg.point(np.array([s])))[0]),
                                           bounds=(lo, hi), method="bounded", options={"xatol": 1e-12 * max(1, abs(hi))})
            best = max(best, v[i], -res.fun)
        else:
            best = max(best, v[i])
    return float(best)


def _inf_over_r(obj: Callable[[float], float], lo: float, hi: float, rtol: float = 1e-12):
    """Minimise obj on (lo, hi): 64-point log grid, then bounded Brent refinement."""
    grid = np.geomspace(lo, hi, 66)[1:-1]
    vals = []
    for r in grid:
        try:
            vals.append(obj(r))
        except (SeriesError, OverflowError, ZeroDivisionError):
            vals.append(math.inf)
    vals = np.array(vals)
    if not np.any(np.isfinite(vals)):
        raise SeriesError("objective not finite anywhere on the search grid")
    i = int(np.argmin(vals))
    a = grid[max(i - 1, 0)] if i > 0 else lo * (1 + 1e-9)
    b = grid[min(i + 1, grid.size - 1)] if i < grid.size - 1 else hi * (1 - 1e-9)

    def safe(r):
        try:
            return obj(r)
        except (SeriesError, OverflowError, ZeroDivisionError):
            return math.inf

    res = optimize.minimize_scalar(safe, bounds=(a, b), method="bounded", options={"xatol": rtol * b})
    if res.fun <= vals[i]:
        return float(res.x), float(res.fun)
    return float(grid[i]), float(vals[i])


def r_search_range(f: LaurentSeries, cap: float = 50.0):
    hi = f.R_f if math.isfinite(f.R_f) else cap
    return 1e-6 * hi, hi * (1 - 1e-12)


def cprime_n(f: LaurentSeries, h: DecayHypotheses, n: int, r_cap: float = 50.0, return_r: bool = False):
    """c'_n = inf_{0<r<R_f} r^{-n} (c r^{-n0} + kappa(r))."""
    if n < h.k0:
        raise OrderOutOfRange("c'_n is defined for n >= k0")
    lo, hi = r_search_range(f, r_cap)
    r, v = _inf_over_r(lambda r: r ** (-n) * (h.c * r ** (-f.n0) + f.kappa(r)), lo, hi)
    return (v, r) if return_r else v


def _measure(p: TransformProblem, n: int, w, gamma, tol: float, contour: Optional[Contour]):
    res = measure_remainder(p, n, w, gamma, tol=tol, contour=contour)
    return abs(res.value), res.error


def _certify(cert: ErrorCertificate, p, n, w, gamma, measure: bool, tol: Optional[float], contour=None,
             measured: Optional[float] = None):
    if measured is not None:
        return cert.judge(measured)
    if not measure:
        return cert
    if tol is None:
        # tight enough that the measured value is meaningful even when the bound is loose
        tol = max(min(QUAD_SLACK * cert.bound, MEASURE_TOL), 1e-15) if math.isfinite(cert.bound) and cert.bound > 0 \
            else MEASURE_TOL
    m, e = _measure(p, n, w, gamma, tol, contour)
    return cert.judge(m, e)


# ----------------------------------------------------------------------------
# remainder bounds

def global_constant(f: LaurentSeries, h: DecayHypotheses, n: int, gamma) -> float:
    """C_n (with C_{k0-1} = d|gamma| c'_{k0} / (b c delta))."""
    if n < h.k0 - 1:
        raise OrderOutOfRange("the global bound needs n >= k0 - 1")
    if n == h.k0 - 1:
        return h.d * abs(gamma) / (h.b * h.c * h.delta) * cprime_n(f, h, h.k0)
    return 2 * h.d / (h.b * h.c * math.sqrt(math.pi * (1 + 2 * (n - h.k0)))) * cprime_n(f, h, n)


def global_bound(p: TransformProblem, h: DecayHypotheses, n: int, w, gamma, measure: bool = True,
               tol: Optional[float] = None, contour: Optional[Contour] = None,
               measured: Optional[float] = None) -> ErrorCertificate:
    f = p.function.laurent
    C = global_constant(f, h, n, gamma)
    k = n - h.k0 + 1
    bound = C * h.c_w * h.c_tilde * abs(gamma) ** n * h.delta ** (-k) * math.factorial(k)
    cert = ErrorCertificate("global", n, C, bound, w=complex(w), gamma=complex(gamma), reason=h.violated)
    return _certify(cert, p, n, w, gamma, measure, tol, contour, measured)


def low_order_constants(f: LaurentSeries, h: DecayHypotheses, n: int, r: float):
    """(statement constant, proof constant) of the low-order bound, both multiplying c_w |gamma|^{n+1}/delta."""
    if h.rho is None or h.rho <= 0:
        raise ValueError("rho_w must be positive")
    if n < -f.n0 or n >= h.k0 - 1:
        raise OrderOutOfRange("low-order bound needs -n0 <= n < k0 - 1")
    if not (0 < r < f.R_f):
        raise ValueError("r must lie in (0, R_f)")
    kap = f.kappa(r)
    stmt = (h.d * h.c * r ** (-f.n0) + h.d * max(r ** (-f.n0), h.rho ** (n - h.k0 + 1)) * kap) / (h.b * r ** (n + 1))
    proof = h.d / (h.b * r ** (n + 1)) * (h.c_tilde * r ** (-f.n0) + r ** (-h.k0) * f.kappa_range(-f.n0, n, r)
                                            + h.rho ** (n - h.k0 + 1) * f.kappa_tail(n, r))
    return stmt, proof


def low_order_bound(p: TransformProblem, h: DecayHypotheses, n: int, r: Optional[float], w, gamma,
                measure: bool = True, tol: Optional[float] = None, contour: Optional[Contour] = None,
                measured: Optional[float] = None) -> ErrorCertificate:
    """Low-order bound; certifies against the larger of the statement and proof forms.

    With r=None the radius is optimised over (|gamma|, R_f).
    """
    f = p.function.laurent
    if abs(gamma) >= f.R_f:
        raise ValueError("need |gamma| < r < R_f")

    def total(rr):
        s, q = low_order_constants(f, h, n, rr)
        return max(s * h.c_tilde, q)

    if r is None:
        lo = abs(gamma) * (1 + 1e-9)
        hi = f.R_f * (1 - 1e-9) if math.isfinite(f.R_f) else 50.0
        r, _ = _inf_over_r(total, lo, hi)
    if abs(gamma) >= r:
        raise ValueError("need |gamma| < r")
    stmt, proof = low_order_constants(f, h, n, r)
    scale = h.c_w * abs(gamma) ** (n + 1) / h.delta
    b_stmt, b_proof = stmt * h.c_tilde * scale, proof * scale
    bound = max(b_stmt, b_proof)
    cert = ErrorCertificate("low_order", n, max(stmt, proof), bound, w=complex(w), gamma=complex(gamma),
                            extra={"r": r, "statement_bound": b_stmt, "proof_bound": b_proof})
    return _certify(cert, p, n, w, gamma, measure, tol, contour, measured)


def outer_angle_constant(f: LaurentSeries, h: DecayHypotheses, n: int, r: float, L: float, branch: str = "auto") -> float:
    """C-bar^{(n)}: the sqrt-denominator form for n >= k0 ("high"), the plain form otherwise ("low")."""
    high = branch == "high" or (branch == "auto" and n >= h.k0)
    if high:
        if n < h.k0:
            raise OrderOutOfRange("the high-order form needs n >= k0")
        return (r ** (-n) * (h.d * h.c / h.b * r ** (-f.n0) + max(2 * math.sqrt(2), L / r) * f.kappa(r))
                / math.sqrt(math.pi * (n - h.k0 + 1)))
    return r ** (-n - 1) * (h.d * h.c / h.b * r ** (-f.n0) + max(1.0, L) * f.kappa(r))


def outer_angle_value(f, h, n, r, L, gamma, branch: str = "auto") -> float:
    high = branch == "high" or (branch == "auto" and n >= h.k0)
    C = outer_angle_constant(f, h, n, r, L, "high" if high else "low")
    if high:
        k = n - h.k0 + 1
        return C * h.c_w * h.c_tilde * abs(gamma) ** n * h.delta ** (-k) * math.factorial(k)
    return C * h.c_w * h.c_tilde * abs(gamma) ** (n + 1) / h.delta


def outer_angle_bound(p: TransformProblem, h: DecayHypotheses, n: int, w, gamma, r: Optional[float] = None,
                 measure: bool = True, tol: Optional[float] = None, contour: Optional[Contour] = None,
                 measured: Optional[float] = None) -> ErrorCertificate:
    """Bound with the angle condition only outside D(0, r/|gamma|).

    ``h.L(r)`` gives the length of the part of the contour inside that disc;
    ``h.b`` must be valid for every r in the search range.  At n = k0 both
    branch formulas are evaluated and the larger is reported.  When r is
    None it is optimised over (0, R_f).
    """
    f = p.function.laurent
    if h.L is None:
        raise ValueError("this bound needs the inner length function L(r)")

    def value(rr, branch="auto"):
        return outer_angle_value(f, h, n, rr, h.L(rr), gamma, branch)

    if r is None:
        lo, hi = r_search_range(f)
        r, _ = _inf_over_r(value, lo, hi)
    L = h.L(r)
    if n == h.k0:
        bound = max(value(r, "high"), value(r, "low"))
    else:
        bound = value(r)
    C = outer_angle_constant(f, h, n, r, L)
    cert = ErrorCertificate("outer_angle", n, C, bound, w=complex(w), gamma=complex(gamma),
                            extra={"r": r, "L": L})
    return _certify(cert, p, n, w, gamma, measure, tol, contour, measured)


def entire_bound(p: TransformProblem, h: DecayHypotheses, n: int, w, gamma, measure: bool = True,
                tol: Optional[float] = None, contour: Optional[Contour] = None, printed_exponent: bool = False,
                measured: Optional[float] = None) -> ErrorCertificate:
    """Entire-f bound C^{(n)} (d c_w c~/b) |gamma|^{n+1} delta^{-(n-k0+2)} (n-k0+1)!.

    ``printed_exponent=True`` evaluates the variant with delta^{+(n-k0+2)} for comparison.
    """
    f = p.function.laurent
    if math.isfinite(f.R_f):
        raise ValueError("single-pole bound needs R_f = inf")
    if n < h.k0 - 1:
        raise OrderOutOfRange("need n >= k0 - 1")
    if h.C_n is None or h.delta_tilde is None:
        raise ValueError("need the envelope C^{(n)} and delta~")
    Cn = float(h.C_n(n))
    e = n - h.k0 + 2
    dpow = h.delta ** e if printed_exponent else h.delta ** (-e)
    bound = Cn * h.d * h.c_w * h.c_tilde / h.b * abs(gamma) ** (n + 1) * dpow * math.factorial(n - h.k0 + 1)
    cert = ErrorCertificate("entire", n, Cn, bound, w=complex(w), gamma=complex(gamma),
                            extra={"printed_exponent": printed_exponent})
    return _certify(cert, p, n, w, gamma, measure, tol, contour, measured)


# ----------------------------------------------------------------------------

@dataclass
class RadiusReport:
    R: float
    radius: float
    convergent: bool
    window: int
    note: str = ""


def convergence_radius(f: LaurentSeries, h: DecayHypotheses, window: Optional[int] = None) -> RadiusReport:
    """delta1 * R with R^{-1} = limsup (|a_m| (m - k0)!)^{1/m}, estimated on the coefficient window.

    The limsup is estimated from the upper half of the window.  If the
    sequence is still increasing across that half (no finite limit in
    sight), R = 0 is reported.
    """
    M = f.M if window is None else window
    ms = [m for m in range(max(h.k0, 1), M + 1) if m - h.k0 >= 0 and f.a(m) != 0]
    if len(ms) < 8:
        return RadiusReport(math.nan, math.nan, False, len(ms), "window too short")
    vals = np.array([math.exp((math.log(abs(f.a(m))) + math.lgamma(m - h.k0 + 1)) / m) for m in ms])
    upper = vals[len(vals) // 2:]
    mu = np.array(ms[len(ms) // 2:], dtype=float)
    # growth test: fit vals ~ alpha + beta log m; a clearly positive trend means no finite limsup
    slope = np.polyfit(np.log(mu), upper, 1)[0]
    if slope > 0.2 * float(np.max(upper)):
        return RadiusReport(0.0, 0.0, False, len(ms), "coefficients grow faster than any R^{-m} (m-k0)!^{-1}")
    # extrapolate the (typically 1/m-converging) sequence to m = infinity
    if upper.size >= 3:
        A = np.vstack([np.ones_like(mu), 1.0 / mu]).T
        lim = float(np.linalg.lstsq(A, upper, rcond=None)[0][0])
        lim = max(lim, 0.0)
    else:
        lim = float(upper[-1])
    if lim <= 1e-12:
        return RadiusReport(math.inf, math.inf, True, len(ms))
    R = 1.0 / lim
    return RadiusReport(R, h.delta1 * R, True, len(ms))


def gamma_series_radius(g: FormalGammaSeries) -> float:
    """Cauchy-Hadamard radius of the assembled gamma-series from the upper half of its window."""
    ms, cs = g.plus
    nz = np.abs(cs) > 0
    ms, cs = ms[nz], cs[nz]
    if ms.size < 4:
        return math.inf
    half = ms >= ms[len(ms) // 2]
    slope, _ = np.polyfit(ms[half], np.log(np.abs(cs[half])), 1)
    return math.exp(-slope)
