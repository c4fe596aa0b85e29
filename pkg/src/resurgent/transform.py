"""The transform g_gamma(w) = int_Gamma K(w, z) f(gamma z) dz, its moments and truncations."""
from __future__ import annotations

import json
import math
import os
import threading
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .contour import Contour, QuadratureResult, integrate, sample_points
from .series import FormalGammaSeries, LaurentSeries


class DomainViolation(ValueError):
    """(w, gamma) outside the declared domains of a problem."""


class HypothesisViolation(ValueError):
    """A declared decay envelope failed a numerical spot check."""


def _always(_x) -> bool:
    return True


@dataclass
class KernelSpec:
    """K(w, z) together with its declared envelope c_w e^{-delta1 |z|} |z|^{-k0}."""

    K: Callable  # K(w, z_array) -> complex array
    k0: int
    delta1: float | Callable = 1.0
    c_w: Optional[Callable] = None
    R_K: Optional[Callable] = None
    poles: Optional[Callable] = None

    def delta1_at(self, w) -> float:
        return float(self.delta1(w)) if callable(self.delta1) else float(self.delta1)


@dataclass
class FunctionSpec:
    """f with Laurent data at 0 and its envelope c~_gamma e^{delta2 |z|} |gamma z|^{-n0}."""

    f: Callable  # f(u_array) -> complex array
    laurent: LaurentSeries
    delta2: float | Callable = 0.0
    c_tilde: Optional[Callable] = None
    c: float = 1.0
    poles: Optional[Callable] = None

    @property
    def n0(self) -> int:
        return self.laurent.n0

    def delta2_at(self, gamma) -> float:
        return float(self.delta2(gamma)) if callable(self.delta2) else float(self.delta2)


@dataclass
class TransformProblem:
    """A kernel/function pair, its contour family and its (w, gamma) domains.

    ``contour(w, gamma)`` builds Gamma_w; ``deformed(w, gamma)`` builds the
    contour the remainder estimates are stated on (defaults to Gamma_w).
    ``split`` is the g-/g+ boundary index (defaults to k0).
    """

    id: str
    kernel: KernelSpec
    function: FunctionSpec
    contour: Callable
    deformed: Optional[Callable] = None
    in_W: Callable = _always
    in_U: Callable = _always
    split: Optional[int] = None
    moment_closed_form: Optional[Callable] = None
    tail_decay: Optional[Callable] = None
    params: dict = field(default_factory=dict)
    description: str = ""

    @property
    def k0(self) -> int:
        return self.kernel.k0

    @property
    def n0(self) -> int:
        return self.function.n0

    @property
    def split_index(self) -> int:
        return self.k0 if self.split is None else self.split

    def a(self, m: int) -> complex:
        return self.function.laurent.a(m)

    def check_domain(self, w, gamma=None):
        if not self.in_W(w):
            raise DomainViolation(f"w={w} outside the W-domain of {self.id}")
        if gamma is not None:
            if gamma == 0:
                raise DomainViolation("gamma must be nonzero")
            if not self.in_U(gamma):
                raise DomainViolation(f"gamma={gamma} outside the U-domain of {self.id}")

    def decay(self, w, gamma=None) -> Optional[float]:
        if self.tail_decay is None:
            return None
        return self.tail_decay(w, gamma)

    def remainder_contour(self, w, gamma) -> Contour:
        return (self.deformed or self.contour)(w, gamma)


# ----------------------------------------------------------------------------
# moment cache

class MomentTable:
    """Map (problem id, m, w, tol) -> (h_m(w), error), optionally persisted as JSON.

    Reads are lock-free dictionary lookups; writes (and the file flush) are
    serialized by a lock.
    """

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self._data: dict = {}
        self._lock = threading.Lock()
        if path and os.path.exists(path):
            try:
                with open(path) as fh:
                    raw = json.load(fh)
                for k, v in raw.items():
                    self._data[k] = (complex(v[0], v[1]), float(v[2]))
            except (OSError, ValueError, IndexError, TypeError):
                self._data = {}

    @staticmethod
    def key(pid: str, m: int, w, tol: float) -> str:
        w = complex(w)
        return f"{pid}|{m}|{w.real!r}|{w.imag!r}|{tol!r}"

    def get(self, pid, m, w, tol):
        return self._data.get(self.key(pid, m, w, tol))

    def put(self, pid, m, w, tol, value: complex, error: float):
        with self._lock:
            self._data[self.key(pid, m, w, tol)] = (complex(value), float(error))
            if self.path:
                tmp = self.path + ".tmp"
                os.makedirs(os.path.dirname(os.path.abspath(self.path)), exist_ok=True)
                with open(tmp, "w") as fh:
                    json.dump({k: [v[0].real, v[0].imag, v[1]] for k, v in sorted(self._data.items())}, fh)
                os.replace(tmp, self.path)

    def __len__(self):
        return len(self._data)


DEFAULT_TABLE = MomentTable()


# ----------------------------------------------------------------------------

def evaluate_g_result(p: TransformProblem, w, gamma, tol: float = 1e-10,
                      contour: Optional[Contour] = None) -> QuadratureResult:
    p.check_domain(w, gamma)
    c = contour if contour is not None else p.contour(w, gamma)
    K, f = p.kernel.K, p.function.f
    return integrate(c, lambda z: K(w, z) * f(gamma * z), tol=tol, tail_decay=p.decay(w, gamma))


def evaluate_g(p: TransformProblem, w, gamma, tol: float = 1e-10, contour: Optional[Contour] = None) -> complex:
    """g_gamma(w) by adaptive contour quadrature."""
    return evaluate_g_result(p, w, gamma, tol, contour).value


def moment_h_result(p: TransformProblem, m: int, w, tol: float = 1e-12,
                    table: Optional[MomentTable] = None, contour: Optional[Contour] = None):
    """(h_m(w), error) with caching; h_m(w) = int K(w, z) z^m dz."""
    if m < -p.n0:
        raise ValueError(f"moment order {m} below -n0 = {-p.n0}")
    p.check_domain(w)
    table = DEFAULT_TABLE if table is None else table
    if contour is None:
        hit = table.get(p.id, m, w, tol)
        if hit is not None:
            return hit
    c = contour if contour is not None else p.contour(w, None)
    K = p.kernel.K
    d = p.decay(w, None)
    res = integrate(c, lambda z: K(w, z) * z ** m, tol=tol, tail_decay=d)
    if contour is None:
        table.put(p.id, m, w, tol, res.value, res.error)
    return res.value, res.error


def moment_h(p: TransformProblem, m: int, w, tol: float = 1e-12, table: Optional[MomentTable] = None) -> complex:
    return moment_h_result(p, m, w, tol, table)[0]


def moments(p: TransformProblem, w, m_max: int, tol: float = 1e-12, closed_form: bool = False,
            table: Optional[MomentTable] = None) -> dict:
    """{m: h_m(w)} for m = -n0 .. m_max, skipping orders with a_m = 0."""
    out = {}
    for m in range(-p.n0, m_max + 1):
        if p.a(m) == 0:
            continue
        if closed_form and p.moment_closed_form is not None:
            out[m] = complex(p.moment_closed_form(m, w))
        else:
            out[m] = moment_h(p, m, w, tol, table)
    return out


def truncated_series(p: TransformProblem, n: int, w, gamma, tol: float = 1e-12,
                     closed_form: bool = False, hs: Optional[dict] = None) -> complex:
    """A~^{gamma,n}(w) = sum_{m=-n0}^{n} a_m h_m(w) gamma^m (0 for n < -n0)."""
    if n < -p.n0:
        return 0j
    if hs is None:
        hs = moments(p, w, n, tol, closed_form)
    vals = [p.a(m) * hs[m] * complex(gamma) ** m for m in range(-p.n0, n + 1) if p.a(m) != 0]
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def assemble_formal_series(p: TransformProblem, w, M: int, tol: float = 1e-12,
                           closed_form: bool = False, split: Optional[int] = None) -> FormalGammaSeries:
    """Terms c_m = a_m h_m(w), m = -n0 .. M, with the g-/g+ split at ``split``."""
    ms = np.arange(-p.n0, M + 1)
    hs = moments(p, w, M, tol, closed_form) if M >= -p.n0 else {}
    terms = np.array([p.a(int(m)) * hs.get(int(m), 0j) for m in ms], dtype=complex)
    return FormalGammaSeries(ms, terms, p.split_index if split is None else split, complex(w))


def measure_remainder(p: TransformProblem, n: int, w, gamma, tol: float = 1e-12,
                      contour: Optional[Contour] = None) -> QuadratureResult:
    """int K(w, z) phi_n(gamma z) dz = g_gamma(w) - A~^{gamma,n}(w), without cancellation."""
    p.check_domain(w, gamma)
    c = contour if contour is not None else p.remainder_contour(w, gamma)
    lau = p.function.laurent
    K = p.kernel.K
    return integrate(c, lambda z: K(w, z) * lau.phi(gamma * z, n), tol=tol, tail_decay=p.decay(w, gamma))


def spot_check_envelopes(p: TransformProblem, w, gamma, c_w: float, delta1: float, c_tilde: float,
                         delta2: float, contour: Optional[Contour] = None, samples: int = 32,
                         slack: float = 1e-9) -> None:
    """Check |K| <= c_w e^{-delta1|z|}|z|^{-k0} and |f(gamma z)| <= c~ e^{delta2|z|}|gamma z|^{-n0}.

    Evaluated at ``samples`` points spread over the contour; raises
    :class:`HypothesisViolation` on the first failure.
    """
    c = contour if contour is not None else p.remainder_contour(w, gamma)
    per = max(2, samples // max(1, c.d))
    zs = sample_points(c, per, far=30.0)
    zs = zs[np.abs(zs) > 1e-8]
    kz = np.abs(p.kernel.K(w, zs))
    env_k = c_w * np.exp(-delta1 * np.abs(zs)) * np.abs(zs) ** (-p.k0)
    bad = kz > env_k * (1 + slack) + 1e-300
    if np.any(bad):
        z0 = zs[np.argmax(bad)]
        raise HypothesisViolation(f"kernel envelope fails at z={z0:.4g}")
    fz = np.abs(p.function.f(gamma * zs))
    env_f = c_tilde * np.exp(delta2 * np.abs(zs)) * np.abs(gamma * zs) ** (-p.n0)
    bad = fz > env_f * (1 + slack) + 1e-300
    if np.any(bad):
        z0 = zs[np.argmax(bad)]
        raise HypothesisViolation(f"function envelope fails at z={z0:.4g}")
