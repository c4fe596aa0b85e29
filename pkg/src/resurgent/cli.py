"""Command-line interface: eval, expand, certify, borel, stokes, roots and verify.

Exit codes: 0 success, 1 usage or parse error, 2 domain violation,
3 numerical failure.  Errors are reported as one JSON object on stderr.

``--problem`` takes a registered id or the path of a definition file::

    [problem]
    id = gauss_2f1      ; faddeev, gamma, recip_gamma, riemann_zeta, hurwitz_zeta, gauss_2f1, airy
    a = 0.5
    b = 1.5
    c = 2.5

Every other key must be a numeric parameter of that problem; anything else is
rejected.  Command-line parameter flags override the file.  Moments computed
by quadrature are cached in ``$RESURGENT_CACHE_DIR/moments.json`` (or
``--cache-dir``).  JSON output follows docs/result_record.schema.json.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

import numpy as np

from . import borel, classical, faddeev, registry
from .bounds import OrderOutOfRange
from .transform import MomentTable, evaluate_g_result, moments

SCHEMA = "resurgent.result/1"
ERROR_SCHEMA = "resurgent.error/1"
CACHE_ENV = "RESURGENT_CACHE_DIR"
TOL_RANGE = (1e-14, 1e-2)


class UsageError(ValueError):
    pass


# ----------------------------------------------------------------------------
# parsing and formatting

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_IMAG_RE = re.compile(rf"^(?P<im>[+-]?(?:{_NUM})?)[ij]$")
_COMPLEX_RE = re.compile(rf"^(?P<re>[+-]?{_NUM})(?:(?P<im>[+-](?:{_NUM})?)[ij])?$")


def parse_complex(text: str) -> complex:
    """'1', '-0.5', '2i', '1+0.2i', '3e-2-1.5e-1i' -> complex (also accepts 'j')."""
    s = str(text).strip()
    m = _IMAG_RE.match(s)
    if m is not None:
        re_part, im = 0.0, m.group("im")
    else:
        m = _COMPLEX_RE.match(s)
        if m is None:
            raise UsageError(f"cannot parse complex number {text!r}")
        re_part, im = float(m.group("re")), m.group("im")
    if im is None:
        im_part = 0.0
    else:
        im_part = float(im + "1") if im in ("", "+", "-") else float(im)
    z = complex(re_part, im_part)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise UsageError(f"non-finite complex number {text!r}")
    return z


def format_complex(z: complex) -> str:
    z = complex(z)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def cjson(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def parse_orders(text: str) -> list[int]:
    """'1..5' or '1,3,5' (or a single integer)."""
    s = str(text).strip()
    try:
        if ".." in s:
            a, b = s.split("..", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse order list {text!r}") from exc


@dataclass
class RunConfig:
    command: str
    problem: str
    params: dict = field(default_factory=dict)
    w: Optional[complex] = None
    gamma: Optional[complex] = None
    tol: float = 1e-10
    fmt: str = "json"
    output: Optional[str] = None
    cache_dir: Optional[str] = None
    jobs: int = 1
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (TOL_RANGE[0] <= self.tol <= TOL_RANGE[1]):
            raise UsageError(f"tol must lie in [{TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}]")
        if self.fmt not in ("json", "csv"):
            raise UsageError("format must be json or csv")

    def inputs(self) -> dict:
        d = {"problem": self.problem, "params": dict(sorted(self.params.items())), "tol": self.tol}
        if self.w is not None:
            d["w"] = cjson(self.w)
        if self.gamma is not None:
            d["gamma"] = cjson(self.gamma)
        for k, v in sorted(self.extra.items()):
            d[k] = cjson(v) if isinstance(v, complex) else v
        return d

    def problem_obj(self):
        return registry.build(self.problem, **self.params)

    def table(self) -> Optional[MomentTable]:
        d = self.cache_dir or os.environ.get(CACHE_ENV)
        return MomentTable(os.path.join(d, "moments.json")) if d else None


def record(cfg: RunConfig, value=None, error=None, certificates=None, extra=None, t0=None) -> dict:
    rec = {"schema": SCHEMA, "subcommand": cfg.command, "inputs": cfg.inputs(),
           "value": None if value is None else cjson(value),
           "error": None if error is None else float(error),
           "certificates": certificates or [], "extra": extra or {},
           "wall_time": 0.0 if t0 is None else time.perf_counter() - t0}
    return rec


def _require(cfg: RunConfig, *names):
    for n in names:
        if getattr(cfg, n) is None:
            raise UsageError(f"--{n} is required for {cfg.command}")


def _pmap(cfg: RunConfig, fn, items):
    items = list(items)
    if cfg.jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cfg.jobs) as ex:
        return list(ex.map(fn, items))  # results in input order


# ----------------------------------------------------------------------------
# commands

def _derived(cfg: RunConfig, g: complex) -> dict:
    if cfg.problem == "faddeev":
        return {"log_S": cjson(g / 4)}
    if cfg.gamma == 1 and cfg.problem == "gauss_2f1":
        p = cfg.params
        import mpmath as mp
        pref = complex(mp.gamma(p["c"]) / (mp.gamma(p["a"]) * mp.gamma(p["b"])))
        return {"hyp2f1": cjson(1 + g * pref / (1j * math.pi))}
    if cfg.gamma == 1 and cfg.problem == "airy":
        return {"airy_ai": cjson(g / (2j * math.pi))}
    return {}


def cmd_eval(cfg: RunConfig) -> dict:
    _require(cfg, "w", "gamma")
    t0 = time.perf_counter()
    res = evaluate_g_result(cfg.problem_obj(), cfg.w, cfg.gamma, cfg.tol)
    return record(cfg, res.value, res.error, extra=_derived(cfg, res.value), t0=t0)


def cmd_expand(cfg: RunConfig) -> dict:
    _require(cfg, "w")
    t0 = time.perf_counter()
    n = int(cfg.extra.get("n", 0))
    gamma = 1.0 if cfg.gamma is None else cfg.gamma
    p = cfg.problem_obj()
    p.check_domain(cfg.w)
    closed = not cfg.extra.get("quadrature", False) and p.moment_closed_form is not None
    hs = moments(p, cfg.w, n, max(cfg.tol * 1e-2, 1e-14), closed_form=closed, table=cfg.table()) if n >= -p.n0 else {}
    rows = []
    for m in range(-p.n0, n + 1):
        c = p.a(m) * hs[m] if m in hs else 0j
        rows.append({"m": m, "c": cjson(c), "term": cjson(c * complex(gamma) ** m)})
    total = complex(math.fsum(r["term"]["re"] for r in rows), math.fsum(r["term"]["im"] for r in rows))
    return record(cfg, total, None, extra={"terms": rows, "closed_form_moments": closed}, t0=t0)


def _cert_records(certs) -> list:
    return [c.as_record() for c in certs]


def cmd_certify(cfg: RunConfig) -> list:
    _require(cfg, "w", "gamma")
    theorem = cfg.extra.get("theorem", "FE")
    orders = cfg.extra.get("orders") or [1]
    pid, w, g = cfg.problem, cfg.w, cfg.gamma

    def one(n):
        t0 = time.perf_counter()
        if pid == "faddeev" and theorem == "FE":
            certs = faddeev.verify_FE(w, g, cfg.params.get("theta_tilde", 0.0), n)
        elif pid == "faddeev" and theorem == "low_order":
            certs = [faddeev.low_order_certificate(w, g, n)]
        elif pid == "faddeev" and theorem == "outer_angle":
            certs = [faddeev.outer_angle_certificate(w, g, n)]
        elif pid in ("gamma", "riemann_zeta") and theorem == "global":
            alpha = cfg.params["alpha"]
            certs = classical.certify_global(cfg.problem_obj(), w, g, alpha, n_max=n, n_min=n,
                                             delta1=cfg.extra.get("delta1"))
        elif pid == "hurwitz_zeta" and theorem == "entire":
            certs = [classical.hurwitz_entire_certificate(w, 1 + g, n)]
        elif pid == "airy" and theorem == "entire":
            certs = [classical.airy_entire_certificate(w, g, n, cfg.params["alpha"], cfg.params["theta_tilde"])]
        else:
            raise UsageError(f"theorem {theorem!r} is not available for problem {pid!r}")
        if not certs:
            raise UsageError(f"order {n} is outside the range of the {theorem} bound")
        head = certs[0]
        rec = record(cfg, None, None, certificates=_cert_records(certs), t0=t0,
                     extra={"n": n, "theorem": theorem, "bound": head.bound, "measured": head.measured,
                            "pass": all(c.passed for c in certs),
                            "reason": "; ".join(sorted({c.reason for c in certs if c.reason}))})
        return rec

    return _pmap(cfg, one, orders)


def _faddeev_only(cfg):
    if cfg.problem != "faddeev":
        raise UsageError("Borel data are provided for the faddeev problem only")


def cmd_borel(cfg: RunConfig) -> dict:
    _faddeev_only(cfg)
    _require(cfg, "w")
    t0 = time.perf_counter()
    xi = cfg.extra.get("xi", 0j)
    w = cfg.w
    closed = faddeev.BwF(w, xi)
    integral = faddeev.borel_integral(w, xi, cfg.params.get("theta_tilde", 0.0), tol=cfg.tol,
                                      eps=cfg.params.get("eps", faddeev.DEFAULT_EPS))
    poles = borel.borel_via_pole_sum(lambda N: faddeev.pole_parts(N // 2), faddeev.kernel_moment_closed(w), xi,
                                     tol=max(cfg.tol, 1e-13))
    delta = max(abs(closed - integral), abs(closed - poles))
    return record(cfg, closed, delta, t0=t0, extra={"integral": cjson(integral), "pole_sum": cjson(poles),
                                                   "cross_check_delta": delta})


def cmd_stokes(cfg: RunConfig):
    _faddeev_only(cfg)
    _require(cfg, "w", "gamma")
    t0 = time.perf_counter()
    w, g = cfg.w, cfg.gamma
    K = int(cfg.extra.get("scan", 32))
    B = faddeev.borel_function(w)
    tg = math.atan2(g.imag, g.real)
    margin = 0.05
    thetas = np.linspace(tg - math.pi / 2 + margin, tg + math.pi / 2 - margin, K)
    near = faddeev.BwF_poles(w, 1, 1)
    directions = sorted({round(math.atan2(p.imag, p.real), 12) for p in near})
    scan = []
    prev = None
    for th, val in borel.laplace_scan(B, g, thetas, tol=cfg.tol):
        crossed = prev is not None and any(
            (prev - d) * (th - d) < 0 or math.isclose(th, d) for d in directions)
        scan.append({"theta": th, "value": cjson(val), "stokes_crossing": bool(crossed)})
        prev = th
    jumps = []
    for d in directions:
        # rotate gamma onto the Stokes ray so that both lateral transforms are admissible
        gd = abs(g) * complex(math.cos(d), math.sin(d))
        sd = borel.stokes_jump(B, d, gd, tol=max(cfg.tol, 1e-12))
        jumps.append(sd.as_record())
    return record(cfg, None, None, t0=t0, extra={"scan": scan, "jumps": jumps})


def _golden_roots() -> dict:
    with resources.files("resurgent").joinpath("data/faddeev_roots.json").open() as fh:
        return {int(k): float(v) for k, v in json.load(fh)["roots"].items()}


def cmd_roots(cfg: RunConfig) -> list:
    orders = cfg.extra.get("orders") or [2, 4, 6, 8, 10]
    out = []
    for o in orders:
        t0 = time.perf_counter()
        if o < 1:
            raise UsageError("root orders must be >= 1")
        r = faddeev.rn_root(o)
        out.append(record(cfg, None, None, t0=t0,
                          extra={"order": o, "r": r, "c_prime": faddeev.b_n(r, o)}))
    return out


def cmd_verify(cfg: RunConfig) -> list:
    """Quick self-check: golden roots, reference values, Borel cross-check, one FE certificate."""
    import mpmath as mp
    checks = []

    def add(name, ok, detail):
        checks.append(record(cfg, None, None, extra={"check": name, "pass": bool(ok), "detail": detail}))

    gold = _golden_roots()
    dev = max(abs(faddeev.rn_root(o) - v) for o, v in gold.items())
    add("roots", dev < 1e-10, {"max_deviation": dev})
    refs = [("gamma(1/2)", classical.gamma_eval(0.5), math.sqrt(math.pi)),
            ("zeta(2)", classical.zeta_eval(2), math.pi ** 2 / 6),
            ("hurwitz(3,1.5)", classical.hurwitz_eval(3, 1.5), float(mp.zeta(3, 1.5))),
            ("2F1(1,1;2;-0.3)", classical.gauss2f1_eval(-0.3), math.log(1.3) / 0.3),
            ("Ai(1)", classical.airy_eval(1.0), float(mp.airyai(1)))]
    for name, val, ref in refs:
        add(name, abs(val - ref) < 1e-6, {"deviation": abs(val - ref)})
    d = abs(faddeev.BwF(1.0, 0.3) - faddeev.borel_integral(1.0, 0.3))
    add("borel_dual", d < 1e-8, {"deviation": d})
    certs = faddeev.verify_FE(1.0, 0.2, 0.0, 2)
    add("faddeev_FE", all(c.passed for c in certs), {"measured": certs[0].measured, "bound": certs[0].bound})
    return checks


COMMANDS = {"eval": cmd_eval, "expand": cmd_expand, "certify": cmd_certify, "borel": cmd_borel,
            "stokes": cmd_stokes, "roots": cmd_roots, "verify": cmd_verify}


# ----------------------------------------------------------------------------
# output

def _csv_rows(cmd: str, out) -> tuple[list, list]:
    recs = out if isinstance(out, list) else [out]
    if cmd == "expand":
        rows = [(t["m"], t["c"]["re"], t["c"]["im"]) for t in recs[0]["extra"]["terms"]]
        return ["m", "re_c", "im_c"], rows
    if cmd == "certify":
        return ["n", "bound", "measured", "pass", "theorem", "reason"], [
            (r["extra"]["n"], r["extra"]["bound"], r["extra"]["measured"], r["extra"]["pass"],
             r["extra"]["theorem"], r["extra"]["reason"]) for r in recs]
    if cmd == "stokes":
        return ["theta", "re", "im", "stokes_crossing"], [
            (s["theta"], s["value"]["re"], s["value"]["im"], s["stokes_crossing"]) for s in recs[0]["extra"]["scan"]]
    if cmd == "roots":
        return ["order", "r", "c_prime"], [(r["extra"]["order"], r["extra"]["r"], r["extra"]["c_prime"]) for r in recs]
    if cmd == "verify":
        return ["check", "pass"], [(r["extra"]["check"], r["extra"]["pass"]) for r in recs]
    return ["re", "im", "error"], [(r["value"]["re"], r["value"]["im"], r["error"]) for r in recs]


def _clean(obj):
    """JSON-safe copy: complex -> {re, im}, numpy scalars -> Python, non-finite floats -> null."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return cjson(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    return obj


def render(cmd: str, out, fmt: str) -> str:
    out = _clean(out)
    if fmt == "json":
        return json.dumps(out, sort_keys=True, indent=2, allow_nan=False) + "\n"
    header, rows = _csv_rows(cmd, out)
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for row in rows:
        wr.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


# ----------------------------------------------------------------------------
# argument handling

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--problem", default="faddeev", help="registered id or path to an INI definition file")
    common.add_argument("--w")
    common.add_argument("--gamma")
    common.add_argument("--q", help="Hurwitz parameter (sets gamma = q - 1)")
    for name in ("alpha", "theta-tilde", "eps", "a", "b", "c"):
        common.add_argument(f"--{name}", type=float)
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output")
    common.add_argument("--cache-dir")
    common.add_argument("--jobs", type=int, default=1)

    ap = _Parser(prog="resurgent", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("eval", parents=[common], help="evaluate g_gamma(w)")
    ex = sub.add_parser("expand", parents=[common], help="terms of the gamma-expansion")
    ex.add_argument("--n", type=int, default=4)
    ex.add_argument("--quadrature", action="store_true", help="compute moments by quadrature")
    ce = sub.add_parser("certify", parents=[common], help="remainder-bound certificates")
    ce.add_argument("--theorem", default="FE", choices=("FE", "global", "low_order", "outer_angle", "entire"))
    ce.add_argument("--n", default="1")
    ce.add_argument("--delta1", type=float)
    bo = sub.add_parser("borel", parents=[common], help="Borel transform B_w(xi)")
    bo.add_argument("--xi", default="0")
    st = sub.add_parser("stokes", parents=[common], help="Laplace scan across Stokes directions")
    st.add_argument("--scan", type=int, default=32)
    ro = sub.add_parser("roots", parents=[common], help="table of r_n roots")
    ro.add_argument("--orders", default="2,4,6,8,10")
    sub.add_parser("verify", parents=[common], help="quick self-check")
    return ap


def config_from_args(ns) -> RunConfig:
    src = ns.problem
    if os.path.sep in src or src.endswith((".ini", ".cfg")) or os.path.exists(src):
        pid, params = registry.load_definition(src)
    else:
        pid, params = src, {}
    given = {"alpha": ns.alpha, "theta_tilde": ns.theta_tilde, "eps": ns.eps, "a": ns.a, "b": ns.b, "c": ns.c}
    params.update({k: v for k, v in given.items() if v is not None})
    params = registry.resolve_params(pid, params)
    w = parse_complex(ns.w) if ns.w is not None else None
    gamma = parse_complex(ns.gamma) if ns.gamma is not None else None
    if ns.q is not None:
        if pid != "hurwitz_zeta":
            raise UsageError("--q applies to the hurwitz_zeta problem only")
        gamma = parse_complex(ns.q) - 1
    extra = {}
    if ns.command == "expand":
        extra = {"n": ns.n, "quadrature": ns.quadrature}
    elif ns.command == "certify":
        extra = {"theorem": ns.theorem, "orders": parse_orders(ns.n)}
        if ns.delta1 is not None:
            extra["delta1"] = ns.delta1
    elif ns.command == "borel":
        extra = {"xi": parse_complex(ns.xi)}
    elif ns.command == "stokes":
        if ns.scan < 2:
            raise UsageError("--scan needs at least 2 points")
        extra = {"scan": ns.scan}
    elif ns.command == "roots":
        extra = {"orders": parse_orders(ns.orders)}
    if ns.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    return RunConfig(ns.command, pid, params, w, gamma, ns.tol, ns.format, ns.output, ns.cache_dir, ns.jobs, extra)


def _fail(kind: str, code: int, exc: BaseException) -> int:
    sys.stderr.write(json.dumps({"schema": ERROR_SCHEMA, "kind": kind, "exit_code": code,
                                 "type": type(exc).__name__, "message": str(exc)}, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    from .transform import DomainViolation
    try:
        ns = build_parser().parse_args(argv)
        cfg = config_from_args(ns)
    except (UsageError, registry.DefinitionError) as exc:
        return _fail("usage", 1, exc)
    try:
        out = COMMANDS[cfg.command](cfg)
    except (UsageError, registry.DefinitionError, OrderOutOfRange) as exc:
        return _fail("usage", 1, exc)
    except (DomainViolation, borel.Inadmissible, borel.SectorImpurity) as exc:
        return _fail("domain", 2, exc)
    except ArithmeticError as exc:
        return _fail("numerical", 3, exc)
    except ValueError as exc:
        return _fail("domain", 2, exc)
    text = render(cfg.command, out, cfg.fmt)
    if cfg.output:
        with open(cfg.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.command == "verify" and not all(r["extra"]["pass"] for r in out):
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
