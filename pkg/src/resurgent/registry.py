"""Problem registry and definition files.

A definition file is an INI file with a single ``[problem]`` section::

    [problem]
    id = riemann_zeta
    alpha = 0.6

Only the parameters the chosen problem understands are accepted; anything
else is an error, so a typo can never silently fall back to a default.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass
from typing import Callable

from . import classical, faddeev
from .transform import TransformProblem


class DefinitionError(ValueError):
    """Malformed or unknown problem definition."""


@dataclass(frozen=True)
class Entry:
    builder: Callable[..., TransformProblem]
    params: dict  # name -> default
    summary: str


REGISTRY: dict[str, Entry] = {
    "faddeev": Entry(lambda theta_tilde, eps: faddeev.problem(theta_tilde, eps),
                     {"theta_tilde": 0.0, "eps": faddeev.DEFAULT_EPS}, "4 Log of Faddeev's quantum dilogarithm"),
    "gamma": Entry(lambda alpha: classical.gamma_problem(alpha), {"alpha": 0.75}, "Euler Gamma"),
    "recip_gamma": Entry(lambda alpha: classical.recip_gamma_problem(alpha), {"alpha": 0.75}, "1/Gamma"),
    "riemann_zeta": Entry(lambda alpha: classical.zeta_problem(alpha), {"alpha": 0.75}, "Riemann zeta"),
    "hurwitz_zeta": Entry(lambda: classical.hurwitz_problem(), {}, "Hurwitz zeta, gamma = q - 1"),
    "gauss_2f1": Entry(lambda a, b, c, alpha: classical.gauss2f1_problem(a, b, c, alpha),
                       {"a": 1.0, "b": 1.0, "c": 2.0, "alpha": 0.5}, "Gauss 2F1 (Mellin-Barnes)"),
    "airy": Entry(lambda alpha, theta_tilde: classical.airy_problem(alpha, theta_tilde),
                  {"alpha": 0.5, "theta_tilde": math.pi / 3}, "Airy Ai"),
}


def problem_ids() -> list[str]:
    return sorted(REGISTRY)


def resolve_params(pid: str, given: dict) -> dict:
    """Defaults overlaid with ``given`` (None values ignored); unknown names rejected."""
    if pid not in REGISTRY:
        raise DefinitionError(f"unknown problem {pid!r}; known: {', '.join(problem_ids())}")
    entry = REGISTRY[pid]
    out = dict(entry.params)
    for k, v in given.items():
        if v is None:
            continue
        if k not in entry.params:
            raise DefinitionError(f"problem {pid!r} has no parameter {k!r}")
        out[k] = float(v)
    return out


def build(pid: str, **params) -> TransformProblem:
    p = resolve_params(pid, params)
    return REGISTRY[pid].builder(**p)


def load_definition(path: str) -> tuple[str, dict]:
    """(problem id, parameters) from an INI definition file."""
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    try:
        with open(path) as fh:
            cp.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise DefinitionError(f"cannot read definition file {path!r}: {exc}") from exc
    if cp.sections() != ["problem"]:
        raise DefinitionError("a definition file needs exactly one [problem] section")
    sec = dict(cp["problem"])
    pid = sec.pop("id", None)
    if pid is None:
        raise DefinitionError("missing 'id' key")
    params = {}
    for k, v in sec.items():
        try:
            params[k] = float(v)
        except ValueError as exc:
            raise DefinitionError(f"parameter {k!r} is not a number: {v!r}") from exc
    resolve_params(pid, params)  # validates names
    return pid, params
