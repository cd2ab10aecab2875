"""Formal Dulac-series solutions of analytic ODEs and their Gevrey order.

Problems are plain dicts in the same JSON layout the ``dulac`` command line
reads. Each command helper returns the parsed JSON report and raises
:class:`DulacError` on failure.
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Sequence

from ._dulac import DulacError, apply_operator, gamma_abs, lemma6_constant, run, solve_coefficient

__all__ = [
    "DulacError",
    "CommandError",
    "apply_operator",
    "analyze",
    "check_norms",
    "gamma_abs",
    "iota",
    "lemma6_constant",
    "reduce",
    "run",
    "solve",
    "solve_coefficient",
    "suggest_generators",
    "verify",
]


class CommandError(DulacError):
    """A command exited nonzero. ``kind`` and ``exit_code`` say why."""

    def __init__(self, kind: str, message: str, exit_code: int):
        super().__init__(kind, message)
        self.kind = kind
        self.message = message
        self.exit_code = exit_code

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def _options(**opts: Any) -> list[str]:
    args: list[str] = []
    for key, value in opts.items():
        if value is not None:
            args += ["--" + key.replace("_", "-"), str(value)]
    return args


def _command(name: str, problem: Mapping[str, Any] | None, **opts: Any) -> dict:
    args = [name]
    text = ""
    if problem is not None:
        args.append("-")
        text = json.dumps(problem)
    code, out, err = run(args + _options(**opts), text)
    if code != 0:
        # "error: <command>: <Kind>: <message>"
        parts = err.strip().split(": ", 3)
        kind = parts[2] if len(parts) == 4 else "Error"
        message = parts[3] if len(parts) == 4 else err.strip()
        raise CommandError(kind, message, code)
    return json.loads(out)


def solve(problem: Mapping[str, Any], cutoff: float | str | None = None, precision: int | None = None) -> dict:
    return _command("solve", problem, cutoff=cutoff, precision=precision)


def analyze(problem: Mapping[str, Any], precision: int | None = None) -> dict:
    return _command("analyze", problem, precision=precision)


def verify(problem: Mapping[str, Any], cutoff: float | str | None = None, R: float | str | None = None,
           precision: int | None = None) -> dict:
    return _command("verify", problem, cutoff=cutoff, R=R, precision=precision)


def reduce(problem: Mapping[str, Any], m: int | None = None, cutoff: float | str | None = None) -> dict:
    return _command("reduce", problem, m=m, cutoff=cutoff)


def iota(problem: Mapping[str, Any], m: int | None = None, cutoff: float | str | None = None) -> dict:
    return _command("iota", problem, m=m, cutoff=cutoff)


def suggest_generators(problem: Mapping[str, Any], cutoff: float | str | None = None) -> dict:
    return _command("suggest-generators", problem, cutoff=cutoff)


def check_norms(problem: Mapping[str, Any] | None = None, trials: int = 50, seed: int | None = None) -> dict:
    return _command("check-norms", problem, trials=trials, seed=seed)
