"""Structured results of verification checks."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__
from .exactmath import format_rational

PASS = "pass"
FAIL = "fail"
ERROR = "error"
UNSUPPORTED = "unsupported"

EXIT_CODES = {PASS: 0, FAIL: 1, ERROR: 2, UNSUPPORTED: 3}


class UnsupportedScope(Exception):
    """The requested instance lies outside what the checker implements."""


@dataclass
class Report:
    check: str
    params: dict = field(default_factory=dict)
    lhs: Any = None
    rhs: Any = None
    residual: Any = None
    trace: list = field(default_factory=list)
    verdict: str = PASS
    runtime_ms: int = 0
    plan: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def absorb(self, sub: "Report", key: str | None = None) -> None:
        """Fold a sub-report into this one: worst verdict wins."""
        self.details.setdefault("checks", []).append(sub.to_json(name=key))
        order = [PASS, FAIL, UNSUPPORTED, ERROR]
        if order.index(sub.verdict) > order.index(self.verdict):
            self.verdict = sub.verdict

    def to_json(self, name: str | None = None) -> dict:
        out = {
            "suite": name or self.check,
            "params": self.params,
            "plan": self.plan,
            "lhs": _exact(self.lhs),
            "rhs": _exact(self.rhs),
            "residual": _exact(self.residual),
            "lhs_float": _float(self.lhs),
            "rhs_float": _float(self.rhs),
            "trace": [[m, r] for m, r in self.trace],
            "verdict": self.verdict,
            "runtime_ms": self.runtime_ms,
            "version": __version__,
        }
        if self.details:
            out["details"] = self.details
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def _exact(x):
    if x is None:
        return None
    if isinstance(x, (Fraction, int)):
        return format_rational(x)
    return str(x)


def _float(x):
    if isinstance(x, (Fraction, int, float)):
        return float(x)
    return None


def exact_verdict(lhs, rhs) -> tuple[Fraction, str]:
    residual = lhs - rhs
    return residual, PASS if residual == 0 else FAIL


@contextmanager
def timed(report: Report):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.runtime_ms = int((time.perf_counter() - start) * 1000)
