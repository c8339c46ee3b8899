"""Residual norms of defect operators and the check reports built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .linalg.space import Op, Vec, label_str

ZERO = Fraction(0)

PASS = "pass"
TAIL = "tail-dominated"
FAIL = "fail"


def tol_norm(p: int, tol: int) -> Fraction:
    return Fraction(1, p ** tol)


@dataclass
class Residual:
    """Norm of a map that should vanish.

    ``value`` is the operator norm over known-nonzero coefficients;
    ``exact_value`` restricts to columns without a declared tail and
    ``tailed_value`` to columns with one.  ``floor`` bounds what approximate
    zeros could hide.  ``per_column`` keeps the nonzero column ratios.
    """

    name: str
    value: Fraction
    exact_value: Fraction
    tailed_value: Fraction
    tail_bound: Fraction
    floor: Fraction
    status: str
    worst_label: Any = None
    witness: Vec | None = None
    per_column: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "value": str(self.value),
            "exact_value": str(self.exact_value),
            "tailed_value": str(self.tailed_value),
            "tail_bound": str(self.tail_bound),
            "precision_floor": str(self.floor),
            "status": self.status,
        }
        if self.worst_label is not None:
            d["worst_label"] = label_str(self.worst_label)
        if self.status == FAIL and self.witness is not None:
            d["witness"] = self.witness.to_dict()
        return d


def measure(D: Op, tol: int, name: str = "residual") -> Residual:
    """Classify the defect ``D`` against tolerance ``p^-tol`` and its column tails."""
    p = D.domain.prime
    t = tol_norm(p, tol)
    value = exact = tailed = floor = ZERO
    worst = None
    witness = None
    per_col = {}
    status = PASS
    for lab in D.domain.labels:
        col = D.columns.get(lab)
        tail = D.col_tail(lab)
        if col is None:
            continue
        w = D.domain.weight(lab)
        r = col.norm() / w
        f = col.precision_floor() / w
        if f > floor:
            floor = f
        if not r:
            continue
        per_col[lab] = r
        if r > value:
            value, worst, witness = r, lab, col
        if tail:
            tailed = max(tailed, r)
        else:
            exact = max(exact, r)
        if r > t:
            if r <= t + tail:
                if status == PASS:
                    status = TAIL
            else:
                status = FAIL
    if floor > t and status == PASS:
        status = FAIL
    return Residual(name, value, exact, tailed, D.tail_bound, floor, status, worst, witness, per_col)


def combine_status(statuses) -> str:
    statuses = list(statuses)
    if FAIL in statuses:
        return FAIL
    if TAIL in statuses:
        return TAIL
    return PASS


@dataclass
class CheckReport:
    """Outcome of one verification: residuals by name plus free-form details."""

    check: str
    anchor: str
    residuals: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def add(self, r: Residual) -> Residual:
        self.residuals[r.name] = r
        return r

    def fail(self, message: str, **witness):
        self.failures.append({"message": message, **witness})

    @property
    def status(self) -> str:
        s = combine_status(r.status for r in self.residuals.values())
        return FAIL if self.failures else s

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "anchor": self.anchor,
            "status": self.status,
            "residuals": {k: r.to_dict() for k, r in self.residuals.items()},
            "details": _jsonable(self.details),
            "failures": _jsonable(self.failures),
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "to_dict"):
        return x.to_dict()
    if isinstance(x, (str, int, bool, float)) or x is None:
        return x
    return str(x)
