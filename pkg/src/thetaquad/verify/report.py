"""Verification reports and their JSON / CSV serializations."""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction


class Method(enum.Enum):
    SERIES = "series"
    ENUM = "enum"


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


def _num(v):
    v = Fraction(v)
    return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class Counterexample:
    n: int
    lhs: Fraction
    rhs: Fraction

    def as_dict(self) -> dict:
        return {"n": self.n, "lhs": _num(self.lhs), "rhs": _num(self.rhs)}


@dataclass
class VerifyReport:
    rule_id: str
    params: dict[str, int]
    n_lo: int
    n_hi: int
    method: Method
    status: Status
    counterexamples: list[Counterexample] = field(default_factory=list)
    elapsed_ms: float | None = None
    reason: str = ""
    checked: int = 0
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.status is Status.FAIL) != bool(self.counterexamples):
            raise ValueError("a report fails exactly when it has counterexamples")
        if self.status is Status.SKIPPED and not self.reason:
            raise ValueError("a skipped report needs a reason")

    @property
    def ok(self) -> bool:
        return self.status is not Status.FAIL

    def as_dict(self, timings: bool = True) -> dict:
        out = {
            "rule_id": self.rule_id,
            "params": dict(sorted(self.params.items())),
            "n_lo": self.n_lo,
            "n_hi": self.n_hi,
            "method": self.method.value,
            "status": self.status.value,
            "counterexamples": [c.as_dict() for c in self.counterexamples],
            "elapsed_ms": round(self.elapsed_ms, 3) if timings and self.elapsed_ms is not None else None,
            "checked": self.checked,
        }
        if self.reason:
            out["reason"] = self.reason
        if self.detail:
            out["detail"] = self.detail
        return out

    def summary(self) -> str:
        params = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        head = f"{self.rule_id}[{params}] n={self.n_lo}..{self.n_hi} {self.method.value}: {self.status.value.upper()}"
        if self.status is Status.FAIL:
            c = self.counterexamples[0]
            head += f" ({len(self.counterexamples)} counterexamples, first n={c.n}: {_num(c.lhs)} != {_num(c.rhs)})"
        elif self.status is Status.SKIPPED:
            head += f" ({self.reason})"
        else:
            head += f" ({self.checked} values)"
        return head


def to_json(reports, timings: bool = False) -> str:
    """Deterministic JSON: fixed key order, no timings unless asked for."""
    return json.dumps([r.as_dict(timings) for r in reports], indent=2, ensure_ascii=False) + "\n"


CSV_FIELDS = ["rule_id", "params", "n_lo", "n_hi", "method", "status", "checked", "counterexamples", "first_counterexample", "elapsed_ms"]


def to_csv(reports, timings: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        first = r.counterexamples[0].as_dict() if r.counterexamples else ""
        w.writerow([
            r.rule_id,
            ";".join(f"{k}={v}" for k, v in sorted(r.params.items())),
            r.n_lo,
            r.n_hi,
            r.method.value,
            r.status.value,
            r.checked,
            len(r.counterexamples),
            json.dumps(first) if first else "",
            f"{r.elapsed_ms:.3f}" if timings and r.elapsed_ms is not None else "",
        ])
    return buf.getvalue()
