"""Conjecture scanning.

A scan never claims more than "no counterexample up to n_max".  Any
mismatch found through the series tables is recomputed by enumeration
before it is reported.
"""

from __future__ import annotations

import json
from dataclasses import replace
from pathlib import Path

from ..catalog import IdentityRule, get_rule, instantiate, rules_with_prefix
from .engine import check_concrete
from .report import Method, Status, VerifyReport


class EngineDisagreement(RuntimeError):
    """Series and enumeration disagree: a bug, never a mathematical finding."""


def conjecture_rules(selector: str) -> list[IdentityRule]:
    """An exact conjecture id, or a prefix naming all of its branches."""
    rules = rules_with_prefix(selector)
    if not rules:
        raise KeyError(f"no catalog rule matches {selector!r}")
    not_conj = [r.id for r in rules if not r.is_conjecture]
    if not_conj:
        raise ValueError(f"not conjectures: {', '.join(not_conj)}")
    return rules


def scan_rule(rule: IdentityRule, n_max: int, n_min: int = 1) -> VerifyReport:
    concrete = instantiate(rule, {})
    report = check_concrete(concrete, n_min, n_max, Method.SERIES, rule_id=rule.id)
    if report.status is Status.FAIL:
        confirmed = []
        for c in report.counterexamples:
            again = check_concrete(concrete, c.n, c.n, Method.ENUM, rule_id=rule.id)
            if again.status is not Status.FAIL or again.counterexamples[0] != c:
                raise EngineDisagreement(f"{rule.id} at n={c.n}: series and enumeration disagree")
            confirmed.append(c)
        frontier = confirmed[0].n - 1
        detail = {"frontier": frontier, "counterexamples_confirmed_by": "enum"}
    else:
        detail = {"frontier": n_max}
    detail["claim"] = "verified" if report.status is Status.PASS else report.status.value
    return replace(report, detail=detail)


def scan_conjecture(selector: str, n_max: int) -> list[VerifyReport]:
    """Scan one conjecture branch, or every branch sharing the prefix."""
    return [scan_rule(r, n_max) for r in conjecture_rules(selector)]


def scan_all(n_max: int, rules=None) -> list[VerifyReport]:
    from ..catalog import builtin_catalog

    rules = [r for r in (rules or builtin_catalog()) if r.is_conjecture]
    return [scan_rule(r, n_max) for r in rules]


def append_jsonl(path: str | Path, reports, timings: bool = False) -> None:
    """Append reports to a JSON-lines log; existing lines are never rewritten."""
    with open(path, "a", encoding="utf-8") as fh:
        for r in reports:
            fh.write(json.dumps(r.as_dict(timings), ensure_ascii=False) + "\n")


__all__ = ["EngineDisagreement", "append_jsonl", "conjecture_rules", "get_rule", "scan_all", "scan_conjecture", "scan_rule"]
