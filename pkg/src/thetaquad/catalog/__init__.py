"""Identity rules: the rule language and the built-in catalog."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .dsl import (
    ConcreteRule,
    IdentityRule,
    InadmissibleAssignment,
    RuleSemanticError,
    RuleSyntaxError,
    Status,
    assignments,
    instantiate,
    parse_rule,
    parse_rules,
    print_rule,
)


def builtin_text() -> str:
    return resources.files("thetaquad").joinpath("data/catalog.rules").read_text(encoding="utf-8")


@lru_cache(maxsize=1)
def _builtin() -> tuple[IdentityRule, ...]:
    return tuple(parse_rules(builtin_text()))


def builtin_catalog() -> list[IdentityRule]:
    """Every built-in rule, in file order."""
    return list(_builtin())


def get_rule(rule_id: str) -> IdentityRule:
    for r in _builtin():
        if r.id == rule_id:
            return r
    raise KeyError(f"no built-in rule {rule_id!r}")


def rules_with_prefix(prefix: str) -> list[IdentityRule]:
    """Rules whose id is ``prefix`` or starts with ``prefix + '.'``."""
    return [r for r in _builtin() if r.id == prefix or r.id.startswith(prefix + ".")]


def export_text(rules=None) -> str:
    """Canonical printed form of a rule list, one rule per line."""
    rules = builtin_catalog() if rules is None else rules
    header = "# thetaquad built-in catalog, canonical form (generated; do not edit)\n"
    return header + "".join(print_rule(r) + "\n" for r in rules)


__all__ = [
    "ConcreteRule",
    "IdentityRule",
    "InadmissibleAssignment",
    "RuleSemanticError",
    "RuleSyntaxError",
    "Status",
    "assignments",
    "builtin_catalog",
    "builtin_text",
    "export_text",
    "get_rule",
    "instantiate",
    "parse_rule",
    "parse_rules",
    "print_rule",
    "rules_with_prefix",
]
