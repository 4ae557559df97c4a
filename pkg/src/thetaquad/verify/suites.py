"""Named bundles of checks.

Each bundle returns a :class:`SuiteResult`: a pass/fail verdict, a one-line
summary and the underlying reports.  The command line and the acceptance
tests both run these functions.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from ..catalog import builtin_catalog, instantiate, parse_rule
from ..counting import FormSpec, Kind, SeriesTables, cap_constant, count_enum, count_series
from .closed_forms import CLOSED_FORMS
from .engine import catalog_jobs, enum_sample, run_jobs, verify_rule
from .identities import (
    THETA_IDENTITIES,
    ThetaIdentity,
    check_identity,
    flip_sign,
    lemma5_1_check,
    theta_identity_suite,
    thm2_7_values,
)
from .report import Status, VerifyReport
from .scan import scan_all, scan_rule


@dataclass
class SuiteResult:
    name: str
    passed: bool
    summary: str
    reports: list[VerifyReport] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    elapsed_s: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.summary} ({self.elapsed_s:.1f}s)"


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        res = fn(*args, **kwargs)
        res.elapsed_s = time.perf_counter() - start
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# --- form collections ------------------------------------------------------------

# Forms with previously known formulas for their t-counts.
LISTED_T_FORMS = (
    (1, 3, 3, 3), (1, 2, 2, 3), (1, 3, 6, 6), (1, 3, 4, 4), (1, 1, 2, 6), (1, 3, 12, 12),
    (1, 2, 2, 4), (1, 2, 4, 4), (1, 1, 4, 4), (1, 4, 4, 4), (1, 3, 3, 9), (1, 1, 9, 9),
    (1, 9, 9, 9), (1, 1, 1, 9), (1, 3, 9, 9), (1, 1, 3, 9), (1, 1, 2, 8), (1, 1, 2, 16),
    (1, 2, 3, 6), (1, 3, 4, 12), (1, 1, 3, 4), (1, 1, 5, 5), (1, 5, 5, 5), (1, 3, 3, 12),
    (1, 1, 1, 12), (1, 1, 3, 12), (1, 3, 3, 4), (1, 3, 3, 6), (1, 1, 8, 8), (1, 1, 4, 8),
)


def named_forms() -> list[FormSpec]:
    """Forms occurring in the catalog (parameters at their least admissible
    values), the listed t-forms, and the closed-form and r3 companions, in
    both kinds."""
    from .engine import instances

    coeff_sets = set(LISTED_T_FORMS) | set(CLOSED_FORMS) | {(1, 4, 4), (1, 1, 8), (1, 1, 1)}
    for rule in builtin_catalog():
        inst = instances(rule, 5)
        if not inst:
            continue
        for _, t in instantiate(rule, dict(inst[0])).terms():
            coeff_sets.add(tuple(sorted(t.spec.coeffs)))
    return [FormSpec(c, k) for c in sorted(coeff_sets) for k in (Kind.SQUARE, Kind.TRIANGULAR)]


def small_compositions(max_part: int = 8, max_len: int = 4) -> list[tuple[int, ...]]:
    """Coefficient multisets with parts <= max_part and length <= max_len.

    Counts do not depend on the order of coefficients, so one representative
    per multiset covers every composition.
    """
    out = []
    for k in range(1, max_len + 1):
        out.extend(itertools.combinations_with_replacement(range(1, max_part + 1), k))
    return out


def partitions(total: int) -> list[tuple[int, ...]]:
    """Partitions of total as non-decreasing tuples."""

    def rec(rest, smallest):
        if rest == 0:
            yield ()
            return
        for p in range(smallest, rest + 1):
            for tail in rec(rest - p, p):
                yield (p,) + tail

    return list(rec(total, 1))


# --- bundles ------------------------------------------------------------------------


@_timed
def oracle_equivalence(n_max: int = 200) -> SuiteResult:
    """count_series against count_enum, value by value."""
    specs = named_forms() + [FormSpec(c, k) for c in small_compositions() for k in (Kind.SQUARE, Kind.TRIANGULAR)]
    specs = list(dict.fromkeys(s.canonical() for s in specs))
    failures = []
    for s in specs:
        tab = count_series(s, n_max)
        for n in range(n_max + 1):
            e = count_enum(s, n)
            if e != tab[n]:
                failures.append(f"{s} n={n}: series {int(tab[n])} != enum {e}")
                break
    return SuiteResult(
        "oracle-equivalence", not failures, f"{len(specs)} forms, n <= {n_max}", failures=failures
    )


@_timed
def ach_bch(n_max: int = 100) -> SuiteResult:
    """t (2 + C) = 2 N(8n + sum a) for sum a <= 7 and the sum a = 8 variant."""
    tables = SeriesTables()
    failures = []
    ns = np.arange(n_max + 1)
    checked = 0
    for total in range(1, 9):
        for coeffs in partitions(total):
            c = cap_constant(coeffs).value
            t = tables.values(FormSpec(coeffs, Kind.TRIANGULAR), ns)
            sq = FormSpec(coeffs, Kind.SQUARE)
            if total <= 7:
                rhs = 2 * tables.values(sq, 8 * ns + total)
            else:
                rhs = 2 * (tables.values(sq, 8 * ns + 8) - tables.values(sq, 2 * ns + 2))
            bad = np.flatnonzero(t * (2 + c) != rhs)
            checked += 1
            if bad.size:
                failures.append(f"{coeffs} n={int(bad[0])}")
    return SuiteResult("ach-bch", not failures, f"{checked} coefficient multisets, n <= {n_max}", failures=failures)


@_timed
def theta_identities(trunc: int = 1000) -> SuiteResult:
    rep = theta_identity_suite(trunc)
    return SuiteResult(
        "theta-identities", rep.status is Status.PASS,
        f"{len(THETA_IDENTITIES)} identities to q^{trunc}", [rep], rep.detail["failed"],
    )


def theorem_rules():
    return [r for r in builtin_catalog() if not r.is_conjecture]


@_timed
def theorems(bound: int = 5, n_max: int = 300, enum_fraction: float = 0.1, seed: int = 0, workers=None) -> SuiteResult:
    """Every proved catalog rule, parameters in 1..bound, by series; a seeded
    sample re-run by enumeration."""
    jobs = catalog_jobs(theorem_rules(), bound, 0, n_max)
    reports = run_jobs(jobs, workers)
    reports += run_jobs(enum_sample(jobs, enum_fraction, seed), workers)
    failed = [r for r in reports if r.status is Status.FAIL]
    skipped = sum(r.status is Status.SKIPPED for r in reports)
    summary = f"{len(jobs)} instances + {len(reports) - len(jobs)} enum re-checks, {len(failed)} failing, {skipped} with no admissible n"
    return SuiteResult("theorems", not failed, summary, reports, [r.summary() for r in failed])


@_timed
def closed_forms(n_max: int = 2000) -> SuiteResult:
    failures = []
    for coeffs, fn in CLOSED_FORMS.items():
        spec = FormSpec(coeffs, Kind.TRIANGULAR)
        tab = count_series(spec, n_max)
        for n in range(1, n_max + 1):
            v = fn(n).value
            if v != tab[n] or v != count_enum(spec, n):
                failures.append(f"{spec} n={n}: closed {v}, series {int(tab[n])}")
                break
    return SuiteResult("closed-forms", not failures, f"3 closed forms, n <= {n_max}", failures=failures)


@_timed
def thm2_7(n_max: int = 1000) -> SuiteResult:
    failures = [f"n={v.n}: {v}" for v in map(thm2_7_values, range(n_max + 1)) if not v.holds]
    return SuiteResult("square-correction", not failures, f"n <= {n_max}, three equalities each", failures=failures)


LEMMA_PAIRS = ((1, 3), (3, 1), (1, 7), (3, 5), (5, 3), (7, 1))


@_timed
def lemma5_1(trunc: int = 300) -> SuiteResult:
    failures = [f"a={a}, b={b}" for a, b in LEMMA_PAIRS if not lemma5_1_check(a, b, trunc)]
    return SuiteResult("dissection", not failures, f"{len(LEMMA_PAIRS)} pairs to q^{trunc}", failures=failures)


@_timed
def conjectures(n_max: int = 1000) -> SuiteResult:
    reports = scan_all(n_max)
    failed = [r for r in reports if r.status is Status.FAIL]
    return SuiteResult(
        "conjectures", not failed, f"{len(reports)} branches, n <= {n_max}, {len(failed)} with counterexamples",
        reports, [r.summary() for r in failed],
    )


PERTURBED_THM2_1 = "rule thm2.1.perturbed: forall a b | odd(a), odd(b) :: t(a,2a,2a,2b; n) == 1/2 N(a,a,4a,2b; 8n+5a+2b+1)"
CORRUPTED_CONJ5_19 = "conjecture conj5.19.corrupted: forall | n ≡ 0,1,5 (mod 7), n >= 1 :: t(1,2,2,7; n) == 2 N(1,2,2,7; 2n+5)"


@_timed
def falsification_controls(limit: int = 20) -> SuiteResult:
    """Deliberately broken statements must fail, with a witness n <= limit."""
    reports = [
        check_identity(ThetaIdentity.of("eq1.5.perturbed", "psi1^2", "phi1 psi2 + q"), 100),
        verify_rule(parse_rule(PERTURBED_THM2_1), {"a": 1, "b": 1}, (0, 100)),
        scan_rule(parse_rule(CORRUPTED_CONJ5_19), 100),
        theta_identity_suite(100, THETA_IDENTITIES[:-1] + (flip_sign(THETA_IDENTITIES[-1]),)),
    ]
    failures = []
    for r in reports:
        if r.status is not Status.FAIL:
            failures.append(f"{r.rule_id} did not fail")
        elif r.counterexamples[0].n > limit:
            failures.append(f"{r.rule_id} first fails at n={r.counterexamples[0].n} > {limit}")
    if reports[0].counterexamples and reports[0].counterexamples[0].n != 1:
        failures.append("perturbed theta identity should first differ at q^1")
    flipped = reports[3].detail["failed"]
    if flipped != [THETA_IDENTITIES[-1].id + ".flipped"]:
        failures.append(f"theta control named {flipped}")
    return SuiteResult("falsification", not failures, f"{len(reports)} controls", reports, failures)


BUNDLES = {
    "oracle-equivalence": oracle_equivalence,
    "ach-bch": ach_bch,
    "theta-identities": theta_identities,
    "theorems": theorems,
    "closed-forms": closed_forms,
    "square-correction": thm2_7,
    "dissection": lemma5_1,
    "conjectures": conjectures,
    "falsification": falsification_controls,
}


def run_bundle(name: str, workers=None) -> list[SuiteResult]:
    if name == "all":
        return [fn(workers=workers) if fn is theorems else fn() for fn in BUNDLES.values()]
    fn = BUNDLES[name]
    return [fn(workers=workers) if fn is theorems else fn()]
