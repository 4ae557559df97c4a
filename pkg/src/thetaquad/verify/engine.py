"""Check catalog rules exactly over a range of n.

Every side of a rule is a rational combination of counts.  Multiplying all
sides by the lcm of the coefficient denominators turns each comparison into
an integer equality, so nothing is ever compared in floating point.
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..catalog import IdentityRule, assignments, instantiate
from ..catalog.dsl import ConcreteRule
from ..counting import FormSpec, SeriesTables, count_enum
from ..qseries import TruncationError
from .report import Counterexample, Method, Status, VerifyReport

_TABLES = SeriesTables()


def shared_tables() -> SeriesTables:
    """The per-process table cache used when no explicit cache is passed."""
    return _TABLES


@lru_cache(maxsize=None)
def _enum_cached(spec: FormSpec, n: int) -> int:
    return count_enum(spec, n)


def _term_values(concrete: ConcreteRule, ns: np.ndarray, method: Method, tables: SeriesTables) -> list[np.ndarray]:
    terms = list(concrete.terms())
    if method is Method.SERIES:
        need: dict[FormSpec, int] = {}
        for _, t in terms:
            key = t.spec.canonical()
            need[key] = max(need.get(key, 0), t.arg(int(ns[-1])), 0)
        for spec, top in need.items():
            if tables.table(spec, top).size <= top:
                raise TruncationError(f"table for {spec} stops before {top}")
        return [tables.values(t.spec, t.arg(ns)) for _, t in terms]
    out = []
    for _, t in terms:
        key = t.spec.canonical()
        out.append(np.array([_enum_cached(key, int(a)) for a in t.arg(ns)], dtype=np.int64))
    return out


def _scaled_sides(concrete: ConcreteRule, values: list[np.ndarray], lcm: int) -> list[np.ndarray]:
    sides, i = [], 0
    for side in concrete.sides:
        acc = None
        for c, _ in side:
            k = int(c * lcm)
            v = values[i]
            i += 1
            big = v.size and abs(k) * int(np.abs(v).max()) * len(side) > 2**62
            term = v.astype(object) * k if big else v * k
            acc = term if acc is None else acc + term
        sides.append(acc)
    return sides


def check_concrete(
    concrete: ConcreteRule,
    n_lo: int,
    n_hi: int,
    method: Method = Method.SERIES,
    tables: SeriesTables | None = None,
    rule_id: str | None = None,
) -> VerifyReport:
    start = time.perf_counter()
    tables = tables if tables is not None else _TABLES
    rid = rule_id or concrete.rule_id
    params = dict(concrete.params)
    if n_lo < 0 or n_hi < n_lo:
        raise ValueError(f"bad range {n_lo}..{n_hi}")
    ns = np.arange(n_lo, n_hi + 1, dtype=np.int64)
    ns = ns[np.asarray(concrete.admits(ns), dtype=bool)]

    def done(status, cex=(), reason=""):
        return VerifyReport(
            rid, params, n_lo, n_hi, method, status, list(cex),
            (time.perf_counter() - start) * 1000, reason, int(ns.size),
        )

    if ns.size == 0:
        return done(Status.SKIPPED, reason="no n in range satisfies the rule's conditions")
    lcm = concrete.denominator()
    sides = _scaled_sides(concrete, _term_values(concrete, ns, method, tables), lcm)
    bad = np.zeros(ns.size, dtype=bool)
    for s in sides[1:]:
        bad |= np.asarray(s != sides[0], dtype=bool)
    cex = []
    for i in np.flatnonzero(bad):
        first = sides[0][i]
        other = next(s[i] for s in sides[1:] if s[i] != first)
        cex.append(Counterexample(int(ns[i]), Fraction(int(first), lcm), Fraction(int(other), lcm)))
    return done(Status.FAIL if cex else Status.PASS, cex)


def verify_rule(
    rule: IdentityRule,
    assignment: dict[str, int] | None = None,
    n_range: tuple[int, int] = (0, 100),
    method: Method = Method.SERIES,
    tables: SeriesTables | None = None,
) -> VerifyReport:
    """Check ``rule`` for every admissible n in the inclusive range."""
    concrete = instantiate(rule, assignment or {})
    return check_concrete(concrete, n_range[0], n_range[1], method, tables, rule.id)


# --- batches ---------------------------------------------------------------------


@dataclass(frozen=True)
class Job:
    rule: IdentityRule
    assignment: tuple[tuple[str, int], ...]
    n_lo: int
    n_hi: int
    method: Method = Method.SERIES


def _run_job(job: Job) -> VerifyReport:
    return verify_rule(job.rule, dict(job.assignment), (job.n_lo, job.n_hi), job.method)


def default_workers() -> int:
    env = os.environ.get("THETAQUAD_THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError("THETAQUAD_THREADS must be >= 1")
        return n
    return os.cpu_count() or 1


def run_jobs(jobs: list[Job], workers: int | None = None) -> list[VerifyReport]:
    """Run jobs, returning reports in job order whatever the worker count."""
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(jobs) < 2:
        return [_run_job(j) for j in jobs]
    chunk = max(1, len(jobs) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, jobs, chunksize=chunk))


def instances(rule: IdentityRule, bound: int) -> list[tuple[tuple[str, int], ...]]:
    """Admissible parameter assignments with all parameters in 1..bound."""
    if not rule.params:
        return [()]
    return [c.params for c in assignments(rule, bound)]


def catalog_jobs(rules, bound: int, n_lo: int, n_hi: int, method: Method = Method.SERIES) -> list[Job]:
    return [Job(r, a, n_lo, n_hi, method) for r in rules for a in instances(r, bound)]


def enum_sample(jobs: list[Job], fraction: float = 0.1, seed: int = 0) -> list[Job]:
    """A seeded random sample of jobs, switched to the enumeration method."""
    k = max(1, math.ceil(fraction * len(jobs))) if jobs else 0
    picked = sorted(random.Random(seed).sample(range(len(jobs)), k))
    return [Job(jobs[i].rule, jobs[i].assignment, jobs[i].n_lo, jobs[i].n_hi, Method.ENUM) for i in picked]
