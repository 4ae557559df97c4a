"""Representation counts N(a1..ak; n) and t(a1..ak; n).

Two independent routes are provided.  :func:`count_series` reads counts
off the theta-function products phi(q^a1)...phi(q^ak) and
2^k psi(q^a1)...psi(q^ak).  :func:`count_enum` enumerates lattice points
directly.  Neither calls the other.

Triangular counts use x(x-1)/2.  The map x -> 1-x sends it to x(x+1)/2,
so the two conventions give identical counts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import isqrt

import numpy as np

from . import qseries as qs


class Kind(enum.Enum):
    SQUARE = "N"
    TRIANGULAR = "t"


@dataclass(frozen=True)
class FormSpec:
    coeffs: tuple[int, ...]
    kind: Kind

    def __post_init__(self):
        coeffs = tuple(int(a) for a in self.coeffs)
        if not coeffs or any(a < 1 for a in coeffs):
            raise ValueError(f"form coefficients must be positive integers: {self.coeffs}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def parse(cls, text: str) -> "FormSpec":
        """Read ``t(1,1,6,24)`` or ``N(1,4,4)``."""
        s = text.replace(" ", "")
        if len(s) < 4 or s[0] not in "tN" or s[1] != "(" or s[-1] != ")":
            raise ValueError(f"expected t(a,b,...) or N(a,b,...), got {text!r}")
        kind = Kind.TRIANGULAR if s[0] == "t" else Kind.SQUARE
        return cls(tuple(int(x) for x in s[2:-1].split(",")), kind)

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def canonical(self) -> "FormSpec":
        return FormSpec(tuple(sorted(self.coeffs)), self.kind)

    def __str__(self) -> str:
        return f"{self.kind.value}({','.join(map(str, self.coeffs))})"


def square(*coeffs: int) -> FormSpec:
    return FormSpec(coeffs, Kind.SQUARE)


def triangular(*coeffs: int) -> FormSpec:
    return FormSpec(coeffs, Kind.TRIANGULAR)


@dataclass(frozen=True)
class CapConstant:
    i1: int
    i2: int
    i3: int
    value: int

    @property
    def factor(self) -> Fraction:
        """2 / (2 + C), the ratio t(n) / N(8n + sum a_i) in the base relations."""
        return Fraction(2, 2 + self.value)


def cap_constant(coeffs) -> CapConstant:
    coeffs = list(coeffs)
    i1, i2, i3 = (coeffs.count(j) for j in (1, 2, 3))
    value = i1 * (i1 - 1) * (i1 - 2) * (i1 - 3) // 24 + i1 * (i1 - 1) * i2 // 2 + i1 * i3
    return CapConstant(i1, i2, i3, value)


# --- enumeration ----------------------------------------------------------


def _values_with_weights(kind: Kind, a: int, n: int):
    """Distinct values a*f(x) <= n of one coordinate, with how many x give each."""
    if kind is Kind.SQUARE:
        m = np.arange(0, isqrt(n // a) + 1, dtype=np.int64)
        vals = a * m * m
        weights = np.full(m.size, 2, dtype=np.int64)
        weights[0] = 1
    else:
        # x(x-1)/2 takes each value m(m+1)/2 at exactly two integers x.
        m = np.arange(0, (isqrt(8 * (n // a) + 1) - 1) // 2 + 1, dtype=np.int64)
        vals = a * m * (m + 1) // 2
        weights = np.full(m.size, 2, dtype=np.int64)
    return vals, weights


def _isqrt_vec(r: np.ndarray) -> np.ndarray:
    root = np.sqrt(r.astype(np.float64)).astype(np.int64)
    root = np.where((root + 1) * (root + 1) <= r, root + 1, root)
    return np.where(root * root > r, root - 1, root)


def _last_coordinate_weight(kind: Kind, a: int, rest: np.ndarray) -> np.ndarray:
    """Number of x with a*f(x) == rest, elementwise."""
    ok = (rest >= 0) & (rest % a == 0)
    r = np.where(ok, rest // a, 0)
    if kind is Kind.SQUARE:
        root = _isqrt_vec(r)
        return np.where(ok & (root * root == r), np.where(r == 0, 1, 2), 0)
    d = 8 * r + 1
    root = _isqrt_vec(d)
    return np.where(ok & (root * root == d), 2, 0)


def _grid(kind: Kind, coeffs, n: int):
    """Partial sums <= n over all points of the given coordinates, with multiplicities."""
    partial = np.zeros(1, dtype=np.int64)
    weight = np.ones(1, dtype=np.int64)
    for a in coeffs:
        vals, w = _values_with_weights(kind, a, n)
        partial = (partial[:, None] + vals[None, :]).ravel()
        weight = (weight[:, None] * w[None, :]).ravel()
        keep = partial <= n
        partial, weight = partial[keep], weight[keep]
    return partial, weight


def count_enum(spec: FormSpec, n: int) -> int:
    """Count solutions by direct enumeration of lattice points.

    The coordinates are split into two groups.  Points of one group are
    enumerated and tallied by value; points of the other group are
    enumerated and matched against the tally at n minus their value.  With
    fewer than three coordinates the last one is solved exactly instead.
    Negative n gives 0.
    """
    if n < 0:
        return 0
    order = sorted(spec.coeffs, reverse=True)
    if len(order) < 3:
        *outer, last = order
        partial, weight = _grid(spec.kind, outer, n)
        tail = _last_coordinate_weight(spec.kind, last, n - partial)
        return int((weight * tail).sum())
    # Pair large with small coefficients so both halves have similar size.
    left, right = order[0::2], order[1::2]
    pl, wl = _grid(spec.kind, left, n)
    pr, wr = _grid(spec.kind, right, n)
    tally = np.bincount(pr, weights=wr, minlength=n + 1).astype(np.int64)
    return int((wl * tally[n - pl]).sum())


def count_enum_naive(spec: FormSpec, n: int) -> int:
    """Plain nested loops over every integer coordinate.  Slow; test oracle only."""
    if n < 0:
        return 0

    def f(x):
        return x * x if spec.kind is Kind.SQUARE else x * (x - 1) // 2

    def rec(i, rest):
        if i == spec.k:
            return 1 if rest == 0 else 0
        a = spec.coeffs[i]
        bound = isqrt(rest // a) + 1 if spec.kind is Kind.SQUARE else isqrt(8 * rest // a + 1) + 1
        return sum(rec(i + 1, rest - a * f(x)) for x in range(-bound, bound + 2) if a * f(x) <= rest)

    return rec(0, n)


# --- generating functions ----------------------------------------------------


def generating_series(spec: FormSpec, trunc: int) -> qs.QSeries:
    if spec.kind is Kind.SQUARE:
        return qs.product((qs.phi_series(a, trunc) for a in spec.coeffs), trunc)
    prodpsi = qs.product((qs.psi_series(a, trunc) for a in spec.coeffs), trunc)
    return qs.scale(prodpsi, 2**spec.k)


@lru_cache(maxsize=4096)
def _series_table(spec: FormSpec, trunc: int) -> np.ndarray:
    return generating_series(spec, trunc).coeffs


def count_series(spec: FormSpec, n_max: int) -> np.ndarray:
    """Counts for n = 0..n_max read off the generating function (read-only array)."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return _series_table(spec.canonical(), n_max)


class SeriesTables:
    """Bulk count tables keyed by canonical form, grown on demand.

    One instance is meant to be owned by a single worker; tables are never
    shrunk, so a lookup that fits in an existing table reuses it.
    """

    def __init__(self):
        self._tables: dict[FormSpec, np.ndarray] = {}

    def table(self, spec: FormSpec, n_max: int) -> np.ndarray:
        key = spec.canonical()
        tab = self._tables.get(key)
        if tab is None or tab.size <= n_max:
            size = n_max if tab is None else max(n_max, 2 * (tab.size - 1))
            tab = generating_series(key, size).coeffs
            self._tables[key] = tab
        return tab

    def values(self, spec: FormSpec, args: np.ndarray) -> np.ndarray:
        """Counts at each argument; negative arguments count 0."""
        args = np.asarray(args, dtype=np.int64)
        if args.size == 0:
            return np.zeros(0, dtype=np.int64)
        tab = self.table(spec, max(int(args.max()), 0))
        out = np.zeros(args.size, dtype=np.int64)
        ok = args >= 0
        out[ok] = tab[args[ok]]
        return out

    def __len__(self) -> int:
        return len(self._tables)


# --- base relations -------------------------------------------------------------


def ach_relation(coeffs, n: int) -> bool:
    """t(a; n) (2 + C) == 2 N(a; 8n + sum a), valid when sum a <= 7."""
    coeffs = tuple(coeffs)
    if sum(coeffs) > 7:
        raise ValueError(f"relation needs a1+...+ak <= 7, got {sum(coeffs)}")
    c = cap_constant(coeffs).value
    t = count_enum(FormSpec(coeffs, Kind.TRIANGULAR), n)
    return t * (2 + c) == 2 * count_enum(FormSpec(coeffs, Kind.SQUARE), 8 * n + sum(coeffs))


def bch_relation(coeffs, n: int) -> bool:
    """t(a; n) (2 + C) == 2 (N(a; 8n + 8) - N(a; 2n + 2)), valid when sum a == 8."""
    coeffs = tuple(coeffs)
    if sum(coeffs) != 8:
        raise ValueError(f"relation needs a1+...+ak == 8, got {sum(coeffs)}")
    c = cap_constant(coeffs).value
    sq = FormSpec(coeffs, Kind.SQUARE)
    t = count_enum(FormSpec(coeffs, Kind.TRIANGULAR), n)
    return t * (2 + c) == 2 * (count_enum(sq, 8 * n + 8) - count_enum(sq, 2 * n + 2))
