"""Exact truncated power series in q with integer coefficients.

A :class:`QSeries` is known exactly for every exponent up to ``trunc``.
Arithmetic never invents coefficients past the known range: binary
operations keep the smaller truncation, a shift by ``q^k`` moves the known
range up by ``k``, and dissection divides the known range.

Coefficients are stored as numpy int64. Any result coefficient that does
not fit in a signed 64-bit integer raises :class:`SeriesOverflowError`
instead of wrapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

INT64_MAX = np.iinfo(np.int64).max
INT64_MIN = np.iinfo(np.int64).min


class SeriesOverflowError(OverflowError):
    def __init__(self, index: int, op: str):
        super().__init__(f"int64 overflow in {op} at coefficient of q^{index}")
        self.index = index
        self.op = op


class TruncationError(ValueError):
    pass


def _checked(values, op: str) -> np.ndarray:
    """Convert exact (Python int) coefficients to int64, failing on overflow."""
    arr = np.asarray(values, dtype=object)
    for i, v in enumerate(arr):
        if v > INT64_MAX or v < INT64_MIN:
            raise SeriesOverflowError(i, op)
    return arr.astype(np.int64)


def _max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return max(abs(int(arr.max())), abs(int(arr.min())))


class QSeries:
    """Immutable truncated series ``sum c[i] q^i`` for ``0 <= i <= trunc``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs, trunc: int | None = None):
        c = np.array(coeffs, dtype=object if _needs_check(coeffs) else np.int64)
        if c.dtype == object:
            c = _checked(c, "construct")
        if c.ndim != 1 or c.size == 0:
            raise ValueError("a series needs at least the constant coefficient")
        if trunc is not None:
            if trunc < 0:
                raise ValueError("trunc must be non-negative")
            if trunc + 1 > c.size:
                c = np.concatenate([c, np.zeros(trunc + 1 - c.size, dtype=np.int64)])
            else:
                c = c[: trunc + 1].copy()
        c.flags.writeable = False
        self._c = c

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "QSeries":
        obj = cls.__new__(cls)
        arr.flags.writeable = False
        obj._c = arr
        return obj

    @property
    def trunc(self) -> int:
        return self._c.size - 1

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, i):
        if isinstance(i, slice):
            return self._c[i]
        if i < 0 or i > self.trunc:
            raise TruncationError(f"q^{i} outside the known range 0..{self.trunc}")
        return int(self._c[i])

    def tolist(self) -> list[int]:
        return [int(v) for v in self._c]

    def __repr__(self) -> str:
        head = ", ".join(str(v) for v in self._c[:12])
        more = ", ..." if self._c.size > 12 else ""
        return f"QSeries([{head}{more}], trunc={self.trunc})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.trunc == other.trunc and bool(np.array_equal(self._c, other._c))

    def __hash__(self):
        return hash((self.trunc, self._c.tobytes()))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = one(self.trunc)
        for _ in range(k):
            out = mul(out, self)
        return out


def _needs_check(coeffs) -> bool:
    if isinstance(coeffs, np.ndarray):
        return coeffs.dtype == object
    return any(isinstance(v, int) and not INT64_MIN <= v <= INT64_MAX for v in coeffs)


def one(trunc: int = 0) -> QSeries:
    return QSeries([1], trunc)


def zero(trunc: int = 0) -> QSeries:
    return QSeries([0], trunc)


def monomial(k: int, trunc: int, c: int = 1) -> QSeries:
    """``c * q^k`` known to ``trunc``."""
    arr = np.zeros(trunc + 1, dtype=np.int64)
    if k <= trunc:
        arr[k] = c
    return QSeries._wrap(arr)


def phi_series(a: int, trunc: int) -> QSeries:
    """phi(q^a) = 1 + 2 sum_{m>=1} q^{a m^2}, to ``trunc``."""
    if a < 1:
        raise ValueError("a must be a positive integer")
    arr = np.zeros(trunc + 1, dtype=np.int64)
    arr[0] = 1
    m = np.arange(1, isqrt(trunc // a) + 1, dtype=np.int64)
    arr[a * m * m] = 2
    return QSeries._wrap(arr)


def psi_series(a: int, trunc: int) -> QSeries:
    """psi(q^a) = sum_{m>=0} q^{a m(m+1)/2}, to ``trunc``."""
    if a < 1:
        raise ValueError("a must be a positive integer")
    arr = np.zeros(trunc + 1, dtype=np.int64)
    m = np.arange(0, (isqrt(8 * (trunc // a) + 1) - 1) // 2 + 1, dtype=np.int64)
    arr[a * m * (m + 1) // 2] = 1
    return QSeries._wrap(arr)


def _as_series(x, trunc: int) -> QSeries:
    if isinstance(x, QSeries):
        return x
    return QSeries([int(x)], trunc)


def _pointwise(s: QSeries, t: QSeries, sign: int, op: str) -> QSeries:
    T = min(s.trunc, t.trunc)
    a, b = s.coeffs[: T + 1], t.coeffs[: T + 1]
    if _max_abs(a) + _max_abs(b) <= INT64_MAX:
        return QSeries._wrap(a + b if sign > 0 else a - b)
    exact = [int(x) + sign * int(y) for x, y in zip(a, b)]
    return QSeries._wrap(_checked(exact, op))


def add(s: QSeries, t) -> QSeries:
    t = _as_series(t, s.trunc)
    return _pointwise(s, t, 1, "add")


def sub(s: QSeries, t) -> QSeries:
    t = _as_series(t, s.trunc)
    return _pointwise(s, t, -1, "sub")


def scale(s: QSeries, c: int) -> QSeries:
    c = int(c)
    if _max_abs(s.coeffs) * abs(c) <= INT64_MAX:
        return QSeries._wrap(s.coeffs * np.int64(c))
    return QSeries._wrap(_checked([int(v) * c for v in s.coeffs], "scale"))


def mul(s: QSeries, t: QSeries) -> QSeries:
    """Cauchy product to the common truncation."""
    T = min(s.trunc, t.trunc)
    a, b = s.coeffs[: T + 1], t.coeffs[: T + 1]
    # Iterate over the sparser factor; theta series have O(sqrt(T)) terms.
    nz_a, nz_b = np.flatnonzero(a), np.flatnonzero(b)
    if nz_a.size > nz_b.size:
        a, b, nz_a = b, a, nz_b
    bound = _max_abs(a) * int(np.abs(b).sum(dtype=object)) if a.size else 0
    if bound <= INT64_MAX:
        if nz_a.size * 8 < T + 1:
            out = np.zeros(T + 1, dtype=np.int64)
            for k in nz_a:
                out[k:] += a[k] * b[: T + 1 - k]
        else:
            out = np.convolve(a, b)[: T + 1]
        return QSeries._wrap(out)
    out = [0] * (T + 1)
    bl = [int(v) for v in b]
    for k in nz_a:
        ck = int(a[k])
        for j in range(T + 1 - k):
            out[k + j] += ck * bl[j]
    return QSeries._wrap(_checked(out, "mul"))


def product(factors, trunc: int) -> QSeries:
    out = one(trunc)
    for f in factors:
        out = mul(out, f)
    return out


def shift(s: QSeries, k: int) -> QSeries:
    """Multiply by q^k.

    The product is known exactly up to ``trunc + k``: the low ``k``
    coefficients are zero and everything above is a copy of ``s``.
    """
    if k < 0:
        raise ValueError("shift amount must be non-negative")
    arr = np.zeros(s.trunc + 1 + k, dtype=np.int64)
    arr[k:] = s.coeffs
    return QSeries._wrap(arr)


def drop(s: QSeries, k: int) -> QSeries:
    """Discard the first ``k`` coefficients: result[i] = s[i + k]."""
    if k < 0 or k > s.trunc:
        raise TruncationError(f"cannot drop {k} terms from trunc {s.trunc}")
    return QSeries._wrap(s.coeffs[k:].copy())


def substitute(s: QSeries, m: int) -> QSeries:
    """Replace q by q^m.

    Exponents strictly between multiples of m are exactly zero, so the
    result is known up to ``m * trunc + m - 1``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    arr = np.zeros(m * (s.trunc + 1), dtype=np.int64)
    arr[::m] = s.coeffs
    return QSeries._wrap(arr)


def dissect(s: QSeries, r: int, m: int) -> QSeries:
    """The series whose n-th coefficient is ``s[m*n + r]``."""
    if m < 1 or not 0 <= r < m:
        raise ValueError("dissect needs m >= 1 and 0 <= r < m")
    if r > s.trunc:
        raise TruncationError(f"residue {r} beyond trunc {s.trunc}")
    return QSeries._wrap(s.coeffs[r::m].copy())


def progression(s: QSeries, m: int, r: int) -> QSeries:
    """``n -> s[m*n + r]`` for any r >= 0 (dissection followed by a drop)."""
    return drop(dissect(s, r % m, m), r // m)


@dataclass(frozen=True)
class Mismatch:
    index: int
    left: int
    right: int


@dataclass(frozen=True)
class Comparison:
    equal: bool
    mismatch: Mismatch | None = None

    def __bool__(self) -> bool:
        return self.equal


def series_equal(s: QSeries, t: QSeries, upto: int | None = None) -> Comparison:
    """Compare coefficients 0..upto; report the least differing index."""
    limit = min(s.trunc, t.trunc)
    if upto is None:
        upto = limit
    if upto > limit:
        raise TruncationError(f"upto={upto} exceeds known range {limit}")
    diff = np.flatnonzero(s.coeffs[: upto + 1] != t.coeffs[: upto + 1])
    if diff.size == 0:
        return Comparison(True)
    i = int(diff[0])
    return Comparison(False, Mismatch(i, int(s.coeffs[i]), int(t.coeffs[i])))
