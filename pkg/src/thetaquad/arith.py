"""Integer kernels: factorization, divisor sums, Kronecker symbols and the
eta-type coefficient sequences used by the closed-form evaluators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

import numpy as np


@dataclass(frozen=True)
class FactoredInt:
    n: int
    factors: tuple[tuple[int, int], ...]

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)


@dataclass(frozen=True)
class Decomp23:
    alpha: int
    beta: int
    n1: int


def factorize(n: int) -> FactoredInt:
    """Trial division; fine for the n <= ~1e7 range this package works in."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    m, factors = n, []
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            factors.append((p, e))
    p = 5
    step = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            factors.append((p, e))
        p += step
        step = 6 - step
    if m > 1:
        factors.append((m, 1))
    return FactoredInt(n, tuple(factors))


def sigma(n: int) -> int:
    """Sum of the positive divisors of n."""
    return prod((p ** (e + 1) - 1) // (p - 1) for p, e in factorize(n).factors)


def divisors(n: int) -> list[int]:
    return factorize(n).divisors()


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), including even and negative n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd n > 0.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre_euler(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion; an oracle for :func:`kronecker`."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def decomp23(n: int) -> Decomp23:
    """Write n = 2^alpha 3^beta n1 with gcd(n1, 6) = 1."""
    if n < 1:
        raise ValueError(f"decomp23 needs n >= 1, got {n}")
    alpha = beta = 0
    while n % 2 == 0:
        n //= 2
        alpha += 1
    while n % 3 == 0:
        n //= 3
        beta += 1
    return Decomp23(alpha, beta, n)


def r3(n: int) -> int:
    """Number of (x, y, z) in Z^3 with x^2 + y^2 + z^2 = n."""
    if n < 0:
        return 0
    total = 0
    for x in range(-isqrt(n), isqrt(n) + 1):
        rest = n - x * x
        for y in range(-isqrt(rest), isqrt(rest) + 1):
            z2 = rest - y * y
            z = isqrt(z2)
            if z * z == z2:
                total += 1 if z == 0 else 2
    return total


@lru_cache(maxsize=None)
def _eta_product_table(size: int) -> np.ndarray:
    # Coefficients of prod_{k>=1} (1-q^{2k})(1-q^{4k})(1-q^{6k})(1-q^{12k}),
    # multiplied factor by factor; factors with exponent > size act as 1.
    c = np.zeros(size + 1, dtype=np.int64)
    c[0] = 1
    for step in (2, 4, 6, 12):
        for j in range(step, size + 1, step):
            c[j:] = c[j:] - c[:-j]
    c.flags.writeable = False
    return c


def a_coeff_table(n_max: int) -> np.ndarray:
    """a(0..n_max) where sum a(n) q^n = q prod (1-q^{2k})(1-q^{4k})(1-q^{6k})(1-q^{12k})."""
    size = 1 << max(4, (max(n_max, 1) - 1).bit_length())
    tab = _eta_product_table(size)
    out = np.zeros(n_max + 1, dtype=np.int64)
    out[1:] = tab[:n_max]
    return out


def a_coeff(n: int) -> int:
    if n < 1:
        raise ValueError("a(n) is defined for n >= 1")
    return int(a_coeff_table(n)[n])


def g1(n: int) -> int:
    """sum of (-1)^((a-1)/2) a over odd a > 0, b > 0 with a^2 + 3 b^2 = 4n."""
    if n < 1:
        raise ValueError("g1(n) is defined for n >= 1")
    total = 0
    for b in range(1, isqrt(4 * n // 3) + 1):
        a2 = 4 * n - 3 * b * b
        a = isqrt(a2)
        if a > 0 and a * a == a2 and a % 2:
            total += a if a % 4 == 1 else -a
    return total


def twisted_divisor_sum(n1: int) -> int:
    """sum_{d | n1} d * (3/d)."""
    return sum(d * kronecker(3, d) for d in divisors(n1))


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1


def odd_prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n).factors if p % 2] if n >= 1 else []
