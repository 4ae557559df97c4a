"""Closed-form evaluations of t(1,1,6,24; n), t(2,3,3,8; n) and t(1,1,6,8; n).

Each evaluator returns a :class:`ClosedValue` recording which branch
produced the number.  Arguments below a formula's reach are counted by
enumeration and marked ``"enum"``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..arith import a_coeff, decomp23, g1, kronecker, sigma, twisted_divisor_sum
from ..counting import count_enum, triangular


@dataclass(frozen=True)
class ClosedValue:
    value: int
    path: str

    def __int__(self) -> int:
        return self.value


def _require_positive(n: int):
    if n < 1:
        raise ValueError(f"closed forms are defined for n >= 1, got {n}")


def _odd_formula(m: int) -> int:
    # 4(sigma(n1) - (-1)^m a(2m+5)), where 2m+5 = 3^beta n1
    return 4 * (sigma(decomp23(2 * m + 5).n1) - (-1) ** m * a_coeff(2 * m + 5))


def _sigma_power_formula(m: int) -> int:
    # 2^(alpha+4) sigma(n1), where m+1 = 2^alpha 3^beta n1
    d = decomp23(m + 1)
    return 2 ** (d.alpha + 4) * sigma(d.n1)


def _eight_sigma_a(m: int, sign: int) -> int:
    # 8(sigma(n1) + sign * a(2m+1)), where 2m+1 = 3^beta n1
    return 8 * (sigma(decomp23(2 * m + 1).n1) + sign * a_coeff(2 * m + 1))


def closed_t_1_1_6_24(n: int) -> ClosedValue:
    _require_positive(n)
    if n % 2 == 1:
        m = (n - 1) // 2
        if m >= 1:
            return ClosedValue(_odd_formula(m), "odd")
        return ClosedValue(count_enum(triangular(1, 1, 6, 24), n), "enum")
    if n % 4 == 0:
        return ClosedValue(_sigma_power_formula(n // 4), "0 mod 4")
    return ClosedValue(_eight_sigma_a((n + 2) // 4, -1), "2 mod 4")


def closed_t_2_3_3_8(n: int) -> ClosedValue:
    _require_positive(n)
    if n % 2 == 1:
        m = (n - 3) // 2
        if m >= 1:
            return ClosedValue(_odd_formula(m), "odd")
    elif n % 4 == 0:
        return ClosedValue(_eight_sigma_a(n // 4, 1), "0 mod 4")
    elif n >= 6:
        return ClosedValue(_sigma_power_formula((n - 2) // 4), "2 mod 4")
    return ClosedValue(count_enum(triangular(2, 3, 3, 8), n), "enum")


def closed_t_1_1_6_8(n: int) -> ClosedValue:
    _require_positive(n)
    if n % 2 == 0:
        d = decomp23(n // 2 + 1)
        n1 = d.n1
        sign = (-1) ** (d.alpha + d.beta + (n1 - 1) // 2)
        value = 2 ** (d.alpha + 2) * (3 ** (d.beta + 1) * kronecker(3, n1) + sign) * twisted_divisor_sum(n1)
        return ClosedValue(value, "even")
    m = (n - 1) // 2
    d = decomp23(2 * m + 3)
    head = 2 * (3 ** (d.beta + 1) * kronecker(3, d.n1) + (-1) ** m) * twisted_divisor_sum(d.n1)
    # 8m+12 = a^2 + 3b^2 is 4(2m+3) = a^2 + 3b^2
    return ClosedValue(head - 4 * g1(2 * m + 3), "odd")


CLOSED_FORMS = {
    (1, 1, 6, 24): closed_t_1_1_6_24,
    (2, 3, 3, 8): closed_t_2_3_3_8,
    (1, 1, 6, 8): closed_t_1_1_6_8,
}
