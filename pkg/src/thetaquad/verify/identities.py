"""Series-level checks: theta function identities, the two dissection
formulas for N(a,a,a,2b; .), and the square-corrected t(1,4,4; n) identity."""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from math import isqrt

from .. import qseries as qs
from ..arith import r3
from ..counting import count_enum, square, triangular
from .report import Counterexample, Method, Status, VerifyReport

# --- a tiny notation for theta monomials -------------------------------------
#
# A side is a sum of terms like "4 q2 psi8^2" or "phi16 phi48":
# an optional integer, an optional power of q, then phiA / psiA factors.

_FACTOR = re.compile(r"(phi|psi)(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class ThetaTerm:
    coeff: int
    qpow: int
    factors: tuple[tuple[str, int, int], ...]

    def series(self, trunc: int) -> qs.QSeries:
        out = qs.one(trunc)
        for name, a, e in self.factors:
            base = qs.phi_series(a, trunc) if name == "phi" else qs.psi_series(a, trunc)
            for _ in range(e):
                out = out * base
        return qs.QSeries(qs.scale(qs.shift(out, self.qpow), self.coeff).coeffs, trunc)

    def __str__(self) -> str:
        parts = [] if self.coeff == 1 else [str(self.coeff)]
        if self.qpow:
            parts.append("q" if self.qpow == 1 else f"q{self.qpow}")
        parts += [f"{n}{a}" + (f"^{e}" if e > 1 else "") for n, a, e in self.factors]
        return " ".join(parts)


def parse_side(text: str) -> tuple[ThetaTerm, ...]:
    terms = []
    for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", text):
        coeff, qpow, factors = 1, 0, []
        for tok in body.split():
            if tok.isdigit():
                coeff = int(tok)
            elif re.fullmatch(r"q\d*", tok):
                qpow = int(tok[1:] or 1)
            else:
                m = _FACTOR.match(tok)
                if not m:
                    raise ValueError(f"bad theta factor {tok!r}")
                factors.append((m.group(1), int(m.group(2)), int(m.group(3) or 1)))
        terms.append(ThetaTerm(-coeff if sign == "-" else coeff, qpow, tuple(factors)))
    return tuple(terms)


@dataclass(frozen=True)
class ThetaIdentity:
    id: str
    sides: tuple[tuple[ThetaTerm, ...], ...]

    @classmethod
    def of(cls, id: str, *sides: str) -> "ThetaIdentity":
        return cls(id, tuple(parse_side(s) for s in sides))

    def side_series(self, i: int, trunc: int) -> qs.QSeries:
        out = qs.zero(trunc)
        for term in self.sides[i]:
            out = out + term.series(trunc)
        return out

    def __str__(self) -> str:
        def side(terms):
            s = " + ".join(str(t) for t in terms)
            return s.replace("+ -", "- ")

        return " = ".join(side(t) for t in self.sides)


THETA_IDENTITIES = (
    ThetaIdentity.of("eq1.5", "psi1^2", "phi1 psi2"),
    ThetaIdentity.of("eq1.6", "phi1", "phi4 + 2 q psi8", "phi16 + 2 q4 psi32 + 2 q psi8"),
    ThetaIdentity.of("eq1.7", "phi1^2", "phi2^2 + 4 q psi4^2", "phi4^2 + 4 q2 psi8^2 + 4 q psi4^2"),
    ThetaIdentity.of("eq1.8", "psi1 psi3", "phi6 psi4 + q phi2 psi12"),
    ThetaIdentity.of(
        "eq1.9", "phi1^2", "phi8^2 + 4 q4 psi16^2 + 4 q2 psi8^2 + 4 q phi16 psi8 + 8 q5 psi8 psi32"
    ),
    ThetaIdentity.of(
        "eq1.10",
        "phi1 phi3",
        "phi16 phi48 + 4 q16 psi32 psi96 + 2 q phi48 psi8 + 2 q3 phi16 psi24"
        " + 6 q4 psi8 psi24 + 4 q13 psi8 psi96 + 4 q7 psi24 psi32",
    ),
    ThetaIdentity.of("eq3.20", "psi1 psi7", "psi8 phi28 + q psi2 psi14 + q6 phi4 psi56"),
    ThetaIdentity.of("eq3.21", "psi2 psi14", "psi16 phi56 + q2 psi4 psi28 + q12 phi8 psi112"),
    ThetaIdentity.of(
        "eq3.22", "psi1 psi7", "psi8 phi28 + q6 phi4 psi56 + q psi16 phi56 + q3 psi4 psi28 + q13 phi8 psi112"
    ),
    ThetaIdentity.of("eq3.25", "psi3 psi5", "phi60 psi8 + q3 psi2 psi30 + q14 phi4 psi120"),
    ThetaIdentity.of("eq3.26", "psi1 psi15", "psi6 psi10 + q phi20 psi24 + q3 phi12 psi40"),
    ThetaIdentity.of(
        "eq3.27", "psi3 psi5", "phi60 psi8 + q14 phi4 psi120 + q3 psi12 psi20 + q5 phi40 psi48 + q9 phi24 psi80"
    ),
    ThetaIdentity.of(
        "eq3.28",
        "psi1 psi15",
        "phi120 psi16 + q28 phi8 psi240 + q6 psi4 psi60 + q phi20 psi24 + q3 phi12 psi40",
    ),
)


def flip_sign(identity: ThetaIdentity, side: int = -1, term: int = -1) -> ThetaIdentity:
    """A copy with one term's sign reversed (a falsification control)."""
    sides = [list(s) for s in identity.sides]
    t = sides[side][term]
    sides[side][term] = ThetaTerm(-t.coeff, t.qpow, t.factors)
    return ThetaIdentity(identity.id + ".flipped", tuple(tuple(s) for s in sides))


def check_identity(identity: ThetaIdentity, trunc: int) -> VerifyReport:
    start = time.perf_counter()
    first = identity.side_series(0, trunc)
    cex = []
    for i in range(1, len(identity.sides)):
        cmp = qs.series_equal(first, identity.side_series(i, trunc))
        if not cmp:
            cex.append(Counterexample(cmp.mismatch.index, cmp.mismatch.left, cmp.mismatch.right))
    return VerifyReport(
        identity.id, {}, 0, trunc, Method.SERIES, Status.FAIL if cex else Status.PASS, cex,
        (time.perf_counter() - start) * 1000, checked=trunc + 1,
    )


def theta_identity_suite(trunc: int, identities=THETA_IDENTITIES) -> VerifyReport:
    """Every identity compared coefficientwise up to q^trunc, as one report.

    A failure names the offending identities in ``detail["failed"]``.
    """
    if trunc < 1:
        raise ValueError("trunc must be >= 1")
    start = time.perf_counter()
    reports = [check_identity(i, trunc) for i in identities]
    failed = [r for r in reports if r.status is Status.FAIL]
    cex = [c for r in failed for c in r.counterexamples[:1]]
    return VerifyReport(
        "theta-identities", {}, 0, trunc, Method.SERIES, Status.FAIL if failed else Status.PASS, cex,
        (time.perf_counter() - start) * 1000, checked=len(reports),
        detail={"identities": [r.rule_id for r in reports], "failed": [r.rule_id for r in failed]},
    )


# --- dissection formulas for N(a,a,a,2b; .) ------------------------------------


def lemma5_1_check(a: int, b: int, trunc: int) -> bool:
    """Both progressions 8n+5a and 8n+a+2b of phi(q^a)^3 phi(q^2b) against
    their theta-product forms, to q^trunc.  Needs ab = 3 (mod 4)."""
    if a < 1 or b < 1 or (a * b) % 4 != 3:
        raise ValueError(f"needs positive a, b with ab = 3 (mod 4), got a={a}, b={b}")
    full = 8 * trunc + 5 * a + 2 * b
    gen = qs.product([qs.phi_series(a, full)] * 3 + [qs.phi_series(2 * b, full)], full)
    lhs1 = qs.progression(gen, 8, 5 * a)
    lhs2 = qs.progression(gen, 8, a + 2 * b)
    phi, psi = qs.phi_series, qs.psi_series
    rhs1 = 24 * qs.product([phi(b, trunc), psi(a, trunc), psi(2 * a, trunc), psi(2 * a, trunc)], trunc)
    rhs2 = 12 * qs.product([phi(a, trunc), phi(a, trunc), psi(a, trunc), psi(2 * b, trunc)], trunc)
    return bool(qs.series_equal(lhs1, rhs1, trunc)) and bool(qs.series_equal(lhs2, rhs2, trunc))


# --- t(1,4,4; n) against r3 and N ------------------------------------------------


def square_correction(n: int) -> int:
    """(-1)^((m+1)/2) m when 8n+9 = m^2, otherwise 0."""
    v = 8 * n + 9
    m = isqrt(v)
    if m * m != v:
        return 0
    return m if ((m + 1) // 2) % 2 == 0 else -m


@dataclass(frozen=True)
class Thm27Values:
    n: int
    t: int
    r3: int
    N: int
    correction: int

    @property
    def holds(self) -> bool:
        return (
            6 * self.t - self.r3 == 6 * self.correction
            and 2 * self.t - self.N == 2 * self.correction
            and self.r3 == 3 * self.N
        )


def thm2_7_values(n: int) -> Thm27Values:
    return Thm27Values(
        n,
        count_enum(triangular(1, 4, 4), n),
        r3(8 * n + 9),
        count_enum(square(1, 4, 4), 8 * n + 9),
        square_correction(n),
    )


def thm2_7_check(n: int) -> bool:
    """6t - r3(8n+9) = 6c, 2t - N(1,4,4;8n+9) = 2c, and r3(8n+9) = 3N(1,4,4;8n+9)."""
    return thm2_7_values(n).holds
