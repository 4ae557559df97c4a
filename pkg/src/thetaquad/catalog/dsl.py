"""A small rule language for identities between t- and N-counts.

One rule per line::

    rule half.1 "example": forall a b | odd(a), odd(b) :: t(a,2a,2a,2b; n) == 1/2 N(a,a,4a,2b; 8n+5a+2b)

Header: ``rule`` (a proved statement) or ``conjecture``, an id, an optional
quoted source and optional ``[flag, ...]``.  The optional ``forall`` clause
names the parameters (positive integers) and a comma-separated conjunction
of conditions.  The body is two or more sums joined by ``==``; a chained
``A == B == C`` asserts all sides equal.

Conditions::

    odd(e)  even(e)  gcd(e, e)=1
    e ≡ r1,...,rj (mod m)      e ≢ r1,...,rj (mod m)
    d | e   d ∤ e              e >= e  (also <=, <, >, =, !=)
    legendre_exists(p|e, e)    some odd prime p dividing the first has (second / p) = -1
    any_of(cond; cond; ...)    disjunction

Expressions use + - * / with integer literals, parameters and ``n``;
``8n`` means ``8*n``.  Term arguments must be linear in the parameters and
affine in n.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Callable

import numpy as np

from .. import arith
from ..counting import FormSpec, Kind

# --- errors -------------------------------------------------------------------


class RuleSyntaxError(ValueError):
    def __init__(self, msg: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class RuleSemanticError(ValueError):
    pass


class InadmissibleAssignment(RuleSemanticError):
    pass


# --- expressions ----------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Num | Var | Neg | BinOp

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 3
    return 4


def expr_str(e: Expr) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        inner = expr_str(e.arg)
        return f"-({inner})" if _prec(e.arg) < 3 else f"-{inner}"
    left, right = expr_str(e.left), expr_str(e.right)
    if _prec(e.left) < _PREC[e.op]:
        left = f"({left})"
    if _prec(e.right) <= _PREC[e.op]:
        right = f"({right})"
    return f"{left}{e.op}{right}"


def expr_vars(e: Expr) -> frozenset[str]:
    if isinstance(e, Var):
        return frozenset([e.name])
    if isinstance(e, Neg):
        return expr_vars(e.arg)
    if isinstance(e, BinOp):
        return expr_vars(e.left) | expr_vars(e.right)
    return frozenset()


def expr_eval(e: Expr, env):
    """Evaluate over ints or numpy int arrays; '/' must divide exactly."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise RuleSemanticError(f"unbound variable {e.name!r}") from None
    if isinstance(e, Neg):
        return -expr_eval(e.arg, env)
    x, y = expr_eval(e.left, env), expr_eval(e.right, env)
    if e.op == "+":
        return x + y
    if e.op == "-":
        return x - y
    if e.op == "*":
        return x * y
    if np.any(np.asarray(y) == 0) or np.any(np.asarray(x % y) != 0):
        raise RuleSemanticError(f"inexact division in {expr_str(e)}")
    return x // y


# --- linear forms ---------------------------------------------------------------


@dataclass(frozen=True)
class LinForm:
    """``const + sum coeff*var`` with rational coefficients, canonically ordered."""

    terms: tuple[tuple[str, Fraction], ...] = ()
    const: Fraction = Fraction(0)

    @staticmethod
    def make(coeffs: dict[str, Fraction], const) -> "LinForm":
        terms = tuple(sorted(((v, Fraction(c)) for v, c in coeffs.items() if c), key=_var_order))
        return LinForm(terms, Fraction(const))

    @staticmethod
    def from_expr(e: Expr) -> "LinForm":
        if isinstance(e, Num):
            return LinForm.make({}, e.value)
        if isinstance(e, Var):
            return LinForm.make({e.name: 1}, 0)
        if isinstance(e, Neg):
            return LinForm.from_expr(e.arg).scaled(-1)
        x, y = LinForm.from_expr(e.left), LinForm.from_expr(e.right)
        if e.op == "+":
            return x.plus(y, 1)
        if e.op == "-":
            return x.plus(y, -1)
        if e.op == "*":
            if not x.terms:
                return y.scaled(x.const)
            if not y.terms:
                return x.scaled(y.const)
            raise RuleSemanticError(f"non-linear product {expr_str(e)}")
        if y.terms or y.const == 0:
            raise RuleSemanticError(f"can only divide by a non-zero constant: {expr_str(e)}")
        return x.scaled(1 / y.const)

    def scaled(self, c) -> "LinForm":
        return LinForm.make({v: k * c for v, k in self.terms}, self.const * c)

    def plus(self, other: "LinForm", sign: int) -> "LinForm":
        d = dict(self.terms)
        for v, k in other.terms:
            d[v] = d.get(v, 0) + sign * k
        return LinForm.make(d, self.const + sign * other.const)

    def coeff(self, var: str) -> Fraction:
        return dict(self.terms).get(var, Fraction(0))

    def variables(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.terms)

    def evaluate(self, env: dict[str, int]) -> Fraction:
        return self.const + sum((k * env[v] for v, k in self.terms), Fraction(0))

    def __str__(self) -> str:
        parts = []
        for v, k in self.terms:
            parts.append(_signed(k, v))
        if self.const or not parts:
            parts.append(_signed(self.const, ""))
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def _var_order(item):
    v = item[0]
    return (v != "n", v)


def _signed(k: Fraction, var: str) -> str:
    sign = "-" if k < 0 else "+"
    k = abs(k)
    if var and k == 1:
        mag = ""
    elif k.denominator == 1:
        mag = str(k.numerator)
    else:
        mag = f"{k.numerator}/{k.denominator}" + ("*" if var else "")
    return f"{sign}{mag}{var}"


def _coef_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# --- conditions ---------------------------------------------------------------------


def _maybe_not(hit, negate: bool):
    if np.ndim(hit) == 0:
        return bool(hit) != negate
    return ~hit if negate else hit


@dataclass(frozen=True)
class Parity:
    expr: Expr
    odd: bool

    def evaluate(self, env):
        return (expr_eval(self.expr, env) % 2 == 1) == self.odd

    def variables(self):
        return expr_vars(self.expr)

    def __str__(self):
        return f"{'odd' if self.odd else 'even'}({expr_str(self.expr)})"


@dataclass(frozen=True)
class Coprime:
    left: Expr
    right: Expr

    def evaluate(self, env):
        return np.gcd(expr_eval(self.left, env), expr_eval(self.right, env)) == 1

    def variables(self):
        return expr_vars(self.left) | expr_vars(self.right)

    def __str__(self):
        return f"gcd({expr_str(self.left)},{expr_str(self.right)})=1"


@dataclass(frozen=True)
class Congruence:
    expr: Expr
    residues: tuple[int, ...]
    modulus: int
    negate: bool = False

    def evaluate(self, env):
        v = expr_eval(self.expr, env) % self.modulus
        hit = np.isin(v, [r % self.modulus for r in self.residues])
        return _maybe_not(hit, self.negate)

    def variables(self):
        return expr_vars(self.expr)

    def __str__(self):
        rel = "≢" if self.negate else "≡"
        return f"{expr_str(self.expr)} {rel} {','.join(map(str, self.residues))} (mod {self.modulus})"


@dataclass(frozen=True)
class Divides:
    divisor: int
    expr: Expr
    negate: bool = False

    def evaluate(self, env):
        hit = expr_eval(self.expr, env) % self.divisor == 0
        return _maybe_not(hit, self.negate)

    def variables(self):
        return expr_vars(self.expr)

    def __str__(self):
        return f"{self.divisor} {'∤' if self.negate else '|'} {expr_str(self.expr)}"


_CMP: dict[str, Callable] = {
    ">=": lambda x, y: x >= y,
    "<=": lambda x, y: x <= y,
    ">": lambda x, y: x > y,
    "<": lambda x, y: x < y,
    "=": lambda x, y: x == y,
    "!=": lambda x, y: x != y,
}


@dataclass(frozen=True)
class Compare:
    left: Expr
    op: str
    right: Expr

    def evaluate(self, env):
        return _CMP[self.op](expr_eval(self.left, env), expr_eval(self.right, env))

    def variables(self):
        return expr_vars(self.left) | expr_vars(self.right)

    def __str__(self):
        return f"{expr_str(self.left)} {self.op} {expr_str(self.right)}"


def _legendre_exists(modulus: int, value: int) -> bool:
    return any(arith.kronecker(value, p) == -1 for p in arith.odd_prime_divisors(modulus))


@dataclass(frozen=True)
class LegendreExists:
    """Some odd prime p dividing ``modulus`` has (value / p) = -1."""

    modulus: Expr
    value: Expr

    def evaluate(self, env):
        m, v = expr_eval(self.modulus, env), expr_eval(self.value, env)
        if np.ndim(m) == 0 and np.ndim(v) == 0:
            return _legendre_exists(int(m), int(v))
        m, v = np.broadcast_arrays(m, v)
        return np.array([_legendre_exists(int(x), int(y)) for x, y in zip(m.ravel(), v.ravel())]).reshape(m.shape)

    def variables(self):
        return expr_vars(self.modulus) | expr_vars(self.value)

    def __str__(self):
        return f"legendre_exists(p|{expr_str(self.modulus)}, {expr_str(self.value)})"


@dataclass(frozen=True)
class AnyOf:
    options: tuple

    def evaluate(self, env):
        out = False
        for c in self.options:
            out = out | c.evaluate(env)
        return out

    def variables(self):
        return frozenset().union(*(c.variables() for c in self.options))

    def __str__(self):
        return f"any_of({'; '.join(str(c) for c in self.options)})"


Condition = Parity | Coprime | Congruence | Divides | Compare | LegendreExists | AnyOf


# --- rules ----------------------------------------------------------------------------


class Status(enum.Enum):
    THEOREM = "rule"
    CONJECTURE = "conjecture"


@dataclass(frozen=True)
class TermRef:
    kind: Kind
    coeff_forms: tuple[LinForm, ...]
    arg: LinForm

    def __str__(self):
        return f"{self.kind.value}({','.join(map(str, self.coeff_forms))}; {self.arg})"


@dataclass(frozen=True)
class LinComb:
    terms: tuple[tuple[Fraction, TermRef], ...]

    def __str__(self):
        out = []
        for i, (c, t) in enumerate(self.terms):
            mag = abs(c)
            body = str(t) if mag == 1 else f"{_coef_str(mag)} {t}"
            if i == 0:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f" {'-' if c < 0 else '+'} {body}")
        return "".join(out)


@dataclass(frozen=True)
class IdentityRule:
    id: str
    sides: tuple[LinComb, ...]
    params: tuple[str, ...] = ()
    conditions: tuple = ()
    status: Status = Status.THEOREM
    source: str = ""
    flags: tuple[str, ...] = ()

    @property
    def lhs(self) -> LinComb:
        return self.sides[0]

    @property
    def rhs(self) -> LinComb:
        return self.sides[-1]

    @property
    def is_conjecture(self) -> bool:
        return self.status is Status.CONJECTURE

    def terms(self):
        for side in self.sides:
            for c, t in side.terms:
                yield c, t

    def __str__(self):
        return print_rule(self)


def print_rule(rule: IdentityRule) -> str:
    head = f"{rule.status.value} {rule.id}"
    if rule.source:
        head += f' "{rule.source}"'
    if rule.flags:
        head += f" [{', '.join(rule.flags)}]"
    body = " == ".join(str(s) for s in rule.sides)
    if rule.params or rule.conditions:
        quant = "forall" + "".join(f" {p}" for p in rule.params)
        if rule.conditions:
            quant += " | " + ", ".join(str(c) for c in rule.conditions)
        return f"{head}: {quant} :: {body}"
    return f"{head}: {body}"


# --- tokenizer ----------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<string>"[^"]*")
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_.]*(?<!\.))
  | (?P<op>::|==|>=|<=|!=|!\||[≡≢∤|,;:()\[\]+\-*/=<>−])
    """,
    re.VERBOSE,
)


@dataclass
class Tok:
    kind: str
    text: str
    col: int


def tokenize(text: str, line: int = 1) -> list[Tok]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise RuleSyntaxError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if tok == "−":
                tok = "-"
            elif tok == "!|":
                tok = "∤"
            out.append(Tok(kind, tok, pos + 1))
        pos = m.end()
    out.append(Tok("end", "", len(text) + 1))
    return out


# --- parser ----------------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, line: int = 1):
        self.toks = tokenize(text, line)
        self.i = 0
        self.line = line

    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Tok | None = None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        raise RuleSyntaxError(f"{msg} (found {found!r})", self.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind != "string":
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            self.error(f"expected {text!r}")

    def expect_kind(self, kind: str) -> Tok:
        if self.tok.kind != kind:
            self.error(f"expected {kind}")
        t = self.tok
        self.i += 1
        return t

    def integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        return sign * int(self.expect_kind("num").text)

    # expressions
    def expr(self) -> Expr:
        node = self.product()
        while self.tok.text in ("+", "-"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.product())
        return node

    def product(self) -> Expr:
        node = self.unary()
        while True:
            if self.tok.text in ("*", "/"):
                op = self.tok.text
                self.i += 1
                node = BinOp(op, node, self.unary())
            elif isinstance(node, Num) and (self.tok.kind == "ident" or self.tok.text == "("):
                node = BinOp("*", node, self.unary())
            else:
                return node

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Num(int(t.text))
        if t.kind == "ident":
            if t.text in ("t", "N"):
                self.error("term used inside an expression")
            self.i += 1
            return Var(t.text)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        self.error("expected an expression")

    def linform(self) -> LinForm:
        start = self.tok
        e = self.expr()
        try:
            return LinForm.from_expr(e)
        except RuleSemanticError as exc:
            raise RuleSyntaxError(str(exc), self.line, start.col) from None

    # conditions
    def condition(self):
        t = self.tok
        if t.kind == "ident" and self.peek().text == "(":
            name = t.text
            if name in ("odd", "even"):
                self.i += 2
                e = self.expr()
                self.expect(")")
                return Parity(e, name == "odd")
            if name == "gcd":
                self.i += 2
                x = self.expr()
                self.expect(",")
                y = self.expr()
                self.expect(")")
                self.expect("=")
                if self.integer() != 1:
                    self.error("only gcd(x,y)=1 is supported", t)
                return Coprime(x, y)
            if name == "legendre_exists":
                self.i += 2
                if self.tok.text == "p" and self.peek().text == "|":
                    self.i += 2
                m = self.expr()
                self.expect(",")
                v = self.expr()
                self.expect(")")
                return LegendreExists(m, v)
            if name == "any_of":
                self.i += 2
                opts = [self.condition()]
                while self.accept(";"):
                    opts.append(self.condition())
                self.expect(")")
                return AnyOf(tuple(opts))
        left = self.expr()
        op = self.tok.text
        if op in ("|", "∤"):
            if not isinstance(left, Num):
                self.error("divisor must be an integer literal", t)
            self.i += 1
            return Divides(left.value, self.expr(), op == "∤")
        if op in ("≡", "≢"):
            self.i += 1
            residues = [self.integer()]
            while self.tok.text == "," and self.peek().text != "" and (
                self.peek().kind == "num" or self.peek().text == "-"
            ):
                self.i += 1
                residues.append(self.integer())
            self.expect("(")
            if self.tok.text != "mod":
                self.error("expected 'mod'")
            self.i += 1
            m = self.integer()
            if m < 1:
                self.error("modulus must be positive")
            self.expect(")")
            return Congruence(left, tuple(residues), m, op == "≢")
        if op in _CMP:
            self.i += 1
            return Compare(left, op, self.expr())
        self.error("expected a condition")

    # terms and sums
    def term(self) -> TermRef:
        t = self.tok
        if t.kind != "ident" or t.text not in ("t", "N"):
            self.error("expected t(...) or N(...)")
        self.i += 1
        self.expect("(")
        forms = [self.linform()]
        while self.accept(","):
            forms.append(self.linform())
        self.expect(";")
        arg_tok = self.tok
        arg = self.linform()
        self.expect(")")
        s = arg.coeff("n")
        if s.denominator != 1 or s < 1:
            raise RuleSyntaxError("argument must be s*n + offset with integer s >= 1", self.line, arg_tok.col)
        for f in forms:
            if "n" in f.variables():
                raise RuleSyntaxError("form coefficients cannot depend on n", self.line, arg_tok.col)
        kind = Kind.TRIANGULAR if t.text == "t" else Kind.SQUARE
        return TermRef(kind, tuple(forms), arg)

    def coefficient(self) -> Fraction:
        num = int(self.expect_kind("num").text)
        if self.accept("/"):
            den = int(self.expect_kind("num").text)
            if den == 0:
                self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def signed_term(self, sign: int) -> tuple[Fraction, TermRef]:
        c = Fraction(1)
        if self.tok.kind == "num":
            c = self.coefficient()
            self.accept("*")
        return sign * c, self.term()

    def lincomb(self) -> LinComb:
        sign = -1 if self.accept("-") else 1
        terms = [self.signed_term(sign)]
        while self.tok.text in ("+", "-"):
            sign = 1 if self.tok.text == "+" else -1
            self.i += 1
            terms.append(self.signed_term(sign))
        return LinComb(tuple(terms))

    def flag(self) -> str:
        parts = [self.expect_kind("ident").text]
        while self.accept("-"):
            parts.append(self.expect_kind("ident").text)
        return "-".join(parts)

    def rule(self) -> IdentityRule:
        kw = self.tok.text
        if kw not in ("rule", "conjecture"):
            self.error("expected 'rule' or 'conjecture'")
        self.i += 1
        rid = self.expect_kind("ident").text
        source = ""
        if self.tok.kind == "string":
            source = self.tok.text[1:-1]
            self.i += 1
        flags: list[str] = []
        if self.accept("["):
            flags.append(self.flag())
            while self.accept(","):
                flags.append(self.flag())
            self.expect("]")
        self.expect(":")
        params: list[str] = []
        conds = []
        if self.tok.text == "forall" and self.tok.kind == "ident":
            self.i += 1
            while self.tok.kind == "ident":
                name = self.tok.text
                if name in ("n", "t", "N"):
                    self.error(f"{name!r} cannot be a parameter")
                if name in params:
                    self.error(f"duplicate parameter {name!r}")
                params.append(name)
                self.i += 1
            if self.accept("|"):
                conds.append(self.condition())
                while self.accept(","):
                    conds.append(self.condition())
            self.expect("::")
        sides = [self.lincomb()]
        if self.tok.text != "==":
            self.error("expected '=='")
        while self.accept("=="):
            sides.append(self.lincomb())
        if self.tok.kind != "end":
            self.error("unexpected trailing input")
        rule = IdentityRule(
            rid,
            tuple(sides),
            tuple(params),
            tuple(conds),
            Status(kw),
            source,
            tuple(flags),
        )
        self._check_names(rule)
        return rule

    def _check_names(self, rule: IdentityRule):
        known = set(rule.params) | {"n"}
        used = set()
        for _, t in rule.terms():
            for f in (*t.coeff_forms, t.arg):
                used |= f.variables()
        for c in rule.conditions:
            used |= c.variables()
        unknown = sorted(used - known)
        if unknown:
            raise RuleSyntaxError(f"unknown parameter(s) {', '.join(unknown)}", self.line, 1)


def parse_rule(text: str, line: int = 1) -> IdentityRule:
    return _Parser(text.strip(), line).rule()


def parse_rules(text: str) -> list[IdentityRule]:
    """Parse a rule file: one rule per line, '#' comments and blank lines ignored."""
    rules, seen = [], set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rule = _Parser(line, lineno).rule()
        if rule.id in seen:
            raise RuleSyntaxError(f"duplicate rule id {rule.id!r}", lineno, 1)
        seen.add(rule.id)
        rules.append(rule)
    return rules


# --- instantiation --------------------------------------------------------------------------


@dataclass(frozen=True)
class ConcreteTerm:
    spec: FormSpec
    scale: int
    offset: int

    def arg(self, n):
        return self.scale * n + self.offset

    def __str__(self):
        arg = str(LinForm.make({"n": self.scale}, self.offset))
        return f"{self.spec.kind.value}({','.join(map(str, self.spec.coeffs))}; {arg})"


@dataclass(frozen=True)
class ConcreteRule:
    rule_id: str
    params: tuple[tuple[str, int], ...]
    sides: tuple[tuple[tuple[Fraction, ConcreteTerm], ...], ...]
    residual: tuple = ()
    status: Status = Status.THEOREM
    _env: tuple = field(default=(), repr=False, compare=False)

    def admits(self, n) -> bool | np.ndarray:
        """Residual n-dependent conditions at n (scalar or array)."""
        env = dict(self.params)
        env["n"] = n
        ok = np.ones(np.shape(n), dtype=bool) if np.ndim(n) else True
        for c in self.residual:
            ok = ok & c.evaluate(env)
        return ok

    def denominator(self) -> int:
        return lcm(*(c.denominator for side in self.sides for c, _ in side))

    def terms(self):
        for side in self.sides:
            for c, t in side:
                yield c, t

    def __str__(self):
        def side_str(side):
            return str(LinComb(tuple((c, _Shown(str(t))) for c, t in side)))

        return " == ".join(side_str(s) for s in self.sides)


@dataclass(frozen=True)
class _Shown:
    text: str

    def __str__(self):
        return self.text


def _as_positive_int(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 1:
        raise InadmissibleAssignment(f"{what} evaluates to {value}, not a positive integer")
    return int(value)


def instantiate(rule: IdentityRule, assignment: dict[str, int]) -> ConcreteRule:
    """Fix the parameters; conditions on n are kept as a residual predicate."""
    missing = [p for p in rule.params if p not in assignment]
    extra = [p for p in assignment if p not in rule.params]
    if missing or extra:
        raise RuleSemanticError(f"{rule.id}: parameters {list(rule.params)}, got {sorted(assignment)}")
    env = {p: int(assignment[p]) for p in rule.params}
    for p, v in env.items():
        if v < 1:
            raise InadmissibleAssignment(f"{rule.id}: parameter {p}={v} must be positive")
    residual = []
    for cond in rule.conditions:
        if "n" in cond.variables():
            residual.append(cond)
        elif not cond.evaluate(env):
            raise InadmissibleAssignment(f"{rule.id}: condition {cond} fails for {env}")
    env_n = dict(env, n=0)
    sides = []
    for side in rule.sides:
        out = []
        for c, t in side.terms:
            coeffs = tuple(_as_positive_int(f.evaluate(env), f"coefficient {f}") for f in t.coeff_forms)
            offset = t.arg.evaluate(env_n)
            if offset.denominator != 1:
                raise InadmissibleAssignment(f"{rule.id}: argument offset {t.arg} is not an integer for {env}")
            out.append((c, ConcreteTerm(FormSpec(coeffs, t.kind), int(t.arg.coeff("n")), int(offset))))
        sides.append(tuple(out))
    return ConcreteRule(
        rule.id,
        tuple(sorted(env.items())),
        tuple(sides),
        tuple(residual),
        rule.status,
    )


def assignments(rule: IdentityRule, bound: int):
    """All admissible parameter assignments with every parameter in 1..bound."""
    import itertools

    for values in itertools.product(range(1, bound + 1), repeat=len(rule.params)):
        env = dict(zip(rule.params, values))
        try:
            yield instantiate(rule, env)
        except InadmissibleAssignment:
            continue


__all__ = [
    "AnyOf",
    "Compare",
    "ConcreteRule",
    "ConcreteTerm",
    "Congruence",
    "Coprime",
    "Divides",
    "IdentityRule",
    "InadmissibleAssignment",
    "LegendreExists",
    "LinComb",
    "LinForm",
    "Parity",
    "RuleSemanticError",
    "RuleSyntaxError",
    "Status",
    "TermRef",
    "assignments",
    "gcd",
    "instantiate",
    "parse_rule",
    "parse_rules",
    "print_rule",
]
