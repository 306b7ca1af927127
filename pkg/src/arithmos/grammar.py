"""Constant-expression language: AST, parser, renderer and canonicalizer.

The language has no variables.  Every expression denotes a single complex
number, with principal branches for ``ln``, ``sqrt``, non-integer powers and
the inverse trigonometric functions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Union

from .errors import DomainError, ParseError, UnknownIdentifier

__all__ = [
    "Expr", "RationalLit", "Const", "Add", "Mul", "Pow", "Exp", "Ln", "Sqrt",
    "Trig", "ArcTrig", "Hyp", "TRIG_KINDS", "HYP_KINDS",
    "parse", "render", "canonicalize", "rat", "ZERO", "ONE", "MINUS_ONE", "PI", "E", "I",
    "make_add", "make_mul", "make_pow", "neg", "recip", "sort_key", "subexpressions",
]

TRIG_KINDS = ("SIN", "COS", "TAN", "SEC", "CSC", "COT")
HYP_KINDS = ("SINH", "COSH", "TANH")
CONST_KINDS = ("PI", "E", "I")


# --------------------------------------------------------------------------- AST


@dataclass(frozen=True, slots=True)
class RationalLit:
    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator == 0:
            raise DomainError("division by literal zero")
        g = gcd(self.numerator, self.denominator)
        if self.denominator < 0:
            g = -g
        if g != 1:
            object.__setattr__(self, "numerator", self.numerator // g)
            object.__setattr__(self, "denominator", self.denominator // g)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


@dataclass(frozen=True, slots=True)
class Const:
    kind: str

    def __post_init__(self):
        if self.kind not in CONST_KINDS:
            raise ValueError(f"unknown constant kind {self.kind!r}")


@dataclass(frozen=True, slots=True)
class Add:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("Add needs at least two children")


@dataclass(frozen=True, slots=True)
class Mul:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("Mul needs at least two children")


@dataclass(frozen=True, slots=True)
class Pow:
    base: "Expr"
    exponent: "Expr"


@dataclass(frozen=True, slots=True)
class Exp:
    arg: "Expr"


@dataclass(frozen=True, slots=True)
class Ln:
    arg: "Expr"


@dataclass(frozen=True, slots=True)
class Sqrt:
    arg: "Expr"


@dataclass(frozen=True, slots=True)
class Trig:
    kind: str
    arg: "Expr"

    def __post_init__(self):
        if self.kind not in TRIG_KINDS:
            raise ValueError(f"unknown trig kind {self.kind!r}")


@dataclass(frozen=True, slots=True)
class ArcTrig:
    kind: str
    arg: "Expr"

    def __post_init__(self):
        if self.kind not in TRIG_KINDS:
            raise ValueError(f"unknown trig kind {self.kind!r}")


@dataclass(frozen=True, slots=True)
class Hyp:
    kind: str
    arg: "Expr"

    def __post_init__(self):
        if self.kind not in HYP_KINDS:
            raise ValueError(f"unknown hyperbolic kind {self.kind!r}")


Expr = Union[RationalLit, Const, Add, Mul, Pow, Exp, Ln, Sqrt, Trig, ArcTrig, Hyp]


def rat(p: int | Fraction, q: int = 1) -> RationalLit:
    if isinstance(p, Fraction):
        return RationalLit(p.numerator, p.denominator)
    return RationalLit(p, q)


ZERO = RationalLit(0)
ONE = RationalLit(1)
MINUS_ONE = RationalLit(-1)
PI = Const("PI")
E = Const("E")
I = Const("I")


def children_of(e: Expr) -> tuple:
    if isinstance(e, (Add, Mul)):
        return e.children
    if isinstance(e, Pow):
        return (e.base, e.exponent)
    if isinstance(e, (Exp, Ln, Sqrt, Trig, ArcTrig, Hyp)):
        return (e.arg,)
    return ()


def subexpressions(e: Expr) -> Iterator[Expr]:
    """Post-order traversal (children before parents)."""
    for c in children_of(e):
        yield from subexpressions(c)
    yield e


# ---------------------------------------------------------------- total order

_RANK = {RationalLit: 0, Const: 1, Exp: 2, Ln: 3, Sqrt: 4, Trig: 5, ArcTrig: 6, Hyp: 7,
         Add: 8, Mul: 9, Pow: 10}


@lru_cache(maxsize=65536)
def sort_key(e: Expr) -> tuple:
    r = _RANK[type(e)]
    if isinstance(e, RationalLit):
        return (r, e.value)
    if isinstance(e, Const):
        return (r, CONST_KINDS.index(e.kind))
    if isinstance(e, (Add, Mul)):
        return (r, tuple(sort_key(c) for c in e.children))
    if isinstance(e, Pow):
        return (r, sort_key(e.base), sort_key(e.exponent))
    if isinstance(e, (Exp, Ln, Sqrt)):
        return (r, sort_key(e.arg))
    if isinstance(e, Hyp):
        return (r, HYP_KINDS.index(e.kind), sort_key(e.arg))
    return (r, TRIG_KINDS.index(e.kind), sort_key(e.arg))


def split_coefficient(e: Expr) -> tuple[Fraction, Expr | None]:
    """Split a canonical term into (rational coefficient, remaining factor or None)."""
    if isinstance(e, RationalLit):
        return e.value, None
    if isinstance(e, Mul) and isinstance(e.children[0], RationalLit):
        rest = e.children[1:]
        return e.children[0].value, rest[0] if len(rest) == 1 else Mul(rest)
    return Fraction(1), e


def _term_key(e: Expr) -> tuple:
    # Add terms are ordered by their non-rational part first so that
    # "ln(2) + ln(3) - ln(5)" keeps like shapes together.
    c, rest = split_coefficient(e)
    return ((-1,) if rest is None else sort_key(rest), c)


# ------------------------------------------------------------ smart builders


def _is_lit(e: Expr, value=None) -> bool:
    return isinstance(e, RationalLit) and (value is None or e.value == value)


def make_add(terms) -> Expr:
    flat: list[Expr] = []
    const = Fraction(0)
    for t in terms:
        for s in (t.children if isinstance(t, Add) else (t,)):
            if isinstance(s, RationalLit):
                const += s.value
            else:
                flat.append(s)
    if const != 0 or not flat:
        flat.append(rat(const))
    if len(flat) == 1:
        return flat[0]
    return Add(tuple(sorted(flat, key=_term_key)))


def make_mul(factors) -> Expr:
    flat: list[Expr] = []
    coeff = Fraction(1)
    for f in factors:
        for s in (f.children if isinstance(f, Mul) else (f,)):
            if isinstance(s, RationalLit):
                coeff *= s.value
            else:
                flat.append(s)
    if coeff == 0:
        return ZERO
    if coeff != 1 or not flat:
        flat.append(rat(coeff))
    if len(flat) == 1:
        return flat[0]
    return Mul(tuple(sorted(flat, key=sort_key)))


def _exact_root(q: Fraction, n: int) -> Fraction | None:
    """Exact n-th root of a nonnegative rational, if it is rational."""
    def iroot(k: int) -> int | None:
        r = _int_nth_root(k, n)
        return r if r**n == k else None

    a, b = iroot(q.numerator), iroot(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def _int_nth_root(k: int, n: int) -> int:
    lo, hi = 0, 1 << (k.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**n <= k:
            lo = mid
        else:
            hi = mid - 1
    return lo


def make_sqrt(a: Expr) -> Expr:
    if isinstance(a, RationalLit) and a.value >= 0:
        r = _exact_root(a.value, 2)
        if r is not None:
            return rat(r)
    return Sqrt(a)


def make_pow(b: Expr, x: Expr) -> Expr:
    if b == E:
        return make_exp(x)
    if _is_lit(b, 1):
        return ONE
    if not isinstance(x, RationalLit):
        return Pow(b, x)
    xv = x.value
    if xv == 1:
        return b
    if xv == 0:
        if isinstance(b, RationalLit):
            if b.value == 0:
                raise DomainError("0^0 is undefined")
            return ONE
        return Pow(b, x)
    if isinstance(b, RationalLit):
        bv = b.value
        if bv == 0:
            if xv < 0:
                raise DomainError("division by literal zero")
            return ZERO
        if xv.denominator == 1:
            return rat(bv ** int(xv))
        if bv > 0:
            r = _exact_root(bv, xv.denominator)
            if r is not None:
                return rat(r ** xv.numerator)
        if xv == Fraction(1, 2):
            return make_sqrt(b)
        return Pow(b, x)
    if xv == Fraction(1, 2):
        return make_sqrt(b)
    if xv.denominator == 1:
        n = int(xv)
        if isinstance(b, Pow) and isinstance(b.exponent, RationalLit):
            return make_pow(b.base, rat(b.exponent.value * n))
        if isinstance(b, Sqrt):
            return make_pow(b.arg, rat(Fraction(n, 2)))
        if isinstance(b, Mul):
            return make_mul(make_pow(c, x) for c in b.children)
        if isinstance(b, Exp):
            return make_exp(make_mul([x, b.arg]))
        if b == I:
            return [ONE, I, MINUS_ONE, Mul((MINUS_ONE, I))][n % 4]
    return Pow(b, x)


def make_exp(a: Expr) -> Expr:
    if _is_lit(a, 0):
        return ONE
    if _is_lit(a, 1):
        return E
    if isinstance(a, Ln):
        return a.arg
    return Exp(a)


def make_ln(a: Expr) -> Expr:
    if _is_lit(a, 0):
        raise DomainError("ln(0) is undefined")
    if _is_lit(a, 1):
        return ZERO
    if a == E:
        return ONE
    return Ln(a)


_TRIG_AT_ZERO = {"SIN": ZERO, "COS": ONE, "TAN": ZERO, "SEC": ONE}
_HYP_AT_ZERO = {"SINH": ZERO, "COSH": ONE, "TANH": ZERO}


def make_trig(kind: str, a: Expr) -> Expr:
    if _is_lit(a, 0):
        if kind not in _TRIG_AT_ZERO:
            raise DomainError(f"{kind.lower()}(0) is undefined")
        return _TRIG_AT_ZERO[kind]
    return Trig(kind, a)


def make_hyp(kind: str, a: Expr) -> Expr:
    if _is_lit(a, 0):
        return _HYP_AT_ZERO[kind]
    return Hyp(kind, a)


def neg(e: Expr) -> Expr:
    return make_mul([MINUS_ONE, e])


def recip(e: Expr) -> Expr:
    return make_pow(e, MINUS_ONE)


def canonicalize(e: Expr) -> Expr:
    """Return the canonical form of ``e``.

    Only value-exact folds are applied.  Raises DomainError for literal
    domain violations (``ln(0)``, ``0^-1``, ...).
    """
    if isinstance(e, (RationalLit, Const)):
        return e
    if isinstance(e, Add):
        return make_add(canonicalize(c) for c in e.children)
    if isinstance(e, Mul):
        return make_mul([canonicalize(c) for c in e.children])
    if isinstance(e, Pow):
        return make_pow(canonicalize(e.base), canonicalize(e.exponent))
    if isinstance(e, Exp):
        return make_exp(canonicalize(e.arg))
    if isinstance(e, Ln):
        return make_ln(canonicalize(e.arg))
    if isinstance(e, Sqrt):
        return make_sqrt(canonicalize(e.arg))
    if isinstance(e, Trig):
        return make_trig(e.kind, canonicalize(e.arg))
    if isinstance(e, Hyp):
        return make_hyp(e.kind, canonicalize(e.arg))
    if isinstance(e, ArcTrig):
        return ArcTrig(e.kind, canonicalize(e.arg))
    raise TypeError(f"not an Expr: {e!r}")


# ------------------------------------------------------------------- lexer

FUNCTIONS = {
    "sqrt": ("SQRT", None), "exp": ("EXP", None), "ln": ("LN", None),
    "sin": ("TRIG", "SIN"), "cos": ("TRIG", "COS"), "tan": ("TRIG", "TAN"),
    "sec": ("TRIG", "SEC"), "csc": ("TRIG", "CSC"), "cot": ("TRIG", "COT"),
    "asin": ("ARC", "SIN"), "acos": ("ARC", "COS"), "atan": ("ARC", "TAN"),
    "asec": ("ARC", "SEC"), "acsc": ("ARC", "CSC"), "acot": ("ARC", "COT"),
    "arcsin": ("ARC", "SIN"), "arccos": ("ARC", "COS"), "arctan": ("ARC", "TAN"),
    "sinh": ("HYP", "SINH"), "cosh": ("HYP", "COSH"), "tanh": ("HYP", "TANH"),
}
CONSTANTS = {"pi": PI, "e": E, "i": I}

_TOKEN = re.compile(r"\s*(?:(?P<int>[0-9]+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True, slots=True)
class _Tok:
    kind: str  # INTEGER, NAME, OP, END
    text: str
    offset: int


def _byte_offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


def _lex(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos),
                             {"INTEGER", "identifier", "operator"})
        start = m.start(m.lastgroup)
        tok = m.group(m.lastgroup)
        if m.lastgroup == "name":
            if tok not in FUNCTIONS and tok not in CONSTANTS:
                raise UnknownIdentifier(tok, _byte_offset(text, start))
            toks.append(_Tok("NAME", tok, start))
        elif m.lastgroup == "int":
            toks.append(_Tok("INTEGER", tok, start))
        else:
            toks.append(_Tok("OP", tok, start))
        pos = m.end()
    toks.append(_Tok("END", "", len(text)))
    return toks


_ATOM_START = frozenset({"INTEGER", "(", "pi", "e", "i", "function"})


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.i = 0

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at_op(self, op: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t.kind == "OP" and t.text == op

    def fail(self, expected) -> ParseError:
        t = self.peek()
        what = "end of input" if t.kind == "END" else repr(t.text)
        return ParseError(f"unexpected {what}", _byte_offset(self.text, t.offset), set(expected))

    def expect_op(self, op: str) -> None:
        if not self.at_op(op):
            raise self.fail({op})
        self.i += 1

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek().kind != "END":
            raise self.fail({"+", "-", "*", "/", "^", "end of input"})
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.at_op("+") or self.at_op("-"):
            op = self.peek().text
            self.i += 1
            rhs = self.term()
            e = Add((e, rhs if op == "+" else Mul((MINUS_ONE, rhs))))
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.at_op("*") or self.at_op("/"):
            op = self.peek().text
            self.i += 1
            rhs = self.unary()
            e = Mul((e, rhs if op == "*" else Pow(rhs, MINUS_ONE)))
        return e

    def unary(self) -> Expr:
        if self.at_op("-"):
            self.i += 1
            return Mul((MINUS_ONE, self.unary()))
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.at_op("^"):
            self.i += 1
            return Pow(base, self.unary())
        return base

    def atom(self) -> Expr:
        t = self.peek()
        if t.kind == "INTEGER":
            self.i += 1
            if self.at_op("/") and self.peek(1).kind == "INTEGER":
                den = int(self.peek(1).text)
                if den == 0:
                    raise DomainError("division by literal zero")
                self.i += 2
                return RationalLit(int(t.text), den)
            return RationalLit(int(t.text))
        if t.kind == "NAME":
            self.i += 1
            if t.text in CONSTANTS:
                return CONSTANTS[t.text]
            kind, sub = FUNCTIONS[t.text]
            self.expect_op("(")
            arg = self.expr()
            self.expect_op(")")
            if kind == "SQRT":
                return Sqrt(arg)
            if kind == "EXP":
                return Exp(arg)
            if kind == "LN":
                return Ln(arg)
            if kind == "TRIG":
                return Trig(sub, arg)
            if kind == "ARC":
                return ArcTrig(sub, arg)
            return Hyp(sub, arg)
        if self.at_op("("):
            self.i += 1
            e = self.expr()
            self.expect_op(")")
            return e
        raise self.fail(_ATOM_START | {"-"})


def parse(text: str) -> Expr:
    """Parse ``text`` and return its canonical AST."""
    return canonicalize(_Parser(text).parse())


def parse_raw(text: str) -> Expr:
    """Parse without canonicalizing (desugaring of ``-`` and ``/`` still applies)."""
    return _Parser(text).parse()


# ---------------------------------------------------------------- renderer

_FUNC_NAME = {"SIN": "sin", "COS": "cos", "TAN": "tan", "SEC": "sec", "CSC": "csc", "COT": "cot"}
_ARC_NAME = {k: "a" + v for k, v in _FUNC_NAME.items()}
_CONST_NAME = {"PI": "pi", "E": "e", "I": "i"}

# precedence levels: sum < product < unary minus < power < atom
_P_ADD, _P_MUL, _P_NEG, _P_POW, _P_ATOM = 1, 2, 3, 4, 5


def _is_negative_term(e: Expr) -> bool:
    c, _ = split_coefficient(e)
    return c < 0


def _negate_for_display(e: Expr) -> Expr:
    if isinstance(e, RationalLit):
        return rat(-e.value)
    c, rest = split_coefficient(e)
    if c == -1:
        return rest
    return Mul((rat(-c),) + (rest.children if isinstance(rest, Mul) else (rest,)))


def _prec(e: Expr) -> int:
    if isinstance(e, Add):
        return _P_ADD
    if isinstance(e, RationalLit):
        if e.numerator < 0:
            return _P_NEG
        return _P_ATOM if e.denominator == 1 else _P_MUL
    if isinstance(e, Mul):
        c, _ = split_coefficient(e)
        return _P_NEG if c < 0 else _P_MUL
    if isinstance(e, Pow):
        return _P_MUL if _is_reciprocal(e) else _P_POW
    return _P_ATOM


def _is_reciprocal(e: Expr) -> bool:
    return isinstance(e, Pow) and _is_lit(e.exponent, -1)


def _wrap(e: Expr, min_prec: int, compact: bool) -> str:
    s = _render(e, compact)
    return f"({s})" if _prec(e) < min_prec else s


def _denominator(e: Expr, compact: bool) -> str:
    # "INTEGER/INTEGER" lexes as one rational literal, so a denominator that
    # starts with a digit (e.g. 6^x) needs parentheses
    s = _wrap(e, _P_POW, compact)
    return f"({s})" if s[0].isdigit() else s


def _render(e: Expr, compact: bool) -> str:
    if isinstance(e, RationalLit):
        return str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"
    if isinstance(e, Const):
        return _CONST_NAME[e.kind]
    if isinstance(e, Add):
        plus, minus = ("+", "-") if compact else (" + ", " - ")
        out = _render(e.children[0], compact)
        for t in e.children[1:]:
            if _is_negative_term(t):
                out += minus + _wrap(_negate_for_display(t), _P_MUL, compact)
            else:
                out += plus + _wrap(t, _P_MUL, compact)
        return out
    if isinstance(e, Mul):
        c, _ = split_coefficient(e)
        factors = [f for f in e.children if not isinstance(f, RationalLit)]
        sign = "-" if c < 0 else ""
        c = abs(c)
        nums = [] if c == 1 else [_render(rat(c), compact)]
        dens = []
        for f in factors:
            if _is_reciprocal(f):
                dens.append(_denominator(f.base, compact))
            else:
                nums.append(_wrap(f, _P_POW, compact))
        s = "*".join(nums) if nums else "1"
        for d in dens:
            s += "/" + d
        return sign + s
    if isinstance(e, Pow):
        if _is_reciprocal(e):
            return "1/" + _denominator(e.base, compact)
        base = _render(e.base, compact)
        if _prec(e.base) < _P_ATOM:
            base = f"({base})"
        x = e.exponent
        xs = _render(x, compact)
        if not (_prec(x) == _P_ATOM and not (isinstance(x, RationalLit) and x.numerator < 0)):
            xs = f"({xs})"
        return f"{base}^{xs}"
    if isinstance(e, Exp):
        return f"exp({_render(e.arg, compact)})"
    if isinstance(e, Ln):
        return f"ln({_render(e.arg, compact)})"
    if isinstance(e, Sqrt):
        return f"sqrt({_render(e.arg, compact)})"
    if isinstance(e, Trig):
        return f"{_FUNC_NAME[e.kind]}({_render(e.arg, compact)})"
    if isinstance(e, ArcTrig):
        return f"{_ARC_NAME[e.kind]}({_render(e.arg, compact)})"
    if isinstance(e, Hyp):
        return f"{e.kind.lower()}({_render(e.arg, compact)})"
    raise TypeError(f"not an Expr: {e!r}")


def render(e: Expr, compact: bool = False) -> str:
    """Human-readable text; ``parse(render(e)) == e`` for canonical ``e``."""
    return _render(e, compact)
