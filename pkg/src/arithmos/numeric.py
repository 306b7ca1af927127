"""Rigorous ball evaluation of expressions (principal branches throughout).

Arb does the heavy lifting; this module maps the expression tree onto acb
operations, escalates precision for nonvanishing proofs and wraps an LLL
relation search whose hits are re-checked in ball arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from flint import acb, arb

from . import grammar as g
from ._arb import arb_interval, arb_to_fraction, fraction_to_arb, precision
from ._lattice import lll_relations
from .errors import DomainError, PrecisionExhausted

START_PRECISION = 64
MAX_PRECISION = 1 << 16


@dataclass(frozen=True)
class ComplexBall:
    """Ball with midpoint ``center`` (acb with exact binary parts) and radius bound.

    Internally Arb keeps separate real and imaginary radii; ``radius`` is an
    upper bound for the Euclidean radius (rad_re + rad_im).
    """

    value: acb

    @property
    def center(self) -> complex:
        return complex(self.value.mid())

    @property
    def center_exact(self) -> tuple[Fraction, Fraction]:
        return arb_to_fraction(self.value.real.mid()), arb_to_fraction(self.value.imag.mid())

    @property
    def radius(self) -> Fraction:
        return arb_to_fraction(self.value.real.rad()) + arb_to_fraction(self.value.imag.rad())

    def excludes_zero(self) -> bool:
        re, im = self.value.real, self.value.imag
        return bool(re > 0 or re < 0 or im > 0 or im < 0)

    def contains(self, x) -> bool:
        """True if the exact value ``x`` (Fraction, int, or (re, im) pair) lies in the ball."""
        if isinstance(x, tuple):
            re, im = Fraction(x[0]), Fraction(x[1])
        else:
            re, im = Fraction(x), Fraction(0)
        rlo, rhi = arb_interval(self.value.real)
        ilo, ihi = arb_interval(self.value.imag)
        return rlo <= re <= rhi and ilo <= im <= ihi

    def overlaps(self, other: "ComplexBall") -> bool:
        a = arb_interval(self.value.real) + arb_interval(self.value.imag)
        b = arb_interval(other.value.real) + arb_interval(other.value.imag)
        return a[0] <= b[1] and b[0] <= a[1] and a[2] <= b[3] and b[2] <= a[3]

    def __str__(self):
        return str(self.value)


def _lit(q: Fraction) -> acb:
    return acb(fraction_to_arb(q))


def _finite(z: acb, what: str) -> acb:
    if not z.is_finite():
        raise PrecisionExhausted(f"{what}: enclosure is not finite at this precision")
    return z


def _log(z: acb) -> acb:
    if z.contains(0):
        raise PrecisionExhausted("ln: argument ball cannot be separated from 0")
    return _finite(z.log(), "ln")


def _pow(b: acb, x: g.Expr, xv: acb) -> acb:
    if isinstance(x, g.RationalLit) and x.denominator == 1:
        n = x.numerator
        if n < 0 and b.contains(0):
            raise PrecisionExhausted("negative power of a ball containing 0")
        return _finite(b ** n, "pow")
    if isinstance(x, g.RationalLit) and b == 0 and x.numerator > 0:
        return acb(0)
    # principal value exp(x * Log b)
    return _finite((xv * _log(b)).exp(), "pow")


def _recip(z: acb, what: str) -> acb:
    if z.contains(0):
        raise PrecisionExhausted(f"{what}: denominator ball contains 0")
    return 1 / z


_TRIG = {
    "SIN": lambda z: z.sin(),
    "COS": lambda z: z.cos(),
    "TAN": lambda z: _recip(z.cos(), "tan") * z.sin(),
    "SEC": lambda z: _recip(z.cos(), "sec"),
    "CSC": lambda z: _recip(z.sin(), "csc"),
    "COT": lambda z: _recip(z.sin(), "cot") * z.cos(),
}
_ARC = {
    "SIN": lambda z: z.asin(),
    "COS": lambda z: z.acos(),
    "TAN": lambda z: z.atan(),
    "SEC": lambda z: _recip(z, "asec").acos(),
    "CSC": lambda z: _recip(z, "acsc").asin(),
    "COT": lambda z: _recip(z, "acot").atan(),
}
_HYP = {
    "SINH": lambda z: z.sinh(),
    "COSH": lambda z: z.cosh(),
    "TANH": lambda z: z.tanh(),
}


def _eval(e: g.Expr, memo: dict) -> acb:
    hit = memo.get(e)
    if hit is not None:
        return hit
    if isinstance(e, g.RationalLit):
        v = _lit(e.value)
    elif isinstance(e, g.Const):
        v = {"PI": lambda: acb.pi(), "E": lambda: acb(1).exp(), "I": lambda: acb(0, 1)}[e.kind]()
    elif isinstance(e, g.Add):
        v = acb(0)
        for c in e.children:
            v = v + _eval(c, memo)
    elif isinstance(e, g.Mul):
        v = acb(1)
        for c in e.children:
            v = v * _eval(c, memo)
    elif isinstance(e, g.Pow):
        if isinstance(e.base, g.RationalLit) and e.base.numerator == 0:
            if isinstance(e.exponent, g.RationalLit) and e.exponent.numerator > 0:
                v = acb(0)
            else:
                raise DomainError("0 raised to a non-positive or non-literal power")
        else:
            v = _pow(_eval(e.base, memo), e.exponent, _eval(e.exponent, memo))
    elif isinstance(e, g.Exp):
        v = _eval(e.arg, memo).exp()
    elif isinstance(e, g.Ln):
        if isinstance(e.arg, g.RationalLit) and e.arg.numerator == 0:
            raise DomainError("ln(0)")
        v = _log(_eval(e.arg, memo))
    elif isinstance(e, g.Sqrt):
        v = _eval(e.arg, memo).sqrt()
    elif isinstance(e, g.Trig):
        v = _TRIG[e.kind](_eval(e.arg, memo))
    elif isinstance(e, g.ArcTrig):
        v = _ARC[e.kind](_eval(e.arg, memo))
    elif isinstance(e, g.Hyp):
        v = _HYP[e.kind](_eval(e.arg, memo))
    else:
        raise TypeError(f"not an expression node: {e!r}")
    v = _finite(v, type(e).__name__)
    memo[e] = v
    return v


def eval_ball(e: g.Expr, precision_bits: int) -> ComplexBall:
    """A ball rigorously containing the principal value of ``e``.

    Raises PrecisionExhausted when a logarithm, reciprocal or branch point
    cannot be resolved at this precision (a wider-precision retry may
    succeed); DomainError only for literal violations such as ln(0).
    """
    if precision_bits <= 0:
        raise ValueError("precision must be positive")
    with precision(precision_bits):
        return ComplexBall(_eval(e, {}))


class Nonzero(str, enum.Enum):
    NONZERO = "NONZERO"
    INCONCLUSIVE = "INCONCLUSIVE"


def excludes_zero_at(e: g.Expr, bits: int) -> bool:
    try:
        return eval_ball(e, bits).excludes_zero()
    except PrecisionExhausted:
        return False


def nonzero_precision(e: g.Expr, max_precision_bits: int = MAX_PRECISION,
                      start_bits: int = START_PRECISION) -> Optional[int]:
    """Smallest precision in the doubling ladder from ``start_bits`` at which e's ball excludes 0."""
    bits = start_bits
    while bits <= max_precision_bits:
        if excludes_zero_at(e, bits):
            return bits
        bits *= 2
    return None


def certify_nonzero(e: g.Expr, max_precision_bits: int = MAX_PRECISION) -> Nonzero:
    """NONZERO iff some ball up to ``max_precision_bits`` excludes 0. Never claims zero."""
    return Nonzero.NONZERO if nonzero_precision(e, max_precision_bits) is not None else Nonzero.INCONCLUSIVE


def _as_arb(v) -> arb:
    if isinstance(v, ComplexBall):
        v = v.value
    if isinstance(v, acb):
        if not v.imag.is_zero():
            raise ValueError("integer_relation expects real balls")
        return v.real
    if isinstance(v, arb):
        return v
    if isinstance(v, (int, Fraction)):
        return fraction_to_arb(Fraction(v))
    raise TypeError(f"cannot interpret {v!r} as a real ball")


def integer_relation(values: Sequence, max_coeff: int) -> Optional[list[int]]:
    """Search for integers c (|c_i| <= max_coeff, not all 0) with sum c_i v_i = 0.

    A hit is reported only if the ball of the residual contains 0.  ``None``
    is no proof of independence.  Raises PrecisionExhausted if the balls
    are too wide for a relation of this height to be detectable.
    """
    if max_coeff <= 0:
        raise ValueError("max_coeff must be positive")
    balls = [_as_arb(v) for v in values]
    n = len(balls)
    if n < 2:
        raise ValueError("need at least two values")
    worst = max((arb_to_fraction(b.rad()) for b in balls), default=Fraction(0))
    magnitude = max(abs(arb_to_fraction(b.mid())) for b in balls) + 1
    # bits available against bits needed to separate relations of this height
    if worst == 0:
        avail = 4096
    else:
        avail = int(math.floor(-math.log2(worst / magnitude)))
    need = n * max(1, max_coeff.bit_length()) + 16
    if avail < need:
        raise PrecisionExhausted(f"balls carry ~{avail} bits, relation search needs {need}")
    scale = avail - 8
    mids = [(arb_to_fraction(b.mid()), Fraction(0)) for b in balls]
    prec = scale + 64
    for cand in lll_relations(mids, scale):
        if max(abs(c) for c in cand) > max_coeff:
            continue
        with precision(prec):
            resid = arb(0)
            for c, b in zip(cand, balls):
                resid += c * b
            ok = resid.contains(0)
        if ok:
            lead = next(c for c in reversed(cand) if c)
            return [c if lead > 0 else -c for c in cand]
    return None
