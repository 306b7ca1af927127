"""Exact algebraic numbers: minimal polynomial plus an isolating complex box.

Arithmetic composes minimal polynomials through characteristic polynomials of
Kronecker combinations of companion matrices (equivalently, resultants),
factors the result over the integers and keeps the irreducible factor whose
root is pinned down by refining the operand enclosures.  Zero tests are exact:
a value is zero iff its minimal polynomial is ``x``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Optional, Sequence

from flint import acb, fmpq, fmpq_mat, fmpq_poly, fmpz, fmpz_poly

from . import grammar as g
from ._arb import acb_box, arb_interval, box_contains, boxes_overlap, fraction_to_arb, precision
from ._lattice import lll_relations
from .errors import DegreeCapExceeded, DivisionByZero, DomainError, NotAlgebraic, PrecisionExhausted

__all__ = [
    "DegreeCapConfig", "DEFAULT_CAPS", "AlgebraicNumber", "Independence",
    "from_rational", "field_op", "add", "mul", "neg", "inv", "sqrt_principal", "pow_rational",
    "is_zero", "as_rational", "degree", "is_quadratic", "eval_algebraic", "try_eval_algebraic",
    "multiplicative_dependence", "multiplicatively_independent", "prime_exponents",
    "q_linear_independent_with_one", "sign", "compare",
]

MAX_PRECISION = 1 << 16
Box = tuple  # (re_lo, re_hi, im_lo, im_hi) as Fractions


@dataclass(frozen=True)
class DegreeCapConfig:
    max_degree: int = 24
    max_coeff_bits: int = 4096

    def __post_init__(self):
        if self.max_degree <= 0 or self.max_coeff_bits <= 0:
            raise ValueError("degree and coefficient caps must be positive")

    @property
    def max_intermediate_degree(self) -> int:
        # composed polynomials are factored afterwards, so allow some headroom
        return 6 * self.max_degree


DEFAULT_CAPS = DegreeCapConfig()


# ----------------------------------------------------------- polynomial glue


def _normalize(p) -> tuple[int, ...]:
    """Primitive integer coefficients (lowest degree first) with positive leading coefficient."""
    if isinstance(p, fmpq_poly):
        p = p.numer()
    coeffs = [int(c) for c in p.coeffs()]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial")
    cont = 0
    for c in coeffs:
        cont = gcd(cont, c)
    if coeffs[-1] < 0:
        cont = -cont
    return tuple(c // cont for c in coeffs)


def _check_caps(poly: tuple[int, ...], caps: DegreeCapConfig) -> None:
    if len(poly) - 1 > caps.max_degree:
        raise DegreeCapExceeded(f"degree {len(poly) - 1} exceeds cap {caps.max_degree}")
    bits = max(abs(c).bit_length() for c in poly)
    if bits > caps.max_coeff_bits:
        raise DegreeCapExceeded(f"coefficient size {bits} bits exceeds cap {caps.max_coeff_bits}")


def _eval_fraction(poly: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=8192)
def _roots(poly: tuple[int, ...], prec: int) -> tuple[Box, ...]:
    """Disjoint isolating boxes for all complex roots of a squarefree polynomial.

    Real roots are reported with a degenerate imaginary interval [0, 0].
    """
    if len(poly) == 2:
        q = Fraction(-poly[0], poly[1])
        return ((q, q, Fraction(0), Fraction(0)),)
    with precision(prec):
        roots = fmpz_poly(list(poly)).complex_roots()
        return tuple(acb_box(z) for z, _ in roots)


def _root_acb(poly: tuple[int, ...], prec: int, index: int) -> acb:
    if len(poly) == 2:
        q = Fraction(-poly[0], poly[1])
        return acb(fraction_to_arb(q))
    with precision(prec):
        return fmpz_poly(list(poly)).complex_roots()[index][0]


def _locate(poly: tuple[int, ...], box: Box, start_prec: int = 64) -> tuple[int, int]:
    """(precision, index) at which exactly one root ball of ``poly`` meets ``box``."""
    prec = start_prec
    while prec <= MAX_PRECISION:
        hits = [i for i, rb in enumerate(_roots(poly, prec)) if boxes_overlap(rb, box)]
        if len(hits) == 1:
            return prec, hits[0]
        if not hits:
            raise ValueError("box contains no root of the polynomial")
        prec *= 2
    raise PrecisionExhausted("could not separate roots inside the isolating box")


# ---------------------------------------------------------------- the value


class AlgebraicNumber:
    """An exact algebraic number.

    ``minpoly`` is the primitive irreducible integer polynomial (coefficients
    lowest degree first, positive leading coefficient); ``box`` is a rational
    rectangle (re_lo, re_hi, im_lo, im_hi) isolating one of its roots.
    """

    __slots__ = ("minpoly", "box")

    def __init__(self, minpoly: Iterable[int], box: Iterable):
        self.minpoly = tuple(int(c) for c in minpoly)
        self.box = tuple(Fraction(b) for b in box)

    # --- basic queries
    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    def is_zero(self) -> bool:
        return self.minpoly == (0, 1)

    def as_rational(self) -> Optional[Fraction]:
        if self.degree == 1:
            return Fraction(-self.minpoly[0], self.minpoly[1])
        return None

    def is_quadratic(self) -> bool:
        return self.degree <= 2

    def is_real(self) -> bool:
        return self.box[2] == 0 and self.box[3] == 0

    # --- numerics
    def enclosure(self, prec: int) -> acb:
        """A complex ball containing the value, accurate to roughly ``prec`` bits."""
        q = self.as_rational()
        if q is not None:
            with precision(prec):
                return acb(fraction_to_arb(q))
        p, idx = _locate(self.minpoly, self.box, max(64, prec))
        with precision(p):
            return fmpz_poly(list(self.minpoly)).complex_roots()[idx][0]

    def refine(self, bits: int) -> Box:
        """An isolating box with real and imaginary widths below ``2**-bits``.

        Real roots are refined by exact bisection on sign changes; non-real
        roots by re-isolating at higher working precision.
        """
        width = Fraction(1, 2**bits)
        lo, hi, ilo, ihi = self.box
        if self.degree == 1 or (hi - lo <= width and ihi - ilo <= width):
            return self.box
        if self.is_real():
            f = self.minpoly
            flo = _eval_fraction(f, lo)
            while hi - lo > width:
                mid = (lo + hi) / 2
                fm = _eval_fraction(f, mid)
                if fm == 0:
                    return (mid, mid, Fraction(0), Fraction(0))
                if (fm > 0) == (flo > 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            return (lo, hi, Fraction(0), Fraction(0))
        prec = 2 * bits + 64
        while prec <= MAX_PRECISION:
            p, idx = _locate(self.minpoly, self.box, prec)
            b = _roots(self.minpoly, p)[idx]
            if b[1] - b[0] <= width and b[3] - b[2] <= width:
                return b
            prec *= 2
        raise PrecisionExhausted("refinement precision ceiling reached")

    def validate(self) -> None:
        """Raise ValueError unless minpoly is primitive irreducible and box isolates one root."""
        f = fmpz_poly(list(self.minpoly))
        if self.minpoly[-1] <= 0 or _normalize(f) != self.minpoly:
            raise ValueError("minpoly is not primitive with positive leading coefficient")
        content, factors = f.factor()
        if len(factors) != 1 or factors[0][1] != 1:
            raise ValueError("minpoly is not irreducible")
        prec = 64
        while prec <= MAX_PRECISION:
            rbs = _roots(self.minpoly, prec)
            inside = [rb for rb in rbs if box_contains(self.box, rb)]
            touching = [rb for rb in rbs if boxes_overlap(self.box, rb)]
            if len(inside) == 1 and len(touching) == 1:
                return
            if not touching:
                break
            prec *= 2
        raise ValueError("box does not isolate exactly one root")

    # --- identity
    def __eq__(self, other):
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        if self.minpoly != other.minpoly:
            return False
        if self.degree == 1:
            return True
        prec = 64
        while prec <= MAX_PRECISION:
            rbs = _roots(self.minpoly, prec)
            a = [i for i, rb in enumerate(rbs) if boxes_overlap(rb, self.box)]
            b = [i for i, rb in enumerate(rbs) if boxes_overlap(rb, other.box)]
            if len(a) == 1 and len(b) == 1:
                return a == b
            prec *= 2
        raise PrecisionExhausted("could not compare isolating boxes")

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"AlgebraicNumber(minpoly={list(self.minpoly)}, box={[str(b) for b in self.box]})"

    def to_evidence(self) -> dict:
        return {"minpoly": list(self.minpoly), "box": [str(b) for b in self.box]}

    @classmethod
    def from_evidence(cls, d: dict) -> "AlgebraicNumber":
        return cls(d["minpoly"], [Fraction(b) for b in d["box"]])

    # --- operator sugar (default caps)
    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        return add(self, neg(_coerce(other)))

    def __rsub__(self, other):
        return add(_coerce(other), neg(self))

    def __truediv__(self, other):
        return mul(self, inv(_coerce(other)))

    def __rtruediv__(self, other):
        return mul(_coerce(other), inv(self))


def _coerce(x) -> AlgebraicNumber:
    if isinstance(x, AlgebraicNumber):
        return x
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return from_rational(x.numerator, x.denominator)
    return NotImplemented


def from_rational(p: int, q: int = 1) -> AlgebraicNumber:
    """The rational p/q as an algebraic number with minpoly q*x - p (reduced)."""
    if q == 0:
        raise DivisionByZero("zero denominator")
    v = Fraction(p, q)
    return AlgebraicNumber((-v.numerator, v.denominator), (v, v, Fraction(0), Fraction(0)))


def _from_fraction(v: Fraction) -> AlgebraicNumber:
    return from_rational(v.numerator, v.denominator)


IMAG_UNIT = AlgebraicNumber((1, 0, 1), (0, 0, 1, 1))


# ------------------------------------------------------------ root selection


def _select(poly, target: Callable[[int], acb], caps: DegreeCapConfig) -> AlgebraicNumber:
    """Pick the irreducible factor of ``poly`` and the root that ``target`` encloses."""
    if isinstance(poly, tuple):
        poly = fmpz_poly(list(poly))
    if poly.degree() > caps.max_intermediate_degree:
        raise DegreeCapExceeded(f"intermediate degree {poly.degree()} exceeds {caps.max_intermediate_degree}")
    _, factors = poly.factor()
    candidates = [_normalize(f) for f, _ in factors]
    prec = 64
    while prec <= MAX_PRECISION:
        with precision(prec):
            t = target(prec)
        if not t.is_finite():
            prec *= 2
            continue
        tbox = acb_box(t)
        hits = []
        for f in candidates:
            for rb in _roots(f, prec):
                if boxes_overlap(rb, tbox):
                    hits.append((f, rb))
        if len(hits) == 1:
            f, rb = hits[0]
            _check_caps(f, caps)
            return AlgebraicNumber(f, _compact_box(f, rb, prec))
        if not hits:
            raise ArithmeticError("no candidate root matches the operand enclosure")
        prec *= 2
    raise PrecisionExhausted("could not isolate the result root")


def _round_out(lo: Fraction, hi: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    if lo == hi == 0:
        return lo, hi
    s = 2**bits
    return Fraction(math.floor(lo * s), s), Fraction(math.ceil(hi * s), s)


def _compact_box(poly: tuple[int, ...], box: Box, prec: int) -> Box:
    """Coarsen an isolating box to short dyadic endpoints, keeping it isolating."""
    if len(poly) == 2:
        return box
    others = [rb for rb in _roots(poly, prec) if not boxes_overlap(rb, box)]
    bits = 4
    while bits < prec:
        lo, hi = _round_out(box[0], box[1], bits)
        ilo, ihi = _round_out(box[2], box[3], bits)
        cand = (lo, hi, ilo, ihi)
        if not any(boxes_overlap(rb, cand) for rb in others):
            return cand
        bits *= 2
    return box


def _companion(a: AlgebraicNumber) -> list[list[fmpq]]:
    n = a.degree
    lc = a.minpoly[-1]
    m = [[fmpq(0)] * n for _ in range(n)]
    for i in range(1, n):
        m[i][i - 1] = fmpq(1)
    for i in range(n):
        m[i][n - 1] = fmpq(-a.minpoly[i], lc)
    return m


def _kron(a: list[list], b: list[list]) -> list[list]:
    na, nb = len(a), len(b)
    out = [[fmpq(0)] * (na * nb) for _ in range(na * nb)]
    for i in range(na):
        for j in range(na):
            aij = a[i][j]
            if aij == 0:
                continue
            for k in range(nb):
                for l in range(nb):
                    out[i * nb + k][j * nb + l] = aij * b[k][l]
    return out


def _identity(n: int) -> list[list]:
    return [[fmpq(1) if i == j else fmpq(0) for j in range(n)] for i in range(n)]


def _charpoly(rows: list[list]) -> fmpz_poly:
    n = len(rows)
    m = fmpq_mat(n, n, [x for r in rows for x in r])
    return m.charpoly().numer()


def _guard_degree(da: int, db: int, caps: DegreeCapConfig) -> None:
    if da * db > caps.max_intermediate_degree:
        raise DegreeCapExceeded(f"composed degree {da * db} exceeds {caps.max_intermediate_degree}")


# ---------------------------------------------------------- field operations


def neg(a: AlgebraicNumber) -> AlgebraicNumber:
    poly = tuple(c if i % 2 == 0 else -c for i, c in enumerate(a.minpoly))
    lo, hi, ilo, ihi = a.box
    return AlgebraicNumber(_normalize(fmpz_poly(list(poly))), (-hi, -lo, -ihi, -ilo))


def _shift(a: AlgebraicNumber, q: Fraction) -> AlgebraicNumber:
    """a + q for rational q (minpoly a(x - q))."""
    p = fmpq_poly(list(a.minpoly))(fmpq_poly([fmpq(-q.numerator, q.denominator), 1]))
    lo, hi, ilo, ihi = a.box
    return AlgebraicNumber(_normalize(p), (lo + q, hi + q, ilo, ihi))


def _scale(a: AlgebraicNumber, q: Fraction) -> AlgebraicNumber:
    """a * q for nonzero rational q (minpoly a(x / q))."""
    n = a.degree
    coeffs = [Fraction(c) * q ** (n - i) for i, c in enumerate(a.minpoly)]
    p = fmpq_poly([fmpq(c.numerator, c.denominator) for c in coeffs])
    lo, hi, ilo, ihi = a.box
    if q > 0:
        box = (lo * q, hi * q, ilo * q, ihi * q)
    else:
        box = (hi * q, lo * q, ihi * q, ilo * q)
    return AlgebraicNumber(_normalize(p), box)


def add(a: AlgebraicNumber, b: AlgebraicNumber, caps: DegreeCapConfig = DEFAULT_CAPS) -> AlgebraicNumber:
    qa, qb = a.as_rational(), b.as_rational()
    if qa is not None and qb is not None:
        return _from_fraction(qa + qb)
    if qb is not None:
        return _shift(a, qb)
    if qa is not None:
        return _shift(b, qa)
    _guard_degree(a.degree, b.degree, caps)
    ca, cb = _companion(a), _companion(b)
    m = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(_kron(ca, _identity(b.degree)), _kron(_identity(a.degree), cb))]
    return _select(_charpoly(m), lambda p: a.enclosure(p) + b.enclosure(p), caps)


def mul(a: AlgebraicNumber, b: AlgebraicNumber, caps: DegreeCapConfig = DEFAULT_CAPS) -> AlgebraicNumber:
    qa, qb = a.as_rational(), b.as_rational()
    if qa is not None and qb is not None:
        return _from_fraction(qa * qb)
    if qa is not None:
        a, b, qa, qb = b, a, qb, qa
    if qb is not None:
        if qb == 0:
            return from_rational(0)
        return _scale(a, qb)
    _guard_degree(a.degree, b.degree, caps)
    m = _kron(_companion(a), _companion(b))
    return _select(_charpoly(m), lambda p: a.enclosure(p) * b.enclosure(p), caps)


def inv(a: AlgebraicNumber, caps: DegreeCapConfig = DEFAULT_CAPS) -> AlgebraicNumber:
    if a.is_zero():
        raise DivisionByZero("inverse of zero")
    q = a.as_rational()
    if q is not None:
        return _from_fraction(1 / q)
    rev = fmpz_poly(list(reversed(a.minpoly)))
    return _select(rev, lambda p: 1 / a.enclosure(p), caps)


class FieldOp(str, enum.Enum):
    ADD = "ADD"
    MUL = "MUL"
    NEG = "NEG"
    INV = "INV"


def field_op(op: str | FieldOp, a: AlgebraicNumber, b: Optional[AlgebraicNumber] = None,
             caps: DegreeCapConfig = DEFAULT_CAPS) -> AlgebraicNumber:
    op = FieldOp(op)
    if op is FieldOp.ADD:
        return add(a, b, caps)
    if op is FieldOp.MUL:
        return mul(a, b, caps)
    if op is FieldOp.NEG:
        return neg(a)
    return inv(a, caps)


def _principal_sqrt(z: acb) -> acb:
    return z.sqrt()


def sqrt_principal(a: AlgebraicNumber, caps: DegreeCapConfig = DEFAULT_CAPS) -> AlgebraicNumber:
    """Principal square root: nonnegative real part, nonnegative imaginary part on the cut."""
    if a.is_zero():
        return a
    q = a.as_rational()
    if q is not None and q > 0:
        r = g._exact_root(q, 2)
        if r is not None:
            return _from_fraction(r)
    if 2 * a.degree > caps.max_intermediate_degree:
        raise DegreeCapExceeded("square root degree exceeds cap")
    poly = [0] * (2 * a.degree + 1)
    for i, c in enumerate(a.minpoly):
        poly[2 * i] = c
    return _select(fmpz_poly(poly), lambda p: _principal_sqrt(a.enclosure(p)), caps)


def _int_power(a: AlgebraicNumber, n: int, caps: DegreeCapConfig) -> AlgebraicNumber:
    if n == 0:
        return from_rational(1)
    if n < 0:
        return _int_power(inv(a, caps), -n, caps)
    q = a.as_rational()
    if q is not None:
        return _from_fraction(q**n)
    c = fmpq_mat(a.degree, a.degree, [x for r in _companion(a) for x in r])
    cn = c**n
    return _select(cn.charpoly().numer(), lambda p: a.enclosure(p) ** n, caps)


def pow_rational(a: AlgebraicNumber, r: Fraction, caps: DegreeCapConfig = DEFAULT_CAPS) -> AlgebraicNumber:
    """Principal value a**r = exp(r * Log a) for rational r."""
    r = Fraction(r)
    if a.is_zero():
        if r < 0:
            raise DivisionByZero("zero to a negative power")
        if r == 0:
            raise DomainError("0^0 is undefined")
        return a
    if r.denominator == 1:
        return _int_power(a, int(r), caps)
    if r == Fraction(1, 2):
        return sqrt_principal(a, caps)
    b = _int_power(a, r.numerator, caps)
    qd = r.denominator
    if qd * b.degree > caps.max_intermediate_degree:
        raise DegreeCapExceeded("rational power degree exceeds cap")
    poly = [0] * (qd * b.degree + 1)
    for i, c in enumerate(b.minpoly):
        poly[qd * i] = c
    fr = fmpq(r.numerator, r.denominator)
    return _select(fmpz_poly(poly), lambda p: (a.enclosure(p).log() * fr).exp(), caps)


def is_zero(a: AlgebraicNumber) -> bool:
    return a.is_zero()


def as_rational(a: AlgebraicNumber) -> Optional[Fraction]:
    return a.as_rational()


def degree(a: AlgebraicNumber) -> int:
    return a.degree


def is_quadratic(a: AlgebraicNumber) -> bool:
    return a.is_quadratic()


def sign(a: AlgebraicNumber) -> int:
    """Sign of a real algebraic number (exact)."""
    if not a.is_real():
        raise ValueError("sign of a non-real algebraic number")
    q = a.as_rational()
    if q is not None:
        return (q > 0) - (q < 0)
    bits = 8
    while True:
        lo, hi, _, _ = a.refine(bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2


def compare(a: AlgebraicNumber, b: AlgebraicNumber, caps: DegreeCapConfig = DEFAULT_CAPS) -> int:
    return sign(add(a, neg(b), caps))


# ---------------------------------------------------------- expression eval


@lru_cache(maxsize=16384)
def eval_algebraic(e: g.Expr, caps: DegreeCapConfig = DEFAULT_CAPS) -> AlgebraicNumber:
    """Exact value of a structurally algebraic expression.

    Raises NotAlgebraic for expressions involving e, pi, exp, ln, trig,
    inverse trig or hyperbolic nodes, or non-literal exponents, and
    DegreeCapExceeded when the caps are hit.
    """
    if isinstance(e, g.RationalLit):
        return from_rational(e.numerator, e.denominator)
    if isinstance(e, g.Const):
        if e.kind == "I":
            return IMAG_UNIT
        raise NotAlgebraic(f"{e.kind.lower()} is not structurally algebraic")
    if isinstance(e, g.Add):
        acc = eval_algebraic(e.children[0], caps)
        for c in e.children[1:]:
            acc = add(acc, eval_algebraic(c, caps), caps)
        return acc
    if isinstance(e, g.Mul):
        vals = [eval_algebraic(c, caps) for c in e.children]
        acc = vals[0]
        for v in vals[1:]:
            acc = mul(acc, v, caps)
        return acc
    if isinstance(e, g.Sqrt):
        return sqrt_principal(eval_algebraic(e.arg, caps), caps)
    if isinstance(e, g.Pow):
        if not isinstance(e.exponent, g.RationalLit):
            raise NotAlgebraic("non-literal exponent")
        return pow_rational(eval_algebraic(e.base, caps), e.exponent.value, caps)
    raise NotAlgebraic(f"{type(e).__name__} node is not structurally algebraic")


def try_eval_algebraic(e: g.Expr, caps: DegreeCapConfig = DEFAULT_CAPS) -> Optional[AlgebraicNumber]:
    """Like eval_algebraic but returns None when ineligible or over the caps."""
    try:
        return eval_algebraic(e, caps)
    except (NotAlgebraic, DegreeCapExceeded):
        return None


# ------------------------------------------------ multiplicative dependence


def prime_exponents(q: Fraction) -> dict[int, int]:
    """Prime factorisation of a positive rational as {prime: exponent}."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("prime exponents need a positive rational")
    out: dict[int, int] = {}
    for part, s in ((q.numerator, 1), (q.denominator, -1)):
        if part > 1:
            for p, k in fmpz(part).factor():
                out[int(p)] = out.get(int(p), 0) + s * int(k)
    return out


def multiplicative_dependence(p: Fraction, q: Fraction) -> Optional[tuple[int, int]]:
    """(m, n) != (0, 0) with p**m == q**n, or None when p, q are multiplicatively independent."""
    p, q = Fraction(p), Fraction(q)
    if p <= 0 or q <= 0:
        raise ValueError("multiplicative_dependence needs positive rationals")
    if p == 1:
        return (1, 0)
    if q == 1:
        return (0, 1)
    u, w = prime_exponents(p), prime_exponents(q)
    if set(u) != set(w):
        return None
    primes = sorted(u)
    i = primes[0]
    gg = gcd(abs(u[i]), abs(w[i]))
    m, n = w[i] // gg, u[i] // gg
    if m < 0:
        m, n = -m, -n
    if all(m * u[pr] == n * w[pr] for pr in primes):
        return (m, n)
    return None


def multiplicatively_independent(values: Sequence[Fraction]) -> bool:
    """True iff the prime-exponent vectors of the positive rationals are linearly independent."""
    vecs = [prime_exponents(v) for v in values]
    primes = sorted({p for v in vecs for p in v})
    if not primes:
        return False
    rows = [[fmpq(v.get(p, 0)) for p in primes] for v in vecs]
    m = fmpq_mat(len(rows), len(primes), [x for r in rows for x in r])
    return m.rank() == len(values)


# ------------------------------------------------ Q-linear independence


class Independence(str, enum.Enum):
    TRUE = "TRUE"
    FALSE = "FALSE"
    INCONCLUSIVE = "INCONCLUSIVE"


def _values_for_lattice(zs: list[acb]) -> list[tuple[Fraction, Fraction]]:
    out = []
    for z in zs:
        lo, hi = arb_interval(z.real)
        ilo, ihi = arb_interval(z.imag)
        out.append(((lo + hi) / 2, (ilo + ihi) / 2))
    return out


def _integer_dependence(betas: list[AlgebraicNumber], caps: DegreeCapConfig) -> bool:
    """Search for and exactly verify c0 + sum c_k beta_k = 0 with small integers."""
    for prec in (128, 256, 512):
        with precision(prec + 32):
            zs = [acb(1)] + [b.enclosure(prec + 32) for b in betas]
        for cand in lll_relations(_values_for_lattice(zs), prec - 16)[:2]:
            if max(abs(c) for c in cand) > 2**20:
                continue
            try:
                acc = from_rational(cand[0])
                for c, b in zip(cand[1:], betas):
                    if c:
                        acc = add(acc, mul(from_rational(c), b, caps), caps)
            except DegreeCapExceeded:
                continue
            if acc.is_zero():
                return True
    return False


def _poly_value(coeffs: list[Fraction], theta: acb) -> acb:
    acc = acb(0)
    for c in reversed(coeffs):
        acc = acc * theta + fraction_to_arb(c)
    return acc


def _coordinates(beta: AlgebraicNumber, theta: AlgebraicNumber) -> Optional[list[Fraction]]:
    """Coefficients g with beta = g(theta), verified exactly, or None."""
    d = theta.degree
    mtheta = fmpq_poly(list(theta.minpoly))
    mbeta = fmpq_poly(list(beta.minpoly))
    for prec in (64 * (d + 1), 128 * (d + 1), 256 * (d + 1)):
        work = prec + 64
        with precision(work):
            t = theta.enclosure(work)
            powers = [acb(1)]
            for _ in range(d - 1):
                powers.append(powers[-1] * t)
            zs = [beta.enclosure(work)] + powers
        for cand in lll_relations(_values_for_lattice(zs), prec)[:3]:
            if cand[0] == 0:
                continue
            coeffs = [Fraction(-c, cand[0]) for c in cand[1:]]
            gpoly = fmpq_poly([fmpq(c.numerator, c.denominator) for c in coeffs])
            if mbeta(gpoly) % mtheta != 0:
                continue
            # g(theta) is a conjugate of beta; the isolating box pins it to beta
            with precision(work):
                val = _poly_value(coeffs, theta.enclosure(work))
            if box_contains(beta.box, acb_box(val)) or _same_root(beta, acb_box(val)):
                return coeffs
    return None


def _same_root(beta: AlgebraicNumber, vbox: Box) -> bool:
    prec = 64
    while prec <= 4096:
        rbs = _roots(beta.minpoly, prec)
        hits = [i for i, rb in enumerate(rbs) if boxes_overlap(rb, vbox)]
        mine = [i for i, rb in enumerate(rbs) if boxes_overlap(rb, beta.box)]
        if len(hits) == 1 and len(mine) == 1:
            return hits == mine
        prec *= 2
    return False


def q_linear_independent_with_one(betas: Sequence[AlgebraicNumber],
                                  caps: DegreeCapConfig = DEFAULT_CAPS) -> Independence:
    """Decide whether 1, beta_1, ..., beta_n are linearly independent over Q.

    Dependence is certified by an exactly verified integer relation.
    Independence is certified by expressing every beta_k in a common
    primitive element theta (exactly verified) and computing the rank of the
    coordinate matrix.  INCONCLUSIVE when neither succeeds within the caps.
    """
    betas = list(betas)
    if not betas:
        raise ValueError("need at least one number")
    if any(b.as_rational() is not None for b in betas):
        return Independence.FALSE
    for i in range(len(betas)):
        for j in range(i):
            if betas[i] == betas[j]:
                return Independence.FALSE
    if len(betas) == 1:
        return Independence.TRUE
    try:
        if _integer_dependence(betas, caps):
            return Independence.FALSE
    except (DegreeCapExceeded, PrecisionExhausted):
        return Independence.INCONCLUSIVE
    for c in range(1, 5):
        try:
            theta = betas[0]
            for k, b in enumerate(betas[1:], start=1):
                theta = add(theta, mul(from_rational(c**k), b, caps), caps)
        except (DegreeCapExceeded, PrecisionExhausted):
            return Independence.INCONCLUSIVE
        coords = []
        for b in betas:
            cb = _coordinates(b, theta)
            if cb is None:
                break
            coords.append(cb)
        else:
            d = theta.degree
            rows = [[Fraction(1)] + [Fraction(0)] * (d - 1)] + [cb + [Fraction(0)] * (d - len(cb)) for cb in coords]
            m = fmpq_mat(len(rows), d, [fmpq(x.numerator, x.denominator) for r in rows for x in r])
            return Independence.TRUE if m.rank() == len(rows) else Independence.FALSE
    return Independence.INCONCLUSIVE
