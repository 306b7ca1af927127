"""Guarded inference rules.

Each rule is a pure function ``rule(e, ctx)`` that inspects the canonical
node ``e`` and returns an :class:`Outcome` (a conclusion about ``e``), a
:class:`DisjOutcome` (a disjunctive fact), or ``None`` when its pattern or
guard does not apply.  Facts about other expressions are obtained only
through ``ctx.fact``, which is how premises get recorded; the same
functions are re-run against recorded premises when a certificate is
replayed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Optional, Protocol

from . import grammar as g
from .algebraic import (
    IMAG_UNIT, AlgebraicNumber, DegreeCapConfig, Independence, add, from_rational, inv, mul, neg,
    multiplicative_dependence, multiplicatively_independent, prime_exponents,
    q_linear_independent_with_one, sign, sqrt_principal, try_eval_algebraic, pow_rational,
)
from .errors import DomainError
from .verdict import (
    ALGIRR, ALL_NATURES, CLASS_IRRATIONAL, CLASS_TRANS, RAT, TRANS, YES, Conclusion, describe_value,
)


class Context(Protocol):
    caps: DegreeCapConfig

    def fact(self, e: g.Expr) -> Conclusion: ...

    def nonzero_bits(self, e: g.Expr) -> Optional[int]: ...


@dataclass
class Outcome:
    conclusion: Conclusion
    evidence: dict = field(default_factory=dict)


@dataclass
class DisjOutcome:
    members: tuple
    at_least: int
    nature_class: str
    evidence: dict = field(default_factory=dict)


ONE = from_rational(1)
ZERO = from_rational(0)


# ------------------------------------------------------------------ helpers


def _val(ctx: Context, e: g.Expr) -> Optional[AlgebraicNumber]:
    return ctx.fact(e).value


def _trans(ctx: Context, e: g.Expr) -> bool:
    return ctx.fact(e).is_trans


def _d(v: AlgebraicNumber) -> str:
    """Short exact description used in evidence."""
    q = v.as_rational()
    if q is not None:
        return str(q)
    lo, hi, ilo, ihi = v.box
    return f"root of {poly_str(v.minpoly)} in [{lo}, {hi}] x [{ilo}, {ihi}]i"


def poly_str(coeffs) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        mag = abs(c)
        body = f"{mag}" if (mag != 1 or k == 0) else ""
        if body and mono:
            body += "*"
        term = body + mono
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append((" - " if c < 0 else " + ") + term)
    return "".join(parts)


def _terms(e: g.Expr) -> tuple:
    return e.children if isinstance(e, g.Add) else (e,)


def _factors(e: g.Expr) -> tuple:
    return e.children if isinstance(e, g.Mul) else (e,)


def _product(vals, caps) -> AlgebraicNumber:
    acc = ONE
    for v in vals:
        acc = mul(acc, v, caps)
    return acc


def _sum(vals, caps) -> AlgebraicNumber:
    acc = ZERO
    for v in vals:
        acc = add(acc, v, caps)
    return acc


def _split(ctx: Context, parts) -> tuple[list, list]:
    alg, other = [], []
    for p in parts:
        (alg if _val(ctx, p) is not None else other).append(p)
    return alg, other


def _alg_coefficient(ctx: Context, factors) -> Optional[AlgebraicNumber]:
    """Exact value of the product of ``factors`` (via one premise), or None."""
    if not factors:
        return ONE
    return _val(ctx, g.make_mul(list(factors)))


def _is_pi_over(e: g.Expr) -> Optional[g.Expr]:
    """If e == X/pi (exactly two factors), return X."""
    if isinstance(e, g.Mul) and len(e.children) == 2 and e.children[1] == g.Pow(g.PI, g.MINUS_ONE):
        return e.children[0]
    return None


def _pi_multiple(ctx: Context, e: g.Expr) -> Optional[AlgebraicNumber]:
    """alpha with e == alpha*pi, alpha ALG; None otherwise."""
    if e == g.PI:
        return ONE
    if isinstance(e, g.Mul):
        fs = list(e.children)
        if fs.count(g.PI) == 1:
            fs.remove(g.PI)
            return _alg_coefficient(ctx, fs)
    return None


def _log_factor(ctx: Context, term: g.Expr):
    """term == beta*ln(alpha) with beta, alpha ALG -> (beta, alpha); else None."""
    fs = list(_factors(term))
    lns = [f for f in fs if isinstance(f, g.Ln)]
    if len(lns) != 1:
        return None
    fs.remove(lns[0])
    alpha = _val(ctx, lns[0].arg)
    if alpha is None:
        return None
    beta = _alg_coefficient(ctx, fs)
    if beta is None:
        return None
    return beta, alpha, lns[0]


# ------------------------------------------------------------ closure rules


def cl1(e, ctx):
    if isinstance(e, g.RationalLit):
        return Outcome(Conclusion.exact(from_rational(e.numerator, e.denominator)))
    return None


def _structurally_algebraic(e: g.Expr) -> bool:
    for s in g.subexpressions(e):
        if isinstance(s, g.Const) and s.kind != "I":
            return False
        if isinstance(s, (g.Exp, g.Ln, g.Trig, g.ArcTrig, g.Hyp)):
            return False
        if isinstance(s, g.Pow) and not isinstance(s.exponent, g.RationalLit):
            return False
    return True


def cl2(e, ctx):
    if isinstance(e, g.RationalLit) or e == g.I or not _structurally_algebraic(e):
        return None
    v = try_eval_algebraic(e, ctx.caps)
    if v is None:
        return None
    return Outcome(Conclusion.exact(v), {"minpoly": poly_str(v.minpoly)})


def cl3(e, ctx):
    """Transcendence is preserved by algebraic shifts, scalings and rational powers."""
    if isinstance(e, g.Add):
        alg, other = _split(ctx, e.children)
        if alg and other:
            rest = g.make_add(other)
            if _trans(ctx, rest):
                a = _val(ctx, g.make_add(alg))
                if a is None:
                    return None
                return Outcome(Conclusion.trans(), {"form": "t + alpha", "t": g.render(rest), "alpha": _d(a)})
    elif isinstance(e, g.Mul):
        alg, other = _split(ctx, e.children)
        if alg and other:
            a = _val(ctx, g.make_mul(alg))
            rest = g.make_mul(other)
            if a is not None and not a.is_zero() and _trans(ctx, rest):
                return Outcome(Conclusion.trans(), {"form": "alpha * t", "t": g.render(rest), "alpha": _d(a)})
    elif isinstance(e, (g.Pow, g.Sqrt)):
        base = e.base if isinstance(e, g.Pow) else e.arg
        r = Fraction(1, 2) if isinstance(e, g.Sqrt) else None
        if r is None:
            xv = _val(ctx, e.exponent)
            r = xv.as_rational() if xv is not None else None
        if r is not None and r != 0 and _trans(ctx, base):
            return Outcome(Conclusion.trans(), {"form": "t^r", "t": g.render(base), "r": str(r)})
    return None


def cl4(e, ctx):
    """Exact value of a field operation (or rational power) on exactly known children."""
    if not isinstance(e, (g.Add, g.Mul, g.Pow, g.Sqrt)) or _structurally_algebraic(e):
        return None
    caps = ctx.caps
    if isinstance(e, g.Mul):
        vals = [_val(ctx, c) for c in e.children]
        zeros = [c for c, v in zip(e.children, vals) if v is not None and v.is_zero()]
        if zeros:
            return Outcome(Conclusion.exact(ZERO), {"op": "MUL", "zero_factor": g.render(zeros[0])})
        if any(v is None for v in vals):
            return None
        return Outcome(Conclusion.exact(_product(vals, caps)), {"op": "MUL"})
    if isinstance(e, g.Add):
        vals = [_val(ctx, c) for c in e.children]
        if any(v is None for v in vals):
            return None
        return Outcome(Conclusion.exact(_sum(vals, caps)), {"op": "ADD"})
    if isinstance(e, g.Sqrt):
        v = _val(ctx, e.arg)
        if v is None:
            return None
        return Outcome(Conclusion.exact(sqrt_principal(v, caps)), {"op": "SQRT"})
    b, x = _val(ctx, e.base), _val(ctx, e.exponent)
    if b is None or x is None or x.as_rational() is None:
        return None
    r = x.as_rational()
    if b.is_zero() and r <= 0:
        raise DomainError("0 raised to a non-positive power")
    return Outcome(Conclusion.exact(pow_rational(b, r, caps)), {"op": "POW", "r": str(r)})


def b1(e, ctx):
    return Outcome(Conclusion.trans()) if e == g.E else None


def b2(e, ctx):
    return Outcome(Conclusion.trans()) if e == g.PI else None


def b3(e, ctx):
    if e == g.I:
        return Outcome(Conclusion.exact(IMAG_UNIT), {"minpoly": "x^2 + 1"})
    return None


# -------------------------------------------------- classical transcendence


def r_hl_exp(e, ctx):
    if isinstance(e, g.Exp):
        a = _val(ctx, e.arg)
        if a is not None and not a.is_zero():
            return Outcome(Conclusion.trans(), {"alpha": _d(a)})
    return None


def r_hl_ln(e, ctx):
    if isinstance(e, g.Ln):
        a = _val(ctx, e.arg)
        if a is not None and not a.is_zero() and a != ONE:
            return Outcome(Conclusion.trans(), {"alpha": _d(a)})
    return None


def _exp_term(ctx, term):
    """term == beta * exp(alpha) with ALG alpha, beta -> (beta, alpha)."""
    alphas, rest = [], []
    for f in _factors(term):
        if f == g.E:
            alphas.append(ONE)
        elif isinstance(f, g.Exp):
            a = _val(ctx, f.arg)
            if a is None:
                return None
            alphas.append(a)
        else:
            rest.append(f)
    if not alphas:
        return None
    beta = _alg_coefficient(ctx, rest)
    if beta is None:
        return None
    return beta, _sum(alphas, ctx.caps)


def r_lw_sum(e, ctx):
    if not isinstance(e, (g.Add, g.Mul, g.Exp)) and e != g.E:
        return None
    pairs = []
    for t in _terms(e):
        p = _exp_term(ctx, t)
        if p is None:
            return None
        pairs.append(p)
    # merge equal exponents
    merged: list[list] = []
    for beta, alpha in pairs:
        for m in merged:
            if m[1] == alpha:
                m[0] = add(m[0], beta, ctx.caps)
                break
        else:
            merged.append([beta, alpha])
    if any(alpha.is_zero() for _, alpha in merged):
        return None
    merged = [m for m in merged if not m[0].is_zero()]
    if not merged:
        return None
    return Outcome(Conclusion.trans(), {"terms": [{"beta": _d(b), "alpha": _d(a)} for b, a in merged]})


def r_lw_trig(e, ctx):
    if (isinstance(e, g.Trig) and e.kind in ("SIN", "COS")) or (isinstance(e, g.Hyp) and e.kind in ("SINH", "COSH")):
        a = _val(ctx, e.arg)
        if a is not None and not a.is_zero():
            return Outcome(Conclusion.trans(), {"alpha": _d(a)})
    return None


def r_gs(e, ctx):
    if isinstance(e, g.Pow):
        a, b = _val(ctx, e.base), _val(ctx, e.exponent)
        if a is None or b is None or a.is_zero() or a == ONE or b.as_rational() is not None:
            return None
        return Outcome(Conclusion.trans(), {"alpha": _d(a), "beta": _d(b)})
    return None


def r_logratio(e, ctx):
    if not (isinstance(e, g.Mul) and len(e.children) == 2):
        return None
    num, den = e.children
    if not (isinstance(num, g.Ln) and isinstance(den, g.Pow) and den.exponent == g.MINUS_ONE
            and isinstance(den.base, g.Ln)):
        return None
    u, v = _val(ctx, num.arg), _val(ctx, den.base.arg)
    if u is None or v is None or u.is_zero() or v.is_zero() or v == ONE:
        return None
    p, q = u.as_rational(), v.as_rational()
    if p is not None and q is not None and p > 0 and q > 0:
        dep = multiplicative_dependence(p, q)
        if dep is None:
            return Outcome(Conclusion.trans(), {"u": str(p), "v": str(q), "dependence": None})
        m, n = dep
        return Outcome(Conclusion.exact(from_rational(n, m)), {"u": str(p), "v": str(q), "dependence": [m, n]})
    return Outcome(Conclusion({RAT, TRANS}), {"u": _d(u), "v": _d(v)})


# ----------------------------------------------------------- inverse trig


_ARC_CONSTRUCTION = {
    "TAN": "z = 1 + x*i",
    "COT": "z = x + i",
    "SIN": "z = sqrt(1 - x^2) + x*i",
    "COS": "z = x + sqrt(1 - x^2)*i",
    "SEC": "z = 1 + sqrt(x^2 - 1)*i",
    "CSC": "z = sqrt(x^2 - 1) + i",
}

@lru_cache(maxsize=None)
def _surd(n: int) -> AlgebraicNumber:
    return sqrt_principal(from_rational(n))


def _cos_pi(r: Fraction) -> Optional[AlgebraicNumber]:
    """Exact cos(r*pi) when the reduced denominator of r is 1, 2, 3, 4 or 6."""
    if r.denominator not in (1, 2, 3, 4, 6):
        return None
    k = int(r * 12) % 24  # r = k/12 (mod 2)
    sign_ = 1
    if k > 12:
        k = 24 - k
    if k > 6:
        k, sign_ = 12 - k, -1
    base = {0: ONE, 2: mul(from_rational(1, 2), _surd(3)), 3: mul(from_rational(1, 2), _surd(2)),
            4: from_rational(1, 2), 6: ZERO}[k]
    return base if sign_ == 1 else neg(base)


def _sin_pi(r: Fraction) -> Optional[AlgebraicNumber]:
    return _cos_pi(Fraction(1, 2) - r)


def trig_pi_value(kind: str, r: Fraction) -> Optional[AlgebraicNumber]:
    """Exact trig(kind)(r*pi) for table denominators; DomainError at poles."""
    c, s = _cos_pi(r), _sin_pi(r)
    if c is None:
        return None
    if kind == "SIN":
        return s
    if kind == "COS":
        return c
    if kind in ("TAN", "SEC") and c.is_zero():
        raise DomainError(f"{kind.lower()} is undefined at {r}*pi")
    if kind in ("COT", "CSC") and s.is_zero():
        raise DomainError(f"{kind.lower()} is undefined at {r}*pi")
    return {"TAN": lambda: mul(s, inv(c)), "SEC": lambda: inv(c),
            "CSC": lambda: inv(s), "COT": lambda: mul(c, inv(s))}[kind]()


# principal ranges of the inverse functions, as r in arctrig(x) = r*pi
_HALF = Fraction(1, 2)
_ARC_RANGE = {
    "SIN": lambda r: -_HALF <= r <= _HALF,
    "COS": lambda r: 0 <= r <= 1,
    "TAN": lambda r: -_HALF < r < _HALF,
    "SEC": lambda r: 0 <= r <= 1 and r != _HALF,
    "CSC": lambda r: -_HALF <= r <= _HALF and r != 0,
    "COT": lambda r: -_HALF < r < _HALF and r != 0,
}
_TABLE_ANGLES = sorted({Fraction(k, 12) for k in range(-12, 13)
                        if Fraction(k, 12).denominator in (1, 2, 3, 4, 6)})


def _in_real_domain(kind: str, x: AlgebraicNumber) -> bool:
    if kind in ("TAN",):
        return True
    if kind == "COT":
        return not x.is_zero()
    s1, s2 = sign(add(x, ONE)), sign(add(x, neg(ONE)))
    inside = s1 >= 0 and s2 <= 0  # -1 <= x <= 1
    if kind in ("SIN", "COS"):
        return inside
    return s1 <= 0 or s2 >= 0  # |x| >= 1


def arc_table_value(kind: str, x: AlgebraicNumber) -> Optional[Fraction]:
    """r with arctrig(x) = r*pi from the exact-angle table, verified exactly."""
    if x.degree > 2:
        return None
    for r in _TABLE_ANGLES:
        if not _ARC_RANGE[kind](r):
            continue
        try:
            v = trig_pi_value(kind, r)
        except DomainError:
            continue
        if v is not None and v == x:
            return r
    return None


def r_arctan(e, ctx):
    inner = _is_pi_over(e)
    if isinstance(inner, g.ArcTrig) and inner.kind == "TAN" and isinstance(inner.arg, g.RationalLit):
        x = inner.arg.value
        if x not in (0, 1, -1):
            return Outcome(Conclusion.trans(), {"x": str(x), "construction": _ARC_CONSTRUCTION["TAN"],
                                                "quotient": "ln(z/|z|)/(i*pi)"})
    return None


def r_arctrig(e, ctx):
    inner = _is_pi_over(e)
    if not isinstance(inner, g.ArcTrig):
        return None
    x = _val(ctx, inner.arg)
    if x is None or not x.is_real() or not _in_real_domain(inner.kind, x):
        return None
    ev = {"x": _d(x), "construction": _ARC_CONSTRUCTION[inner.kind], "quotient": "ln(z/|z|)/(i*pi)"}
    r = arc_table_value(inner.kind, x)
    if r is not None:
        ev["table_angle"] = str(r)
        return Outcome(Conclusion.exact(from_rational(r.numerator, r.denominator)), ev)
    return Outcome(Conclusion({RAT, TRANS}), ev)


def r_trigpi(e, ctx):
    if not isinstance(e, g.Trig):
        return None
    alpha = _pi_multiple(ctx, e.arg)
    if alpha is None:
        return None
    r = alpha.as_rational()
    if r is None:
        return Outcome(Conclusion.trans(), {"alpha": _d(alpha)})
    v = trig_pi_value(e.kind, r)
    if v is not None:
        return Outcome(Conclusion.exact(v), {"alpha": str(r), "table": True})
    # off-table rational multiples are algebraic and never zero (zeros and poles sit on the table)
    return Outcome(Conclusion({RAT, ALGIRR}, YES), {"alpha": str(r), "table": False})


# ------------------------------------------------------------------ Baker


def r_baker_lin(e, ctx):
    if not isinstance(e, g.Add):
        return None
    pairs = []
    for t in e.children:
        lf = _log_factor(ctx, t)
        if lf is not None:
            pairs.append(lf[:2])
            continue
        fs = list(_factors(t))
        if fs.count(g.PI) == 1:  # pi = -i*ln(-1)
            fs.remove(g.PI)
            beta = _alg_coefficient(ctx, fs)
            if beta is None:
                return None
            pairs.append((mul(beta, neg(IMAG_UNIT), ctx.caps), from_rational(-1)))
            continue
        return None
    alphas = [a.as_rational() for _, a in pairs]
    betas = [b.as_rational() for b, _ in pairs]
    terms = [{"beta": _d(b), "alpha": _d(a)} for b, a in pairs]
    if all(a is not None and a > 0 for a in alphas):
        if all(b is not None for b in betas):
            total: dict[int, Fraction] = {}
            for b, a in zip(betas, alphas):
                for p, k in prime_exponents(a).items():
                    total[p] = total.get(p, 0) + b * k
            exps = {str(p): str(k) for p, k in sorted(total.items()) if k != 0}
            if not exps:
                return Outcome(Conclusion.exact(ZERO), {"terms": terms, "exponent_sum": exps})
            return Outcome(Conclusion.trans(), {"terms": terms, "exponent_sum": exps})
        if multiplicatively_independent(alphas) and any(not b.is_zero() for b, _ in pairs):
            return Outcome(Conclusion.trans(), {"terms": terms, "independent": True})
    return Outcome(Conclusion({RAT, TRANS}, zero_or_trans=True), {"terms": terms})


def _power_factor(ctx, f):
    """f == alpha^beta with ALG alpha, beta -> (alpha, beta)."""
    if isinstance(f, g.Pow):
        a, b = _val(ctx, f.base), _val(ctx, f.exponent)
    elif isinstance(f, g.Sqrt):
        a, b = _val(ctx, f.arg), from_rational(1, 2)
    else:
        a, b = _val(ctx, f), ONE
    if a is None or b is None:
        return None
    return a, b


def r_baker_prod(e, ctx):
    if not isinstance(e, g.Mul):
        return None
    b0, powers = [], []
    for f in e.children:
        if f == g.E:
            b0.append(ONE)
        elif isinstance(f, g.Exp):
            a = _val(ctx, f.arg)
            if a is None:
                return None
            b0.append(a)
        else:
            p = _power_factor(ctx, f)
            if p is None or p[0].is_zero() or p[1].is_zero():
                return None
            powers.append(p)
    if not b0 or not powers:
        return None
    beta0 = _sum(b0, ctx.caps)
    if beta0.is_zero():
        return None
    return Outcome(Conclusion.trans(), {"beta0": _d(beta0),
                                        "powers": [{"alpha": _d(a), "beta": _d(b)} for a, b in powers]})


def r_baker_prod2(e, ctx):
    if not isinstance(e, g.Mul):
        return None
    powers = []
    for f in e.children:
        if not isinstance(f, g.Pow):
            return None
        p = _power_factor(ctx, f)
        if p is None or p[0].is_zero() or p[0] == ONE:
            return None
        powers.append(p)
    if q_linear_independent_with_one([b for _, b in powers], ctx.caps) is not Independence.TRUE:
        return None
    return Outcome(Conclusion.trans(), {"powers": [{"alpha": _d(a), "beta": _d(b)} for a, b in powers],
                                        "independence": "TRUE"})


def r_baker_exp(e, ctx):
    if not isinstance(e, g.Exp):
        return None
    alphas, betas = [], []
    for t in _terms(e.arg):
        b = _pi_multiple(ctx, t)
        if b is not None:
            betas.append(b)
            continue
        a = _val(ctx, t)
        if a is None:
            return None
        alphas.append(a)
    if not betas:
        return None
    alpha, beta = _sum(alphas, ctx.caps), _sum(betas, ctx.caps)
    ev = {"alpha": _d(alpha), "beta": _d(beta)}
    if not alpha.is_zero():
        return Outcome(Conclusion.trans(), ev)
    ib = mul(IMAG_UNIT, beta, ctx.caps)
    if ib.as_rational() is None:
        ev["i_beta_rational"] = False
        return Outcome(Conclusion.trans(), ev)
    return None


def r_alnb_pi(e, ctx):
    inner = _is_pi_over(e)
    if not isinstance(inner, g.Add):
        return None
    alg, other = _split(ctx, inner.children)
    if not alg or len(other) != 1:
        return None
    lf = _log_factor(ctx, other[0])
    if lf is None:
        return None
    gamma, beta, _ = lf
    alpha = _val(ctx, g.make_add(alg))
    if alpha is None or alpha.is_zero() or gamma.is_zero() or beta.is_zero():
        return None
    return Outcome(Conclusion.trans(), {"alpha": _d(alpha), "beta": _d(beta), "gamma": _d(gamma)})


# --------------------------------------------------------- disjunctive rules


def _pair(e: g.Expr):
    if isinstance(e, (g.Add, g.Mul)) and len(e.children) == 2:
        return e.children
    return None


def _members(u, v) -> tuple:
    return tuple(sorted({g.make_add([u, v]), g.make_mul([u, v])}, key=g.sort_key))


def r_sumprod(e, ctx):
    p = _pair(e)
    if p is None:
        return None
    u, v = p
    if not (_trans(ctx, u) and _trans(ctx, v)):
        return None
    return DisjOutcome(_members(u, v), 1, CLASS_TRANS, {"u": g.render(u), "v": g.render(v)})


def r_quad(e, ctx):
    p = _pair(e)
    if p is None:
        return None
    u, v = p
    fu, fv = ctx.fact(u), ctx.fact(v)
    if fu.is_trans and fv.is_trans:
        return None  # the sum-or-product rule says more
    if fu.value is not None and fv.value is not None:
        return None  # both exact: nothing disjunctive to say
    for a, fa, b in ((u, fu, v), (v, fv, u)):
        if fa.is_trans:
            return DisjOutcome(_members(u, v), 1, CLASS_IRRATIONAL,
                               {"u": g.render(a), "v": g.render(b), "u_nature": "TRANS"})
        if fa.value is not None and fa.value.degree > 2:
            return DisjOutcome(_members(u, v), 1, CLASS_IRRATIONAL,
                               {"u": g.render(a), "v": g.render(b), "u_degree": fa.value.degree})
    return None


E_INV = g.Exp(g.MINUS_ONE)


def one_of_three_members(t: g.Expr) -> tuple:
    return tuple(sorted({g.make_add([t, g.E]), g.make_mul([t, g.E]), g.make_ln(t)}, key=g.sort_key))


def r_1of3(t, ctx):
    """Applied to the parameter t itself (classify_set supplies candidates)."""
    if t == E_INV or not _trans(ctx, t):
        return None
    # t = 1/e is the excluded case; structural inequality is not enough to rule
    # it out, so also demand a certified nonzero ball for t*e - 1
    bits = ctx.nonzero_bits(g.make_add([g.make_mul([t, g.E]), g.MINUS_ONE]))
    if bits is None:
        return None
    return DisjOutcome(one_of_three_members(t), 2, CLASS_TRANS,
                       {"t": g.render(t), "guard": "t*e - 1 != 0", "nonzero_precision": bits})


# ------------------------------------------------- pairs with exact collapse


def _collect_product(ctx, factors) -> Optional[AlgebraicNumber]:
    """Exact value of a product whose non-algebraic factors cancel as powers of a common base."""
    consts, powers = [], {}
    for f in factors:
        v = _val(ctx, f)
        if v is not None:
            consts.append(v)
            continue
        if isinstance(f, g.Pow) and isinstance(f.exponent, g.RationalLit):
            base, r = f.base, f.exponent.value
        elif isinstance(f, g.Sqrt):
            base, r = f.arg, Fraction(1, 2)
        else:
            base, r = f, Fraction(1)
        powers[base] = powers.get(base, 0) + r
    if any(r != 0 for r in powers.values()):
        return None
    return _product(consts, ctx.caps)


def _collect_sum(ctx, terms) -> Optional[AlgebraicNumber]:
    """Exact value of a sum whose non-algebraic terms cancel as like terms."""
    consts, like = [], {}
    for t in terms:
        v = _val(ctx, t)
        if v is not None:
            consts.append(v)
            continue
        alg, other = _split(ctx, _factors(t))
        c = _alg_coefficient(ctx, alg)
        if c is None:
            return None
        key = g.make_mul(other)
        like[key] = add(like[key], c, ctx.caps) if key in like else c
    if any(not c.is_zero() for c in like.values()):
        return None
    return _sum(consts, ctx.caps)


def r_invt(e, ctx):
    p = _pair(e)
    if p is None:
        return None
    u, v = p
    if _val(ctx, u) is not None or _val(ctx, v) is not None:
        return None
    if not (_trans(ctx, u) or _trans(ctx, v)):
        return None
    if isinstance(e, g.Add):
        prod = _collect_product(ctx, _factors(u) + _factors(v))
        if prod is not None and not prod.is_zero():
            return Outcome(Conclusion.trans(), {"u": g.render(u), "v": g.render(v), "product": _d(prod)})
    else:
        s = _collect_sum(ctx, _terms(u) + _terms(v))
        if s is not None:
            return Outcome(Conclusion.trans(), {"u": g.render(u), "v": g.render(v), "sum": _d(s)})
    return None


# ---------------------------------------------------- functions of logs


def _rational_log(arg: g.Expr):
    """arg == r*ln(t) with rational r != 0 -> (r, t)."""
    if isinstance(arg, g.Ln):
        return Fraction(1), arg.arg
    if isinstance(arg, g.Mul) and len(arg.children) == 2 and isinstance(arg.children[0], g.RationalLit) \
            and isinstance(arg.children[1], g.Ln):
        return arg.children[0].value, arg.children[1].arg
    return None


def _hyp_log(e, ctx, kinds):
    if not (isinstance(e, g.Hyp) and e.kind in kinds):
        return None
    rl = _rational_log(e.arg)
    if rl is None or rl[0] == 0 or not _trans(ctx, rl[1]):
        return None
    return Outcome(Conclusion.trans(), {"r": str(rl[0]), "t": g.render(rl[1])})


def r_cosh(e, ctx):
    out = _hyp_log(e, ctx, ("COSH", "SINH"))
    if out is not None:
        out.evidence["note"] = "1, cosh(r ln t), sinh(r ln t) are linearly independent over the algebraic numbers"
    return out


def r_tanh(e, ctx):
    return _hyp_log(e, ctx, ("TANH",))


def _trig_log(e, ctx, kinds):
    if not (isinstance(e, g.Trig) and e.kind in kinds):
        return None
    lf = _log_factor(ctx, e.arg)
    if lf is None:
        return None
    beta, alpha, _ = lf
    if alpha.is_zero() or alpha == ONE:
        return None
    if mul(IMAG_UNIT, beta, ctx.caps).as_rational() is not None:
        return None
    return Outcome(Conclusion.trans(), {"alpha": _d(alpha), "beta": _d(beta)})


def r_cos_ln(e, ctx):
    return _trig_log(e, ctx, ("COS", "SIN", "SEC", "CSC"))


def r_tan_ln(e, ctx):
    return _trig_log(e, ctx, ("TAN", "COT"))


# ------------------------------------------------------------- ln(pi) vs pi


_LN_PI = g.Ln(g.PI)


def _lnpi_parts(ctx, e):
    """Split e into (coefficient of ln pi, [(c, r)] for c*ln(r), pi coefficient gamma)."""
    q = Fraction(0)
    logs = []
    gammas = []
    for t in _terms(e):
        c, rest = g.split_coefficient(t)
        if rest == _LN_PI:
            q += c
        elif isinstance(rest, g.Ln) and isinstance(rest.arg, g.RationalLit) and rest.arg.value > 0:
            logs.append((c, rest.arg.value))
        else:
            gm = _pi_multiple(ctx, t)
            if gm is None:
                return None
            gammas.append(gm)
    return q, logs, _sum(gammas, ctx.caps)


def r_lnpi(e, ctx):
    if not isinstance(e, g.Add):
        return None
    parts = _lnpi_parts(ctx, e)
    if parts is None:
        return None
    q, logs, gamma = parts
    if not gamma.is_real():
        return None
    for s in (1, -1):
        qs = s * q
        gs = gamma if s == 1 else neg(gamma)
        if qs < 0 or qs.denominator != 1 or any((s * c).denominator != 1 for c, _ in logs):
            continue
        if sign(gs) > 0:
            continue
        g2 = mul(gs, gs, ctx.caps).as_rational()
        if g2 is None or g2.denominator != 1:
            continue
        if qs == 0 and g2 == 0:
            continue
        r = Fraction(1)
        for c, val in logs:
            r *= val ** int(s * c)
        return Outcome(Conclusion(ALL_NATURES, YES),
                       {"sign": s, "q": str(qs), "r": str(r), "p_squared_n": str(g2)})
    return None


def r_lnpi_li(e, ctx):
    if not isinstance(e, g.Add):
        return None
    parts = _lnpi_parts(ctx, e)
    if parts is None:
        return None
    a, logs, gamma = parts
    if logs or not gamma.is_real():
        return None
    g2 = mul(gamma, gamma, ctx.caps).as_rational()
    if g2 is None or (a == 0 and g2 == 0):
        return None
    return Outcome(Conclusion(ALL_NATURES, YES), {"a": str(a), "b_squared_n": str(g2)})


# ------------------------------------------------------------------ registry

VerdictRule = Callable[[g.Expr, Context], Optional[Outcome]]

VERDICT_RULES: dict[str, VerdictRule] = {
    "CL1": cl1, "CL2": cl2, "CL3": cl3, "CL4": cl4, "B1": b1, "B2": b2, "B3": b3,
    "R-HL-EXP": r_hl_exp, "R-HL-LN": r_hl_ln, "R-LW-SUM": r_lw_sum, "R-LW-TRIG": r_lw_trig,
    "R-GS": r_gs, "R-LOGRATIO": r_logratio, "R-ARCTAN": r_arctan, "R-ARCTRIG": r_arctrig,
    "R-TRIGPI": r_trigpi, "R-BAKER-LIN": r_baker_lin, "R-BAKER-PROD": r_baker_prod,
    "R-BAKER-PROD2": r_baker_prod2, "R-BAKER-EXP": r_baker_exp, "R-ALNB-PI": r_alnb_pi,
    "R-INVT": r_invt, "R-COSH": r_cosh, "R-TANH": r_tanh, "R-COS-LN": r_cos_ln, "R-TAN-LN": r_tan_ln,
    "R-LNPI": r_lnpi, "R-LNPI-LI": r_lnpi_li,
}

NODE_DISJ_RULES = {"R-SUMPROD": r_sumprod, "R-QUAD": r_quad}
SET_DISJ_RULES = {"R-1OF3": r_1of3}
DISJ_RULES = {**NODE_DISJ_RULES, **SET_DISJ_RULES}
