"""Ball evaluation, nonvanishing certification and the integer-relation falsifier."""

import random
import re
from fractions import Fraction
from math import factorial

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from arithmos import grammar as g
from arithmos.errors import DomainError, PrecisionExhausted
from arithmos.numeric import Nonzero, certify_nonzero, eval_ball, integer_relation, nonzero_precision


def e_series(terms=80):
    """e as an exact partial sum of 1/k!, with the tail bounded by 2/terms!."""
    s = sum(Fraction(1, factorial(k)) for k in range(terms))
    return s, Fraction(2, factorial(terms))


def test_e_against_exact_series():
    s, tail = e_series()
    b = eval_ball(g.E, 128)
    assert b.radius < Fraction(1, 2**100)
    re, im = b.center_exact
    assert abs(re - s) <= b.radius + tail and im == 0


def _mp_complex(text, dps=80):
    mpmath.mp.dps = dps
    env = {"pi": mpmath.pi, "e": mpmath.e, "i": mpmath.mpc(0, 1), "ln": mpmath.log, "exp": mpmath.exp,
           "sqrt": mpmath.sqrt, "sin": mpmath.sin, "cos": mpmath.cos, "tan": mpmath.tan,
           "atan": mpmath.atan, "asin": mpmath.asin, "acos": mpmath.acos,
           "sinh": mpmath.sinh, "cosh": mpmath.cosh, "tanh": mpmath.tanh}
    env["mpf"] = mpmath.mpf
    # integers become mpf so that 1/3 is not evaluated in double precision
    src = re.sub(r"(\d+)", r"mpf(\1)", text.replace("^", "**"))
    return mpmath.mpc(eval(src, env))


@pytest.mark.parametrize("text", [
    "pi", "exp(pi)", "ln(2)", "sin(1)", "cos(sqrt(2)*pi)", "atan(1/2)/pi", "acos(1/3)",
    "tanh(ln(pi))", "2^sqrt(2)", "ln(-1)", "sqrt(-3)", "(1+i)^(1/3)", "asin(2)", "ln(pi) - pi",
])
def test_balls_contain_mpmath_values(text):
    ref = _mp_complex(text)
    b = eval_ball(g.parse(text), 200)
    re, im = b.center_exact
    err = abs(mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator, mpmath.mpf(im.numerator) / im.denominator) - ref)
    assert err <= float(b.radius) + 1e-70
    assert b.radius < Fraction(1, 2**150)


def test_principal_log_of_minus_one():
    b = eval_ball(g.parse("ln(-1)"), 128)
    re, im = b.center_exact
    assert abs(re) <= b.radius and abs(im - Fraction(str(mpmath.pi))) < Fraction(1, 10**12)


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=-100, max_value=100, max_denominator=100),
       st.fractions(min_value=-100, max_value=100, max_denominator=100))
def test_rational_balls_contain_exact_results(p, q):
    e = g.make_add([g.rat(p), g.make_mul([g.rat(q), g.rat(p)])])
    assert eval_ball(e, 64).contains(p + q * p)


def test_exact_zero_is_inconclusive_not_nonzero():
    e = g.parse("ln(2) + ln(3) - ln(6)")
    assert certify_nonzero(e, 4096) == Nonzero.INCONCLUSIVE
    assert nonzero_precision(e, 4096) is None


def test_tiny_nonzero_needs_more_bits():
    e = g.parse("sqrt(2) - 1414213562373095048801688724209698/(10^33)")
    bits = nonzero_precision(e)
    assert bits is not None and bits >= 128
    assert certify_nonzero(e) == Nonzero.NONZERO
    assert certify_nonzero(g.parse("exp(pi) - pi")) == Nonzero.NONZERO


def test_literal_domain_errors_and_exhaustion():
    with pytest.raises(DomainError):
        eval_ball(g.Ln(g.ZERO), 64)
    # ln of an exact zero hidden behind radicals: the ball always straddles 0
    with pytest.raises(PrecisionExhausted):
        eval_ball(g.parse("ln(sqrt(2)*sqrt(2) - 2)"), 256)


def test_integer_relation_planted():
    rng = random.Random(9)
    for _ in range(10):
        a, b = rng.randint(2, 50), rng.randint(1, 9)
        x = g.make_sqrt(g.rat(a))
        rel = integer_relation([1, eval_ball(x, 512).value, eval_ball(g.make_mul([x, x]), 512).value], 1000)
        if g.make_sqrt(g.rat(a)) == g.rat(int(a ** 0.5)):
            continue
        assert rel is not None
        assert rel[0] + rel[2] * a == 0 and rel[1] == 0


def test_integer_relation_absent_and_precision_guard():
    pi = eval_ball(g.PI, 512).value
    assert integer_relation([1, pi, pi * pi], 1000) is None
    with pytest.raises(PrecisionExhausted):
        integer_relation([1, eval_ball(g.PI, 30).value], 10**9)
