import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arithmos import grammar as g
from arithmos.errors import DomainError, ParseError, UnknownIdentifier

from gen import expr_text


def test_literal_folding():
    assert g.parse("1/2 + 1/3") == g.rat(Fraction(5, 6))
    assert g.parse("(2/3)*(9/4)") == g.rat(Fraction(3, 2))
    assert g.parse("2^10") == g.rat(1024)
    assert g.parse("4^(1/2)") == g.rat(2)
    assert g.parse("8^(-2/3)") == g.rat(Fraction(1, 4))


def test_identity_folds():
    assert g.parse("exp(0)") == g.ONE
    assert g.parse("ln(1)") == g.ZERO
    assert g.parse("pi^1") == g.PI
    assert g.parse("5^0") == g.ONE
    assert g.parse("sin(0)") == g.ZERO
    assert g.parse("cos(0)") == g.ONE
    assert g.parse("cosh(0)") == g.ONE


def test_zero_power_of_symbol_is_kept():
    # z^0 = 1 is only folded for literal bases
    e = g.parse("pi^0")
    assert isinstance(e, g.Pow)


def test_add_mul_flatten_and_sort():
    a = g.parse("pi + (e + 1)")
    b = g.parse("1 + e + pi")
    assert a == b
    assert isinstance(a, g.Add) and len(a.children) == 3
    assert g.parse("pi*(e*2)") == g.parse("2*e*pi")


def test_canonical_render():
    assert g.render(g.parse("e+pi")) == "pi + e"
    assert g.render(g.parse("e+pi"), compact=True) == "pi+e"
    assert g.render(g.parse("2^sqrt(2)")) == "2^sqrt(2)"
    assert g.render(g.parse("atan(1/2)/pi")) == "atan(1/2)/pi"


def test_parse_errors_carry_offsets():
    with pytest.raises(ParseError) as ei:
        g.parse("1 + ")
    assert ei.value.offset == 4
    assert "INTEGER" in ei.value.expected
    with pytest.raises(UnknownIdentifier) as ei:
        g.parse("2*foo(1)")
    assert ei.value.offset == 2 and ei.value.name == "foo"
    with pytest.raises(ParseError):
        g.parse("sin 1")
    with pytest.raises(ParseError):
        g.parse("1.5")


def test_offsets_are_bytes():
    # the identifier after a multi-byte character is reported at its UTF-8 byte offset
    with pytest.raises(ParseError) as ei:
        g.parse("1 + é")
    assert ei.value.offset == 4


@pytest.mark.parametrize("text", ["ln(0)", "1/0", "0^(-1)", "2/(1-1)", "ln(1 - 1)"])
def test_domain_errors(text):
    with pytest.raises(DomainError):
        g.parse(text)


def test_integer_slash_integer_is_one_literal():
    # the grammar reads INTEGER/INTEGER as a literal, so 2/6^x is (1/3)^x
    assert g.parse("2/6^pi") == g.parse("(1/3)^pi")
    e = g.parse("pi/(6^e)")
    assert g.parse(g.render(e)) == e


def test_canonicalize_idempotent():
    rng = random.Random(11)
    for _ in range(300):
        try:
            e = g.parse(expr_text(rng, 3))
        except DomainError:
            continue
        assert g.canonicalize(e) == e


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False))
def test_round_trip_property(rnd):
    try:
        e = g.parse(expr_text(rnd, 4))
    except DomainError:
        return
    assert g.parse(g.render(e)) == e
    assert g.parse(g.render(e, compact=True)) == e


def test_subexpressions_children_first():
    e = g.parse("sin(sqrt(2) + 1)")
    subs = list(g.subexpressions(e))
    assert subs[-1] == e
    assert g.parse("sqrt(2)") in subs
