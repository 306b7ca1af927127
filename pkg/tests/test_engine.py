import pytest

from arithmos import grammar as g
from arithmos.algebraic import DegreeCapConfig
from arithmos.engine import EngineConfig, KnowledgeBase, classify, classify_set, explain
from arithmos.errors import ContradictionError, NotFound
from arithmos.verdict import ALGIRR, RAT, TRANS, YES, Verdict, describe_value

from corpus import THEOREM_CORPUS, THEOREM_SETS


@pytest.mark.parametrize("text, natures, nonzero, value", THEOREM_CORPUS, ids=[c[0] for c in THEOREM_CORPUS])
def test_theorem_corpus(text, natures, nonzero, value):
    v, cert, kb = classify(g.parse(text))
    if natures is not None:
        assert v.natures == natures
    if nonzero is not None:
        assert v.nonzero == nonzero
    if value is not None:
        assert describe_value(kb.fact(g.parse(text)).conclusion.value) == value


def test_zero_or_transcendental_is_upgraded_by_a_nonzero_ball():
    v, cert, _ = classify(g.parse("ln(2)/ln(3)"))
    assert v.natures == {TRANS}
    v, cert, _ = classify(g.parse("acos(1/3)/pi"))
    assert v.natures == {RAT, TRANS} and v.nonzero == "UNKNOWN"


@pytest.mark.parametrize("texts, k, cls, members", THEOREM_SETS)
def test_disjunctive_sets(texts, k, cls, members):
    facts, disj, kb = classify_set([g.parse(t) for t in texts])
    keys = {(tuple(g.render(m) for m in d.members), d.at_least, d.nature_class) for d in disj}
    assert (tuple(members), k, cls) in keys
    for f in facts:
        assert f.verdict.natures == {RAT, ALGIRR, TRANS}


def test_known_transcendentals_raise_no_disjunction():
    facts, disj, _ = classify_set([g.parse("e + 1"), g.parse("e")])
    assert all(f.verdict.natures == {TRANS} for f in facts)
    assert not any(d.certificate.rule == "R-SUMPROD" for d in disj)


def test_one_of_three_excludes_inverse_e():
    texts = ["exp(-1) + e", "exp(-1)*e", "ln(exp(-1))"]
    _, disj, _ = classify_set([g.parse(t) for t in texts])
    assert not any(d.certificate.rule == "R-1OF3" for d in disj)


def test_explain_returns_disjunctive_certificate_for_unknowns():
    e = g.parse("pi + e")
    _, _, kb = classify(e)
    cert = explain(e, kb)
    assert cert.rule == "R-SUMPROD" and cert.members == ("pi + e", "pi*e")


def test_missing_fact():
    kb = KnowledgeBase()
    with pytest.raises(NotFound):
        kb.fact(g.PI)


def test_hypothetical_injection_propagates():
    kb = KnowledgeBase(hypothetical=True)
    classify_set([g.parse("pi + e"), g.parse("pi*e")], kb)
    kb.inject(g.parse("pi + e"), Verdict.of(RAT))
    assert kb.fact(g.parse("pi*e")).verdict.natures == {TRANS}
    assert kb.fact(g.parse("pi*e")).certificate.rule == "PROP"
    # at least two of {pi+e, pi*e, ln(pi)} are transcendental and pi+e is not
    assert kb.fact(g.parse("ln(pi)")).verdict.natures == {TRANS}


def test_injection_requires_hypothetical_mode():
    kb = KnowledgeBase()
    with pytest.raises(PermissionError):
        kb.inject(g.PI, Verdict.of(RAT))


def test_contradictory_hypotheses():
    kb = KnowledgeBase(hypothetical=True)
    classify_set([g.parse("pi + e"), g.parse("pi*e")], kb)
    kb.inject(g.parse("pi + e"), Verdict.of(RAT))
    with pytest.raises(ContradictionError):
        kb.inject(g.parse("pi*e"), Verdict.of(RAT, ALGIRR))


def test_hypothesis_against_a_theorem_is_a_contradiction():
    kb = KnowledgeBase(hypothetical=True)
    with pytest.raises(ContradictionError):
        kb.inject(g.parse("2^sqrt(2)"), Verdict.of(RAT))


def test_history_is_monotone():
    kb = KnowledgeBase(hypothetical=True)
    classify_set([g.parse("pi + e"), g.parse("pi*e"), g.parse("ln(pi)")], kb)
    kb.inject(g.parse("pi*e"), Verdict.of(RAT, ALGIRR))
    assert kb.history
    for run in kb.history:
        assert len(run) - 1 <= kb.config.max_iterations
        for before, after in zip(run, run[1:]):
            for subject, natures in before.items():
                assert set(after[subject]) <= set(natures)


def test_degree_cap_falls_back_gracefully():
    kb = KnowledgeBase(EngineConfig(caps=DegreeCapConfig(max_degree=8)))
    v, cert, _ = classify(g.parse("sqrt(2) + sqrt(3) + sqrt(5) + sqrt(7)"), kb)
    assert cert.rule != "CL2"
    v, cert, _ = classify(g.parse("sqrt(2) + sqrt(3) + sqrt(5) + sqrt(7)"))
    assert v.natures == {ALGIRR} and cert.rule == "CL2"


def test_config_validation():
    with pytest.raises(ValueError):
        EngineConfig(start_precision=0)
    with pytest.raises(ValueError):
        EngineConfig(start_precision=1 << 17)


def test_algebraic_values_are_exact():
    e = g.parse("sqrt(3 + 2*sqrt(2))")
    v, cert, kb = classify(e)
    assert v == Verdict.of(ALGIRR, nonzero=YES)
    assert kb.fact(e).conclusion.value.minpoly == (-1, -2, 1)
