import random

import pytest

from arithmos import grammar as g
from arithmos.anchors import RULES
from arithmos.certificate import Certificate, render, replay
from arithmos.engine import KnowledgeBase, classify, classify_set
from arithmos.verdict import RAT, Verdict

from corpus import EXTRA_CORPUS, THEOREM_CORPUS, ZERO_IDENTITIES
from gen import mutate_certificate


def cert_of(text):
    return classify(g.parse(text))[1]


def all_certificates():
    out = [cert_of(t) for t, *_ in THEOREM_CORPUS]
    out += [cert_of(t) for t in EXTRA_CORPUS + ZERO_IDENTITIES]
    facts, disj, _ = classify_set([g.parse(t) for t in ("pi + e", "pi*e", "ln(pi)")])
    out += [f.certificate for f in facts] + [d.certificate for d in disj]
    return out


CERTS = all_certificates()


@pytest.mark.parametrize("cert", CERTS, ids=[c.subject for c in CERTS])
def test_replay_valid(cert):
    result = replay(cert)
    assert result.valid, str(result)
    assert str(result) == "VALID"


def test_json_round_trip():
    for c in CERTS:
        again = Certificate.from_json(c.to_json())
        assert again == c
        assert again.to_json() == c.to_json()
        assert replay(again).valid


def test_text_rendering_lists_premises_first():
    text = render(cert_of("2^sqrt(2)"))
    lines = text.splitlines()
    assert len(lines) == 3
    assert lines[-1].startswith("2^sqrt(2)  [Lemma 3]  R-GS (Gelfond–Schneider)")
    assert lines[0].startswith("  ")
    assert render(cert_of("2^sqrt(2)"), "JSON") == cert_of("2^sqrt(2)").to_json()


def test_anchors_come_from_catalog():
    for c in CERTS:
        for node in c.walk():
            assert node.anchor == RULES[node.rule].anchor


def _tamper(cert, fn):
    d = cert.to_dict()
    fn(d)
    return Certificate.from_dict(d)


def test_premise_tampering_is_reported():
    c = cert_of("2^sqrt(2)")
    bad = _tamper(c, lambda d: d["premises"][1]["verdict"].update(natures=["TRANS"]))
    r = replay(bad)
    assert not r.valid and r.reason == "premise mismatch at R-GS"


def test_conclusion_tampering_is_reported():
    c = cert_of("2^sqrt(2)")
    bad = _tamper(c, lambda d: d["verdict"].update(natures=["RAT", "TRANS"], nonzero="UNKNOWN"))
    assert str(replay(bad)) == "INVALID(conclusion mismatch at R-GS)"


def test_forged_nonzero_precision_is_rejected():
    c = cert_of("ln(pi) - pi")
    assert c.rule == "R-LNPI"
    d = c.to_dict()
    d["rule"], d["anchor"] = "R-LNPI-LI", RULES["R-LNPI-LI"].anchor
    assert not replay(Certificate.from_dict(d)).valid


def test_randomized_mutations_are_all_invalid():
    rng = random.Random(17)
    for _ in range(400):
        c = rng.choice(CERTS)
        desc, m = mutate_certificate(c.to_dict(), rng, kinds=(
            "verdict", "nonzero", "rule", "evidence", "drop-premise", "swap-premise"))
        assert not replay(Certificate.from_dict(m)).valid, (c.subject, desc)


def test_no_rule_claim_refuted_by_premise_free_rules():
    c = cert_of("pi + e")
    assert c.rule == "NO-RULE"
    for subject in ("2", "sqrt(2)", "pi", "e"):
        forged = _tamper(c, lambda d: d.update(subject=subject))
        assert not replay(forged).valid


def test_no_rule_on_subject_needing_premises_is_vacuous():
    # "nothing is known about ln(3)" is weaker than the truth, hence not refutable
    # without premises; replay accepts it (a sound, if useless, certificate)
    forged = _tamper(cert_of("pi + e"), lambda d: d.update(subject="ln(3)"))
    assert replay(forged).valid


def test_hypothesis_certificates_need_opt_in():
    kb = KnowledgeBase(hypothetical=True)
    classify_set([g.parse("pi + e"), g.parse("pi*e")], kb)
    kb.inject(g.parse("pi + e"), Verdict.of(RAT))
    prop = kb.fact(g.parse("pi*e")).certificate
    assert prop.rule == "PROP"
    assert not replay(prop).valid
    assert replay(prop, allow_hypotheses=True).valid


def test_rules_used():
    c = cert_of("exp(1 + pi)")
    assert "R-BAKER-EXP" in c.rules_used()
