"""Derivation certificates: construction, JSON/text rendering and independent replay.

Subjects are stored as canonical renderings, so a serialized certificate is
self-contained.  Replay re-parses every subject, re-runs the recorded rule
against the replayed premises and the embedded evidence (for example, the
recorded precision of a nonvanishing proof), and demands that the rebuilt
conclusion and evidence equal the recorded ones.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Optional

from . import grammar as g
from .anchors import RULES, anchor_for
from .errors import ArithmosError, ContradictionError
from .verdict import (
    ALL_NATURES, CLASS_NATURES, RAT, TRANS, ALGIRR, YES, Conclusion, Verdict, value_from_description,
)


@dataclass(frozen=True, eq=False)
class Certificate:
    subject: str
    verdict: Verdict
    rule: str
    anchor: str
    evidence: dict
    premises: tuple = ()
    # present on disjunctive certificates only
    members: Optional[tuple] = None
    at_least: Optional[int] = None
    nature_class: Optional[str] = None

    @property
    def is_disjunctive(self) -> bool:
        return self.members is not None

    def to_dict(self) -> dict:
        d = {
            "subject": self.subject,
            "verdict": self.verdict.to_dict(),
            "rule": self.rule,
            "anchor": self.anchor,
            "evidence": self.evidence,
            "premises": [p.to_dict() for p in self.premises],
        }
        if self.is_disjunctive:
            d["members"] = list(self.members)
            d["at_least"] = self.at_least
            d["class"] = self.nature_class
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(
            subject=d["subject"],
            verdict=Verdict.from_dict(d["verdict"]),
            rule=d["rule"],
            anchor=d["anchor"],
            evidence=d.get("evidence", {}),
            premises=tuple(cls.from_dict(p) for p in d.get("premises", [])),
            members=tuple(d["members"]) if "members" in d else None,
            at_least=d.get("at_least"),
            nature_class=d.get("class"),
        )

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False, indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, Certificate):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(self.to_json())

    def walk(self) -> Iterator["Certificate"]:
        for p in self.premises:
            yield from p.walk()
        yield self

    def rules_used(self) -> list[str]:
        return [c.rule for c in self.walk()]


def disjunctive_subject(members) -> str:
    return "{" + ", ".join(members) + "}"


# ------------------------------------------------------------------- render


def verdict_text(v: Verdict, evidence: Optional[dict] = None) -> str:
    n = v.natures
    evidence = evidence or {}
    if n == {TRANS}:
        return "transcendental"
    if n == {RAT}:
        val = evidence.get("value")
        return f"rational = {val}" if isinstance(val, str) else "rational"
    if n == {ALGIRR}:
        return "algebraic irrational"
    if n == {RAT, ALGIRR}:
        s = "algebraic"
    elif n == {ALGIRR, TRANS}:
        s = "irrational"
    elif n == {RAT, TRANS}:
        s = "rational or transcendental"
        if evidence.get("rat_only_if_zero"):
            s = "zero or transcendental"
    else:
        s = "unknown"
    if v.nonzero == YES and RAT in n:
        s += ", nonzero"
    return s


def _line(c: Certificate) -> str:
    info = RULES.get(c.rule)
    name = info.name if info else "?"
    source = info.source if info else "?"
    if c.is_disjunctive:
        cls = "transcendental" if c.nature_class == "TRANS" else "irrational"
        what = f"at least {c.at_least} of {disjunctive_subject(c.members)} {cls}"
        return f"[{source}]  {c.rule} ({name}): {what}"
    extra = ""
    if "minpoly" in c.evidence and isinstance(c.evidence["minpoly"], str):
        extra = f" [minimal polynomial {c.evidence['minpoly']}]"
    return f"{c.subject}  [{source}]  {c.rule} ({name}){extra}: {verdict_text(c.verdict, c.evidence)}"


def render(c: Certificate, format: str = "TEXT") -> str:
    """TEXT: indented proof sketch, premises above their conclusion.  JSON: stable serialization."""
    if format.upper() == "JSON":
        return c.to_json()
    lines: list[str] = []

    def go(node: Certificate, depth: int):
        for p in node.premises:
            go(p, depth + 1)
        lines.append("  " * depth + _line(node))

    go(c, 0)
    return "\n".join(lines)


# ------------------------------------------------------------------- replay


@dataclass(frozen=True)
class ReplayResult:
    valid: bool
    reason: Optional[str] = None

    def __bool__(self):
        return self.valid

    def __str__(self):
        return "VALID" if self.valid else f"INVALID({self.reason})"


VALID = ReplayResult(True)


class _Invalid(Exception):
    pass


class _ReplayContext:
    def __init__(self, rule: str, premises: dict, evidence: dict, caps):
        self.rule = rule
        self.premises = premises
        self.evidence = evidence
        self.caps = caps
        self.used: list[str] = []

    def fact(self, e):
        s = g.render(e)
        if s not in self.premises:
            raise _Invalid(f"missing premise {s} at {self.rule}")
        if s not in self.used:
            self.used.append(s)
        return self.premises[s]

    def nonzero_bits(self, e):
        from .numeric import excludes_zero_at

        bits = self.evidence.get("nonzero_precision")
        if not isinstance(bits, int) or bits <= 0 or bits > (1 << 16):
            return None
        return bits if excludes_zero_at(e, bits) else None


def _parse_subject(s: str, rule: str):
    try:
        e = g.parse(s)
    except ArithmosError as exc:
        raise _Invalid(f"unparsable subject at {rule}: {exc}")
    if g.render(e) != s:
        raise _Invalid(f"subject is not canonical at {rule}")
    return e


def _check(c: Certificate, verdict: Verdict, evidence: dict, premises_used: Optional[list] = None):
    if verdict != c.verdict:
        raise _Invalid(f"conclusion mismatch at {c.rule}")
    if evidence != c.evidence:
        raise _Invalid(f"evidence mismatch at {c.rule}")
    if premises_used is not None and premises_used != [p.subject for p in c.premises]:
        raise _Invalid(f"premise set mismatch at {c.rule}")


def _replay(c: Certificate, allow_hypotheses: bool, caps) -> Conclusion:
    from . import rules

    if c.rule not in RULES:
        raise _Invalid(f"unknown rule {c.rule}")
    if c.anchor != anchor_for(c.rule):
        raise _Invalid(f"anchor mismatch at {c.rule}")
    replayed = []
    for p in c.premises:
        try:
            replayed.append((p, _replay(p, allow_hypotheses, caps)))
        except _Invalid:
            raise _Invalid(f"premise mismatch at {c.rule}")
    by_subject = {}
    for p, concl in replayed:
        if not p.is_disjunctive:
            by_subject.setdefault(p.subject, concl)

    try:
        return _dispatch(c, replayed, by_subject, allow_hypotheses, caps, rules)
    except _Invalid:
        raise
    except ContradictionError as exc:
        raise _Invalid(f"contradiction at {c.rule}: {exc}")
    except ArithmosError as exc:
        raise _Invalid(f"guard failed at {c.rule}: {exc}")


def _dispatch(c, replayed, by_subject, allow_hypotheses, caps, rules) -> Conclusion:
    rule = c.rule
    if rule in rules.VERDICT_RULES:
        e = _parse_subject(c.subject, rule)
        ctx = _ReplayContext(rule, by_subject, c.evidence, caps)
        out = rules.VERDICT_RULES[rule](e, ctx)
        if out is None:
            raise _Invalid(f"rule did not fire at {rule}")
        concl = out.conclusion
        _check(c, concl.verdict, {**out.evidence, **concl.annotations()}, ctx.used)
        return concl

    if rule in rules.DISJ_RULES:
        src = c.evidence.get("source") if rule in rules.NODE_DISJ_RULES else c.evidence.get("t")
        if not isinstance(src, str):
            raise _Invalid(f"missing source at {rule}")
        e = _parse_subject(src, rule)
        ctx = _ReplayContext(rule, by_subject, c.evidence, caps)
        out = rules.DISJ_RULES[rule](e, ctx)
        if out is None:
            raise _Invalid(f"rule did not fire at {rule}")
        members = tuple(g.render(m) for m in out.members)
        ev = dict(out.evidence)
        if rule in rules.NODE_DISJ_RULES:
            ev["source"] = src
        if (members, out.at_least, out.nature_class) != (c.members, c.at_least, c.nature_class) \
                or c.subject != disjunctive_subject(members):
            raise _Invalid(f"conclusion mismatch at {rule}")
        _check(c, Verdict(CLASS_NATURES[out.nature_class]), ev, ctx.used)
        return Conclusion(CLASS_NATURES[out.nature_class])

    if rule == "NO-RULE":
        if c.premises:
            raise _Invalid("NO-RULE certificate with premises")
        concl = Conclusion.unknown()
        _check(c, concl.verdict, {})
        # a rule that fires without any premise refutes the claim that none applies
        e = _parse_subject(c.subject, rule)
        for rid, fn in rules.VERDICT_RULES.items():
            ctx = _ReplayContext(rid, {}, {}, caps)
            try:
                fired = fn(e, ctx) is not None
            except (_Invalid, ArithmosError):
                fired = False
            if fired:
                raise _Invalid(f"{rid} applies at NO-RULE")
        return concl

    if rule == "HYPOTHESIS":
        if not allow_hypotheses:
            raise _Invalid("hypothesis outside hypothetical mode")
        val = c.evidence.get("value")
        return Conclusion(c.verdict.natures, c.verdict.nonzero,
                          value_from_description(val) if val is not None else None)

    if rule == "MEET":
        if len(replayed) < 2 or any(p.subject != c.subject or p.is_disjunctive for p, _ in replayed):
            raise _Invalid("MEET premises must be conclusions about the same subject")
        concl = replayed[0][1]
        for _, other in replayed[1:]:
            concl = concl.meet(other)
        _check(c, concl.verdict, concl.annotations())
        return concl

    if rule == "R-NZ-UPGRADE":
        from .numeric import excludes_zero_at

        if len(replayed) != 1 or replayed[0][0].subject != c.subject:
            raise _Invalid("R-NZ-UPGRADE needs exactly one premise about the same subject")
        prior = replayed[0][1]
        if not prior.zero_or_trans:
            raise _Invalid("premise mismatch at R-NZ-UPGRADE")
        bits = c.evidence.get("nonzero_precision")
        e = _parse_subject(c.subject, rule)
        if not isinstance(bits, int) or bits > (1 << 16) or not excludes_zero_at(e, bits):
            raise _Invalid("nonzero certification failed at R-NZ-UPGRADE")
        concl = prior.meet(Conclusion(ALL_NATURES, YES))
        _check(c, concl.verdict, {"nonzero_precision": bits, **concl.annotations()})
        return concl

    if rule == "PROP":
        if len(replayed) < 2 or not replayed[0][0].is_disjunctive:
            raise _Invalid("PROP needs a disjunctive premise first")
        d = replayed[0][0]
        members = list(d.members)
        if c.subject not in members:
            raise _Invalid("PROP subject is not a member")
        cls = CLASS_NATURES[d.nature_class]
        facts = {p.subject: concl for p, concl in replayed[1:]}
        if set(facts) != set(members):
            raise _Invalid("PROP premises must cover every member")
        excluded = [m for m in members if not (facts[m].natures & cls)]
        remaining = [m for m in members if m not in excluded]
        if len(remaining) != d.at_least or c.subject not in remaining:
            raise _Invalid("conclusion mismatch at PROP")
        concl = facts[c.subject].meet(Conclusion(cls))
        _check(c, concl.verdict, {"excluded": excluded, **concl.annotations()})
        return concl

    raise _Invalid(f"rule {rule} cannot be replayed")


def replay(c: Certificate, allow_hypotheses: bool = False, caps=None) -> ReplayResult:
    """Re-execute every guard and rule in ``c``; VALID iff all conclusions are reproduced."""
    from .algebraic import DEFAULT_CAPS

    try:
        _replay(c, allow_hypotheses, caps or DEFAULT_CAPS)
    except _Invalid as exc:
        return ReplayResult(False, str(exc))
    except (KeyError, TypeError, ValueError) as exc:
        return ReplayResult(False, f"malformed certificate: {exc}")
    return VALID
