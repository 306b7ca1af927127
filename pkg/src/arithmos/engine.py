"""Classification engine: bottom-up rule application, disjunctive facts, propagation.

Every node of a canonical expression is classified after its children.  All
verdict rules run on the node and their conclusions are intersected.
Disjunctive facts ("at least k of these are transcendental") are collected
and propagated to a fixpoint, after which facts are re-derived against the
refined knowledge base until nothing changes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import grammar as g
from . import rules
from .algebraic import DEFAULT_CAPS, DegreeCapConfig
from .anchors import RULES, anchor_for
from .certificate import Certificate, disjunctive_subject
from .errors import (
    ContradictionError, DegreeCapExceeded, NotAlgebraic, NotFound, PrecisionExhausted,
)
from .numeric import MAX_PRECISION, START_PRECISION, nonzero_precision
from .verdict import (
    ALL_NATURES, CLASS_NATURES, RAT, YES, Conclusion, Verdict, describe_value,
)

log = logging.getLogger(__name__)

__all__ = [
    "EngineConfig", "Fact", "DisjunctiveFact", "KnowledgeBase",
    "classify", "classify_set", "explain", "Verdict", "Conclusion",
]


@dataclass(frozen=True)
class EngineConfig:
    caps: DegreeCapConfig = DEFAULT_CAPS
    start_precision: int = START_PRECISION
    max_precision: int = MAX_PRECISION
    max_iterations: int = 10

    def __post_init__(self):
        if not 0 < self.start_precision <= self.max_precision <= MAX_PRECISION:
            raise ValueError(f"precision must satisfy 0 < start <= ceiling <= {MAX_PRECISION}")


@dataclass
class Fact:
    subject: g.Expr
    conclusion: Conclusion
    certificate: Certificate

    @property
    def verdict(self) -> Verdict:
        return self.conclusion.verdict


@dataclass(frozen=True)
class DisjunctiveFact:
    members: tuple
    at_least: int
    nature_class: str
    certificate: Certificate = field(compare=False, hash=False)

    def __post_init__(self):
        if not 1 <= self.at_least <= len(self.members):
            raise ValueError("at_least must lie between 1 and the number of members")

    @property
    def key(self):
        return (self.members, self.at_least, self.nature_class)


class _Cycle(Exception):
    """A rule asked about an expression whose classification is in progress."""


class KnowledgeBase:
    """Facts keyed by canonical expression, plus disjunctive facts."""

    def __init__(self, config: Optional[EngineConfig] = None, hypothetical: bool = False):
        self.config = config or EngineConfig()
        self.hypothetical = hypothetical
        self.facts: dict[g.Expr, Fact] = {}
        self.disjunctive: dict[tuple, DisjunctiveFact] = {}
        # per propagation run: list of {subject: sorted natures} snapshots
        self.history: list[list[dict]] = []
        self._active: set = set()
        self._pending: list[tuple] = []

    # ---------------------------------------------------------------- access
    def fact(self, e: g.Expr) -> Fact:
        try:
            return self.facts[e]
        except KeyError:
            raise NotFound(g.render(e)) from None

    def disjunctive_for(self, e: g.Expr) -> list[DisjunctiveFact]:
        return [d for d in self.disjunctive.values() if e in d.members]

    def snapshot(self) -> dict:
        return {g.render(e): f.verdict.sorted_natures for e, f in self.facts.items()}

    # --------------------------------------------------------- hypotheticals
    def inject(self, e: g.Expr, verdict: Verdict) -> None:
        """Assume a verdict for e (hypothetical mode only), then propagate."""
        if not self.hypothetical:
            raise PermissionError("fact injection requires a hypothetical knowledge base")
        prior = _Engine(self).fact(e)
        hyp = Certificate(g.render(e), verdict, "HYPOTHESIS", anchor_for("HYPOTHESIS"), {}, ())
        concl = prior.conclusion.meet(Conclusion.from_verdict(verdict))
        cert = _meet_cert(e, concl, [prior.certificate, hyp])
        self.facts[e] = Fact(e, concl, cert)
        _Engine(self).settle()


class _Recorder:
    """Rule context that classifies on demand and records premises."""

    def __init__(self, engine: "_Engine"):
        self.engine = engine
        self.caps = engine.kb.config.caps
        self.premises: list[Certificate] = []
        self._seen: set = set()

    def fact(self, e: g.Expr) -> Conclusion:
        f = self.engine.fact(e)
        if e not in self._seen:
            self._seen.add(e)
            self.premises.append(f.certificate)
        return f.conclusion

    def nonzero_bits(self, e: g.Expr) -> Optional[int]:
        cfg = self.engine.kb.config
        return nonzero_precision(e, cfg.max_precision, cfg.start_precision)


_SKIP = (_Cycle, DegreeCapExceeded, PrecisionExhausted, NotAlgebraic)


def _cert(e: g.Expr, rule: str, concl: Conclusion, evidence: dict, premises) -> Certificate:
    return Certificate(g.render(e), concl.verdict, rule, anchor_for(rule),
                       {**evidence, **concl.annotations()}, tuple(premises))


def _meet_cert(e: g.Expr, concl: Conclusion, certs: list[Certificate]) -> Certificate:
    flat = []
    for c in certs:
        flat.extend(c.premises if c.rule == "MEET" else (c,))
    return Certificate(g.render(e), concl.verdict, "MEET", anchor_for("MEET"), concl.annotations(), tuple(flat))


def _disj_cert(rule: str, out: rules.DisjOutcome, evidence: dict, premises) -> Certificate:
    members = tuple(g.render(m) for m in out.members)
    return Certificate(disjunctive_subject(members), Verdict(CLASS_NATURES[out.nature_class]), rule,
                       anchor_for(rule), evidence, tuple(premises), members, out.at_least, out.nature_class)


class _Engine:
    def __init__(self, kb: KnowledgeBase):
        self.kb = kb

    # ------------------------------------------------------- classification
    def fact(self, e: g.Expr) -> Fact:
        kb = self.kb
        f = kb.facts.get(e)
        if f is not None:
            return f
        if e in kb._active:
            raise _Cycle(g.render(e))
        kb._active.add(e)
        try:
            for c in g.children_of(e):
                self.fact(c)
            concl, cert = self._evaluate(e)
            f = kb.facts[e] = Fact(e, concl, cert)
        finally:
            kb._active.discard(e)
        return f

    def _evaluate(self, e: g.Expr) -> tuple[Conclusion, Certificate]:
        outcomes: list[tuple[Conclusion, Certificate]] = []
        for rid, fn in rules.VERDICT_RULES.items():
            rec = _Recorder(self)
            try:
                out = fn(e, rec)
            except _SKIP as exc:
                log.debug("%s skipped on %s: %s", rid, g.render(e), exc)
                continue
            if out is not None:
                outcomes.append((out.conclusion, _cert(e, rid, out.conclusion, out.evidence, rec.premises)))
        for rid, fn in rules.NODE_DISJ_RULES.items():
            rec = _Recorder(self)
            try:
                out = fn(e, rec)
            except _SKIP:
                continue
            if out is not None:
                ev = {**out.evidence, "source": g.render(e)}
                self.kb._pending.append((out, _disj_cert(rid, out, ev, rec.premises)))
        return self._combine(e, outcomes)

    def _combine(self, e, outcomes) -> tuple[Conclusion, Certificate]:
        if not outcomes:
            concl = Conclusion.unknown()
            return concl, Certificate(g.render(e), concl.verdict, "NO-RULE", anchor_for("NO-RULE"), {}, ())
        acc, chosen = None, []
        for concl, cert in outcomes:
            nxt = concl if acc is None else acc.meet(concl)
            if acc is None or nxt != acc:
                chosen.append(cert)
                acc = nxt
        # a single rule may already say everything the others say
        for concl, cert in outcomes:
            if concl == acc:
                chosen = [cert]
                break
        cert = chosen[0] if len(chosen) == 1 else _meet_cert(e, acc, chosen)
        if acc.zero_or_trans and acc.value is None:
            cfg = self.kb.config
            bits = nonzero_precision(e, cfg.max_precision, cfg.start_precision)
            if bits is not None:
                up = acc.meet(Conclusion(ALL_NATURES, YES))
                cert = Certificate(g.render(e), up.verdict, "R-NZ-UPGRADE", anchor_for("R-NZ-UPGRADE"),
                                   {"nonzero_precision": bits, **up.annotations()}, (cert,))
                acc = up
        return acc, cert

    # ---------------------------------------------------------- disjunctive
    def drain(self) -> list[DisjunctiveFact]:
        added = []
        while self.kb._pending:
            out, cert = self.kb._pending.pop(0)
            for m in out.members:
                try:
                    self.fact(m)
                except _SKIP:
                    pass
            d = DisjunctiveFact(out.members, out.at_least, out.nature_class, cert)
            if d.key in self.kb.disjunctive or self._subsumed(d):
                continue
            self.kb.disjunctive[d.key] = d
            added.append(d)
        return added

    def _subsumed(self, d: DisjunctiveFact) -> bool:
        cls = CLASS_NATURES[d.nature_class]
        inside = sum(1 for m in d.members if m in self.kb.facts and self.kb.facts[m].verdict.natures <= cls)
        return inside >= d.at_least

    def _propagate_once(self) -> bool:
        kb = self.kb
        changed = False
        for d in list(kb.disjunctive.values()):
            cls = CLASS_NATURES[d.nature_class]
            facts = {m: self.fact(m) for m in d.members}
            excluded = [m for m in d.members if not (facts[m].verdict.natures & cls)]
            remaining = [m for m in d.members if m not in excluded]
            if len(remaining) < d.at_least:
                raise ContradictionError(
                    f"{disjunctive_subject([g.render(m) for m in d.members])}: fewer than "
                    f"{d.at_least} members can be {d.nature_class}")
            if len(remaining) != d.at_least:
                continue
            for m in remaining:
                f = kb.facts[m]
                new = f.conclusion.meet(Conclusion(cls))
                if new == f.conclusion:
                    continue
                premises = [d.certificate] + [facts[x].certificate for x in d.members]
                cert = Certificate(g.render(m), new.verdict, "PROP", anchor_for("PROP"),
                                   {"excluded": [g.render(x) for x in excluded], **new.annotations()},
                                   tuple(premises))
                kb.facts[m] = Fact(m, new, cert)
                changed = True
        return changed

    def _rederive(self) -> bool:
        """Re-run the rules on every known fact against the current knowledge base."""
        kb = self.kb
        changed = False
        for e in list(kb.facts):
            prior = kb.facts[e]
            concl, cert = self._evaluate(e)
            merged = prior.conclusion.meet(concl)
            if merged == prior.conclusion:
                continue
            if merged == concl:
                kb.facts[e] = Fact(e, concl, cert)
            else:
                kb.facts[e] = Fact(e, merged, _meet_cert(e, merged, [prior.certificate, cert]))
            changed = True
        return changed

    def settle(self) -> list[list[dict]]:
        """Propagate disjunctive facts and re-derive until nothing changes."""
        kb = self.kb
        self.drain()
        snaps = [kb.snapshot()]
        for _ in range(kb.config.max_iterations):
            changed = self._propagate_once()
            if changed:
                self._rederive()
            changed = self.drain() or changed
            snaps.append(kb.snapshot())
            if not changed:
                break
        else:
            log.warning("propagation stopped after %d iterations", kb.config.max_iterations)
        kb.history.append(snaps)
        return snaps


# --------------------------------------------------------------- public API


def classify(e: g.Expr, kb: Optional[KnowledgeBase] = None) -> tuple[Verdict, Certificate, KnowledgeBase]:
    """Classify a canonical expression; returns (verdict, certificate, knowledge base)."""
    kb = kb if kb is not None else KnowledgeBase()
    eng = _Engine(kb)
    eng.fact(e)
    eng.settle()
    f = kb.facts[e]
    return f.verdict, f.certificate, kb


def _one_of_three_candidates(e: g.Expr) -> list[g.Expr]:
    out = []
    if isinstance(e, g.Add) and g.E in e.children:
        rest = list(e.children)
        rest.remove(g.E)
        out.append(g.make_add(rest))
    if isinstance(e, g.Mul) and g.E in e.children:
        rest = list(e.children)
        rest.remove(g.E)
        out.append(g.make_mul(rest))
    if isinstance(e, g.Ln):
        out.append(e.arg)
    return out


def classify_set(es: Iterable[g.Expr], kb: Optional[KnowledgeBase] = None):
    """Classify several expressions in one knowledge base, firing cross-member rules.

    Returns (facts in input order, disjunctive facts mentioning any member, kb).
    """
    kb = kb if kb is not None else KnowledgeBase()
    eng = _Engine(kb)
    es = list(es)
    for e in es:
        eng.fact(e)
    present = set(es)
    tried = set()
    for e in es:
        for t in _one_of_three_candidates(e):
            if t in tried:
                continue
            tried.add(t)
            members = rules.one_of_three_members(t)
            if sum(1 for m in members if m in present) < 2:
                continue
            rec = _Recorder(eng)
            try:
                out = rules.r_1of3(t, rec)
            except _SKIP:
                continue
            if out is not None:
                kb._pending.append((out, _disj_cert("R-1OF3", out, out.evidence, rec.premises)))
    eng.settle()
    facts = [kb.facts[e] for e in es]
    disj = {d for d in kb.disjunctive.values() if present & set(d.members)}
    return facts, disj, kb


def explain(e: g.Expr, kb: KnowledgeBase) -> Certificate:
    """Certificate for the strongest verdict known about e.

    When nothing definite is known but e belongs to a disjunctive fact, the
    certificate of that fact is returned instead.
    """
    f = kb.fact(e)
    if f.verdict.is_unknown:
        ds = sorted(kb.disjunctive_for(e), key=lambda d: (-d.at_least, d.certificate.subject))
        if ds:
            return ds[0].certificate
    return f.certificate
