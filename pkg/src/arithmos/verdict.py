"""Verdict lattice and rule conclusions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .algebraic import AlgebraicNumber, from_rational
from .errors import ContradictionError

RAT, ALGIRR, TRANS = "RAT", "ALGIRR", "TRANS"
NATURE_ORDER = (RAT, ALGIRR, TRANS)
YES, UNKNOWN = "YES", "UNKNOWN"

# nature classes of disjunctive facts
CLASS_TRANS = "TRANS"
CLASS_IRRATIONAL = "IRRATIONAL"
CLASS_NATURES = {CLASS_TRANS: frozenset({TRANS}), CLASS_IRRATIONAL: frozenset({ALGIRR, TRANS})}


@dataclass(frozen=True)
class Verdict:
    natures: frozenset
    nonzero: str = UNKNOWN

    def __post_init__(self):
        natures = frozenset(self.natures)
        if not natures:
            raise ContradictionError("empty verdict")
        if not natures <= set(NATURE_ORDER):
            raise ValueError(f"unknown natures {set(natures) - set(NATURE_ORDER)}")
        if self.nonzero not in (YES, UNKNOWN):
            raise ValueError(f"bad nonzero flag {self.nonzero!r}")
        object.__setattr__(self, "natures", natures)
        # irrational numbers are never zero
        if RAT not in natures and self.nonzero != YES:
            object.__setattr__(self, "nonzero", YES)

    @classmethod
    def of(cls, *natures: str, nonzero: str = UNKNOWN) -> "Verdict":
        return cls(frozenset(natures), nonzero)

    @property
    def sorted_natures(self) -> list[str]:
        return [n for n in NATURE_ORDER if n in self.natures]

    def meet(self, other: "Verdict") -> "Verdict":
        both = self.natures & other.natures
        if not both:
            raise ContradictionError(f"verdicts {self.sorted_natures} and {other.sorted_natures} are incompatible")
        nz = YES if YES in (self.nonzero, other.nonzero) else UNKNOWN
        return Verdict(both, nz)

    def refines(self, other: "Verdict") -> bool:
        return self.natures <= other.natures and (other.nonzero == UNKNOWN or self.nonzero == YES)

    @property
    def is_unknown(self) -> bool:
        return self.natures == ALL_NATURES and self.nonzero == UNKNOWN

    def to_dict(self) -> dict:
        return {"natures": self.sorted_natures, "nonzero": self.nonzero}

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        return cls(frozenset(d["natures"]), d["nonzero"])


ALL_NATURES = frozenset(NATURE_ORDER)
UNKNOWN_VERDICT = Verdict(ALL_NATURES)


def _value_nature(v: AlgebraicNumber) -> str:
    return RAT if v.as_rational() is not None else ALGIRR


class Conclusion:
    """A verdict plus what is known exactly: an algebraic value, or that RAT means 0."""

    __slots__ = ("verdict", "value", "zero_or_trans")

    def __init__(self, natures: Iterable[str], nonzero: str = UNKNOWN,
                 value: Optional[AlgebraicNumber] = None, zero_or_trans: bool = False):
        natures = frozenset(natures)
        if value is not None:
            natures &= {_value_nature(value)}
            if not natures:
                raise ContradictionError("exact value contradicts the verdict")
            if not value.is_zero():
                nonzero = YES
            elif nonzero == YES:
                raise ContradictionError("exact value 0 contradicts a nonzero verdict")
        if zero_or_trans:
            natures &= {RAT, TRANS}
            if nonzero == YES:
                natures -= {RAT}
            if RAT not in natures:
                zero_or_trans = False
            elif natures == {RAT} and value is None:
                value = from_rational(0)
        self.verdict = Verdict(natures, nonzero)
        self.value = value
        self.zero_or_trans = zero_or_trans

    @classmethod
    def exact(cls, value: AlgebraicNumber) -> "Conclusion":
        return cls(ALL_NATURES, value=value)

    @classmethod
    def trans(cls) -> "Conclusion":
        return cls({TRANS}, YES)

    @classmethod
    def unknown(cls) -> "Conclusion":
        return cls(ALL_NATURES)

    @classmethod
    def from_verdict(cls, v: Verdict) -> "Conclusion":
        return cls(v.natures, v.nonzero)

    @property
    def natures(self) -> frozenset:
        return self.verdict.natures

    @property
    def is_trans(self) -> bool:
        return self.verdict.natures == {TRANS}

    def meet(self, other: "Conclusion") -> "Conclusion":
        v = self.verdict.meet(other.verdict)
        value = self.value
        if other.value is not None:
            if value is not None and value != other.value:
                raise ContradictionError("two different exact values for one subject")
            value = other.value
        return Conclusion(v.natures, v.nonzero, value, self.zero_or_trans or other.zero_or_trans)

    def refines(self, other: "Conclusion") -> bool:
        if not self.verdict.refines(other.verdict):
            return False
        if other.value is not None and self.value is None:
            return False
        return not (other.zero_or_trans and not self.zero_or_trans and RAT in self.natures and self.value is None)

    def __eq__(self, other):
        if not isinstance(other, Conclusion):
            return NotImplemented
        return (self.verdict == other.verdict and self.zero_or_trans == other.zero_or_trans
                and self.value == other.value)

    def __hash__(self):
        return hash((self.verdict, self.zero_or_trans))

    def annotations(self) -> dict:
        """The parts of a conclusion beyond its verdict, as certificate evidence."""
        out = {}
        if self.value is not None:
            out["value"] = describe_value(self.value)
        if self.zero_or_trans:
            out["rat_only_if_zero"] = True
        return out

    def __repr__(self):
        extra = ""
        if self.value is not None:
            extra += f", value={describe_value(self.value)}"
        if self.zero_or_trans:
            extra += ", rat_only_if_zero"
        return f"Conclusion({self.verdict.sorted_natures}, nonzero={self.verdict.nonzero}{extra})"


def describe_value(v: AlgebraicNumber):
    """JSON-ready exact description: a rational string, or minimal polynomial plus box."""
    q = v.as_rational()
    if q is not None:
        return str(q)
    return v.to_evidence()


def value_from_description(d) -> AlgebraicNumber:
    if isinstance(d, str):
        q = Fraction(d)
        return from_rational(q.numerator, q.denominator)
    return AlgebraicNumber.from_evidence(d)
