"""Exception hierarchy shared by every arithmos module."""

from __future__ import annotations


class ArithmosError(Exception):
    """Base class for all arithmos errors."""


class ParseError(ArithmosError):
    def __init__(self, message: str, offset: int, expected: frozenset[str] | set[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class UnknownIdentifier(ParseError):
    def __init__(self, name: str, offset: int):
        self.name = name
        super().__init__(f"unknown identifier {name!r}", offset)


class DomainError(ArithmosError):
    """A literal domain violation such as ln(0) or division by an exact zero."""


class PrecisionExhausted(ArithmosError):
    """Ball evaluation could not decide a branch or division at the available precision."""


class DegreeCapExceeded(ArithmosError):
    """An algebraic computation exceeded the configured degree or coefficient-size cap."""


class NotAlgebraic(ArithmosError):
    """The expression is not structurally algebraic."""


class DivisionByZero(DomainError):
    pass


class ContradictionError(ArithmosError):
    """Verdict refinement produced an empty nature set."""


class NotFound(ArithmosError, KeyError):
    pass
