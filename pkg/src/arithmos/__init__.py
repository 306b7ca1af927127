"""arithmos — classify closed-form constants as rational, algebraic or transcendental.

Typical use::

    >>> from arithmos import parse, classify
    >>> verdict, cert, kb = classify(parse("2^sqrt(2)"))
    >>> verdict.sorted_natures
    ['TRANS']
"""

from .algebraic import AlgebraicNumber, DegreeCapConfig, eval_algebraic, q_linear_independent_with_one
from .certificate import Certificate, render as render_certificate, replay
from .engine import EngineConfig, KnowledgeBase, classify, classify_set, explain
from .errors import (
    ArithmosError, ContradictionError, DegreeCapExceeded, DivisionByZero, DomainError,
    NotFound, ParseError, PrecisionExhausted, UnknownIdentifier,
)
from .grammar import parse, render
from .numeric import certify_nonzero, eval_ball, integer_relation
from .verdict import Verdict

__version__ = "0.1.0"

__all__ = [
    "AlgebraicNumber", "DegreeCapConfig", "eval_algebraic", "q_linear_independent_with_one",
    "Certificate", "render_certificate", "replay",
    "EngineConfig", "KnowledgeBase", "classify", "classify_set", "explain",
    "ArithmosError", "ContradictionError", "DegreeCapExceeded", "DivisionByZero", "DomainError",
    "NotFound", "ParseError", "PrecisionExhausted", "UnknownIdentifier",
    "parse", "render", "certify_nonzero", "eval_ball", "integer_relation", "Verdict",
]
