"""Thin helpers around python-flint's Arb types.

flint keeps its working precision in a process-global context, so every
precision change goes through one re-entrant lock.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from fractions import Fraction

from flint import acb, arb, ctx

_LOCK = threading.RLock()


@contextmanager
def precision(bits: int):
    with _LOCK:
        with ctx.workprec(int(bits)):
            yield


def arb_to_fraction(x) -> Fraction:
    man, exp = x.man_exp()
    man, exp = int(man), int(exp)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)


def arb_interval(x: arb) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints [mid - rad, mid + rad] of a real ball."""
    m = arb_to_fraction(x.mid())
    r = arb_to_fraction(x.rad())
    return m - r, m + r


def acb_box(z: acb) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    lo, hi = arb_interval(z.real)
    ilo, ihi = arb_interval(z.imag)
    return lo, hi, ilo, ihi


def fraction_to_arb(q: Fraction) -> arb:
    # exact when the denominator is a power of two, otherwise correctly enclosed
    return arb(q.numerator) / q.denominator


def box_to_acb(box) -> acb:
    lo, hi, ilo, ihi = box
    return acb(_interval_arb(lo, hi), _interval_arb(ilo, ihi))


def _interval_arb(lo: Fraction, hi: Fraction) -> arb:
    if lo == hi:
        return fraction_to_arb(lo)
    return fraction_to_arb(lo).union(fraction_to_arb(hi))


def boxes_overlap(a, b) -> bool:
    return a[0] <= b[1] and b[0] <= a[1] and a[2] <= b[3] and b[2] <= a[3]


def box_contains(outer, inner) -> bool:
    return outer[0] <= inner[0] and inner[1] <= outer[1] and outer[2] <= inner[2] and inner[3] <= outer[3]
