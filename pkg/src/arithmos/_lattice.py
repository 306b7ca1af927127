"""LLL-based small integer relation search (heuristic; callers verify)."""

from __future__ import annotations

from fractions import Fraction

from flint import fmpz_mat


def _round(q: Fraction) -> int:
    return (2 * q.numerator + q.denominator) // (2 * q.denominator)


def lll_relations(values: list[tuple[Fraction, Fraction]], scale_bits: int) -> list[list[int]]:
    """Candidate integer vectors c with sum(c_i * v_i) ~ 0, shortest first.

    ``values`` holds (real, imag) approximations of each v_i.  The lattice is
    the identity augmented by the values scaled by ``2**scale_bits``; after
    LLL reduction the coefficient part of each basis row is a candidate.
    """
    n = len(values)
    scale = 2**scale_bits
    use_imag = any(im != 0 for _, im in values)
    rows = []
    for i, (re, im) in enumerate(values):
        row = [1 if j == i else 0 for j in range(n)]
        row.append(_round(re * scale))
        if use_imag:
            row.append(_round(im * scale))
        rows.append(row)
    reduced = fmpz_mat(rows).lll()
    out = []
    for i in range(reduced.nrows()):
        coeffs = [int(reduced[i, j]) for j in range(n)]
        if any(coeffs):
            out.append(coeffs)
    out.sort(key=lambda c: sum(x * x for x in c))
    return out
