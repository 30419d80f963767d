"""Exact row reduction over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def row_basis(rows: Iterable[Sequence]) -> list[list[Fraction]]:
    """Reduced basis of the span of ``rows`` (Gaussian elimination, exact)."""
    basis: list[tuple[int, list[Fraction]]] = []  # (pivot column, row) with pivot entry 1
    for r in rows:
        v = [Fraction(x) for x in r]
        for piv, b in basis:
            c = v[piv]
            if c:
                v = [x - c * y for x, y in zip(v, b)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            continue
        p = v[piv]
        v = [x / p for x in v]
        # keep earlier rows reduced against the new pivot
        basis = [(q, [x - b[piv] * y for x, y in zip(b, v)]) for q, b in basis]
        basis.append((piv, v))
    return [b for _, b in basis]


def rank(rows: Iterable[Sequence]) -> int:
    return len(row_basis(rows))
