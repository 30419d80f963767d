"""The free Lie algebra inside the truncated series ring.

Lie elements are stored in coordinates on the Lyndon basis: each Lyndon word
``w`` stands for its standard bracketing (split off the longest proper Lyndon
suffix, recurse on both halves).  Coordinates therefore depend on that
convention; a different Hall basis would give different numbers for the same
element.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .hopf import Certificate, is_primitive
from .series import RATIONAL, GradedSeries, add, exp, ln, mul, to_scalar
from .words import Word, check_word, is_lyndon, lyndon_suffix_split, word_key


class NotPrimitiveError(ValueError):
    """Raised when a series expected to be a Lie element is not primitive."""

    def __init__(self, msg: str, certificate: Certificate):
        super().__init__(msg)
        self.certificate = certificate


class BCHSelfCheckError(RuntimeError):
    """The logarithm computed inside :func:`bch` failed its primitivity check."""

    def __init__(self, msg: str, certificate: Certificate):
        super().__init__(msg)
        self.certificate = certificate


class LieSeries:
    """A Lie element in Lyndon coordinates, truncated at degree ``N``."""

    __slots__ = ("n", "N", "_coords")

    def __init__(self, n: int, N: int, coords: Mapping[Sequence[int], object] | None = None):
        if n < 1 or N < 0:
            raise ValueError(f"need n >= 1 and N >= 0, got n={n}, N={N}")
        self.n = n
        self.N = N
        out: dict[Word, Fraction] = {}
        for w, c in (coords or {}).items():
            w = check_word(w, n)
            if not w or not is_lyndon(w):
                raise ValueError(f"{w} is not a Lyndon word")
            c = to_scalar(c, RATIONAL)
            if c and len(w) <= N:
                out[w] = out.get(w, 0) + c
        self._coords = {w: c for w, c in out.items() if c}

    @classmethod
    def generator(cls, j: int, n: int, N: int) -> "LieSeries":
        return cls(n, N, {(j,): 1})

    @property
    def coords(self) -> dict[Word, Fraction]:
        return dict(self._coords)

    def items(self) -> list[tuple[Word, Fraction]]:
        return sorted(self._coords.items(), key=lambda kv: word_key(kv[0]))

    def coord(self, w: Sequence[int]) -> Fraction:
        return self._coords.get(tuple(w), Fraction(0))

    def is_zero(self) -> bool:
        return not self._coords

    def expand(self) -> GradedSeries:
        """Associative image: the sum of coordinate times bracketing."""
        out: dict[Word, Fraction] = {}
        for w, c in self._coords.items():
            for u, d in _bracketing_terms(w):
                out[u] = out.get(u, 0) + c * d
        return GradedSeries(self.n, self.N, out, RATIONAL)

    def truncate(self, N: int) -> "LieSeries":
        return LieSeries(self.n, N, {w: c for w, c in self._coords.items() if len(w) <= N})

    def __add__(self, other: "LieSeries") -> "LieSeries":
        if self.n != other.n:
            raise ValueError("alphabet mismatch")
        out = dict(self._coords)
        for w, c in other._coords.items():
            out[w] = out.get(w, 0) + c
        return LieSeries(self.n, min(self.N, other.N), out)

    def __neg__(self) -> "LieSeries":
        return LieSeries(self.n, self.N, {w: -c for w, c in self._coords.items()})

    def __sub__(self, other: "LieSeries") -> "LieSeries":
        return self + (-other)

    def __mul__(self, c) -> "LieSeries":
        c = to_scalar(c, RATIONAL)
        return LieSeries(self.n, self.N, {w: c * v for w, v in self._coords.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LieSeries):
            return NotImplemented
        return (self.n, self.N, self._coords) == (other.n, other.N, other._coords)

    def __repr__(self):
        body = ", ".join(f"{''.join(map(str, w))}: {c}" for w, c in self.items()[:12])
        return f"LieSeries(n={self.n}, N={self.N}, {{{body}}})"


def lie_bracket(x: GradedSeries, y: GradedSeries) -> GradedSeries:
    """``xy - yx`` truncated at the smaller degree."""
    return add(mul(x, y), -mul(y, x))


@lru_cache(maxsize=None)
def _bracketing_terms(w: Word) -> tuple[tuple[Word, Fraction], ...]:
    if len(w) == 1:
        return ((w, Fraction(1)),)
    u, v = lyndon_suffix_split(w)
    a = dict(_bracketing_terms(u))
    b = dict(_bracketing_terms(v))
    out: dict[Word, Fraction] = {}
    for p, c in a.items():
        for q, d in b.items():
            out[p + q] = out.get(p + q, 0) + c * d
            out[q + p] = out.get(q + p, 0) - c * d
    return tuple(sorted(((k, c) for k, c in out.items() if c), key=lambda kv: kv[0]))


def lyndon_bracketing(w: Sequence[int], n: int | None = None, N: int | None = None) -> GradedSeries:
    """Associative expansion of the standard bracketing of a Lyndon word."""
    w = tuple(w)
    if not w or not is_lyndon(w):
        raise ValueError(f"{w} is not a Lyndon word")
    n = n if n is not None else max(w)
    N = N if N is not None else len(w)
    return GradedSeries(n, N, dict(_bracketing_terms(w)), RATIONAL)


def project_to_lyndon(z: GradedSeries, *, check: bool = True) -> LieSeries:
    """Lyndon coordinates of a primitive series.

    Works degree by degree: the bracketing of a Lyndon word is that word plus
    lexicographically larger words of the same length, so repeatedly removing
    the smallest surviving word eliminates everything.
    """
    if z.kind != RATIONAL:
        raise TypeError("Lie coordinates require exact rational coefficients")
    if check:
        cert = is_primitive(z)
        if not cert.verdict:
            raise NotPrimitiveError("series is not a Lie element", cert)
    by_deg: dict[int, dict[Word, Fraction]] = {}
    for w, c in z._terms.items():
        by_deg.setdefault(len(w), {})[w] = c
    coords: dict[Word, Fraction] = {}
    for d, res in by_deg.items():
        if d == 0:
            raise NotPrimitiveError("nonzero constant term", is_primitive(z))
        while res:
            w = min(res)
            if not is_lyndon(w):
                raise NotPrimitiveError(f"leading word {w} is not Lyndon", is_primitive(z))
            c = res[w]
            coords[w] = c
            for u, e in _bracketing_terms(w):
                v = res.get(u, 0) - c * e
                if v:
                    res[u] = v
                else:
                    res.pop(u, None)
    return LieSeries(z.n, z.N, coords)


def _coerce_lie(x) -> GradedSeries:
    return x.expand() if isinstance(x, LieSeries) else x


def bch(x: LieSeries, y: LieSeries) -> LieSeries:
    """The Lie element z with exp(z) = exp(x) exp(y), truncated at degree N.

    Computed as ``ln(exp(X) exp(Y))`` in the associative algebra; the result
    must be primitive, and a failure means a bug, not bad input.
    """
    if x.n != y.n or x.N != y.N:
        raise ValueError(f"bch needs equal (n, N), got {(x.n, x.N)} and {(y.n, y.N)}")
    z = ln(mul(exp(x.expand()), exp(y.expand())))
    cert = is_primitive(z)
    if not cert.verdict:
        raise BCHSelfCheckError("ln(exp(x)exp(y)) is not primitive", cert)
    return project_to_lyndon(z, check=False)


def log_product_series(t, N: int, n: int = 2) -> GradedSeries:
    """``ln(exp(t w1) exp(t w2))`` truncated at degree N."""
    if N < 2:
        raise ValueError("need N >= 2")
    t = to_scalar(t, RATIONAL)
    a = GradedSeries.generator(1, n, N) * t
    b = GradedSeries.generator(2, n, N) * t
    return ln(mul(exp(a), exp(b)))
