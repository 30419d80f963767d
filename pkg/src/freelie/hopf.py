"""Coproduct and the Lie / group membership tests built on it.

Two certificates are provided:

* :func:`is_primitive` checks ``coproduct(z) == z (x) 1 + 1 (x) z``; the
  primitive elements are exactly the Lie elements.
* :func:`is_grouplike` checks the quadratic shuffle system
  ``c_a * c_b == sum(c_w for w in shuffles(a, b))`` together with
  ``c_() == 1``; this is equivalent to ``coproduct(g) == g (x) g`` but never
  builds the tensor square.  :func:`is_grouplike_direct` builds it anyway, as
  an independent second route.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import math
from typing import Iterable, Sequence

from .series import FLOAT, RATIONAL, GradedSeries, KindMismatch, Scalar
from .words import EMPTY, Word, all_words, shuffle_counts, word_key

DEFAULT_LIMIT = 16


class TensorSeries:
    """Sparse element of A (x) A truncated at total degree ``N``."""

    __slots__ = ("n", "N", "kind", "_terms")

    def __init__(self, n: int, N: int, terms: dict[tuple[Word, Word], Scalar] | None = None,
                 kind: str = RATIONAL):
        self.n = n
        self.N = N
        self.kind = kind
        self._terms = {k: c for k, c in (terms or {}).items() if c and len(k[0]) + len(k[1]) <= N}

    @property
    def terms(self) -> dict[tuple[Word, Word], Scalar]:
        return dict(self._terms)

    def items(self) -> list[tuple[tuple[Word, Word], Scalar]]:
        return sorted(self._terms.items(), key=lambda kv: _pair_key(kv[0]))

    def coeff(self, a: Sequence[int], b: Sequence[int]) -> Scalar:
        return self._terms.get((tuple(a), tuple(b)), Fraction(0) if self.kind == RATIONAL else 0.0)

    def _check(self, other: "TensorSeries") -> None:
        if self.n != other.n:
            raise ValueError(f"alphabet mismatch: {self.n} != {other.n}")
        if self.kind != other.kind:
            raise KindMismatch(f"scalar kind mismatch: {self.kind} != {other.kind}")

    def __add__(self, other: "TensorSeries") -> "TensorSeries":
        self._check(other)
        N = min(self.N, other.N)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return TensorSeries(self.n, N, out, self.kind)

    def __neg__(self) -> "TensorSeries":
        return TensorSeries(self.n, self.N, {k: -c for k, c in self._terms.items()}, self.kind)

    def __sub__(self, other: "TensorSeries") -> "TensorSeries":
        return self + (-other)

    def __mul__(self, other: "TensorSeries") -> "TensorSeries":
        """Componentwise concatenation: (a (x) b)(c (x) d) = ac (x) bd."""
        self._check(other)
        N = min(self.N, other.N)
        out: dict = {}
        for (a, b), c in self._terms.items():
            room = N - len(a) - len(b)
            for (p, q), d in other._terms.items():
                if len(p) + len(q) <= room:
                    k = (a + p, b + q)
                    out[k] = out.get(k, 0) + c * d
        return TensorSeries(self.n, N, out, self.kind)

    def __eq__(self, other):
        if not isinstance(other, TensorSeries):
            return NotImplemented
        return (self.n, self.N, self.kind, self._terms) == (other.n, other.N, other.kind, other._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __repr__(self):
        return f"TensorSeries(n={self.n}, N={self.N}, {len(self._terms)} terms)"


def _pair_key(k: tuple[Word, Word]):
    a, b = k
    return (len(a) + len(b), word_key(a), word_key(b))


def tensor(x: GradedSeries, y: GradedSeries) -> TensorSeries:
    """x (x) y truncated at total degree ``min(x.N, y.N)``."""
    x._check(y)
    N = min(x.N, y.N)
    out = {}
    for a, c in x._terms.items():
        for b, d in y._terms.items():
            if len(a) + len(b) <= N:
                out[(a, b)] = c * d
    return TensorSeries(x.n, N, out, x.kind)


@lru_cache(maxsize=1 << 14)
def _word_coproduct(w: Word) -> tuple[tuple[tuple[Word, Word], int], ...]:
    # sum over subsets I of positions: (w|I, w|complement)
    k = len(w)
    out: dict[tuple[Word, Word], int] = {}
    for mask in range(1 << k):
        left = tuple(w[i] for i in range(k) if mask >> i & 1)
        right = tuple(w[i] for i in range(k) if not mask >> i & 1)
        out[(left, right)] = out.get((left, right), 0) + 1
    return tuple(out.items())


def coproduct(x: GradedSeries) -> TensorSeries:
    """Linear extension of the subword-splitting formula on monomials."""
    out: dict = {}
    for w, c in x._terms.items():
        for k, m in _word_coproduct(w):
            out[k] = out.get(k, 0) + m * c
    return TensorSeries(x.n, x.N, out, x.kind)


@dataclass(frozen=True)
class Violation:
    alpha: Word
    beta: Word
    defect: Scalar


@dataclass
class Certificate:
    """Outcome of a membership test.

    ``violations`` is capped at ``limit`` entries; ``n_violations`` counts all
    of them.
    """

    verdict: bool
    violations: list[Violation] = field(default_factory=list)
    n_violations: int = 0
    limit: int = DEFAULT_LIMIT

    def __bool__(self) -> bool:
        return self.verdict


class _Collector:
    def __init__(self, limit: int):
        self.limit = limit
        self.found: list[Violation] = []
        self.count = 0

    def add(self, alpha: Word, beta: Word, defect: Scalar) -> None:
        self.count += 1
        if len(self.found) < self.limit:
            self.found.append(Violation(alpha, beta, defect))

    def certificate(self) -> Certificate:
        return Certificate(self.count == 0, self.found, self.count, self.limit)


def _tensor_certificate(residual: TensorSeries, tol: float, limit: int) -> Certificate:
    col = _Collector(limit)
    for (a, b), c in residual.items():
        if abs(c) > tol:
            col.add(a, b, c)
    return col.certificate()


def is_primitive(z: GradedSeries, *, tol: float = 0, limit: int = DEFAULT_LIMIT) -> Certificate:
    """Check ``coproduct(z) - z (x) 1 - 1 (x) z == 0`` up to total degree N.

    A nonzero constant term shows up as a violation at ``((), ())``.
    """
    one = GradedSeries.one(z.n, z.N, z.kind)
    residual = coproduct(z) - tensor(z, one) - tensor(one, z)
    return _tensor_certificate(residual, tol if z.kind == FLOAT else 0, limit)


def is_primitive_each(coeffs: Iterable[GradedSeries], *, limit: int = DEFAULT_LIMIT) -> Certificate:
    """Primitivity of a polynomial in t, tested coefficient by coefficient.

    A polynomial in t that vanishes for every t has zero coefficients, so
    checking each power separately is equivalent to checking at all t.
    """
    col = _Collector(limit)
    for z in coeffs:
        cert = is_primitive(z, limit=limit)
        for v in cert.violations:
            col.add(v.alpha, v.beta, v.defect)
        col.count += cert.n_violations - len(cert.violations)
    return col.certificate()


def shuffle_defect(g: GradedSeries, alpha: Sequence[int], beta: Sequence[int]) -> Scalar:
    """``c_alpha * c_beta`` minus the sum of ``c_w`` over the shuffles of alpha and beta."""
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) + len(beta) > g.N:
        raise ValueError(f"|alpha|+|beta| = {len(alpha) + len(beta)} exceeds N = {g.N}")
    t = g._terms
    total = sum((m * t[w] for w, m in shuffle_counts(alpha, beta) if w in t),
                Fraction(0) if g.kind == RATIONAL else 0.0)
    return g.coeff(alpha) * g.coeff(beta) - total


def is_grouplike(g: GradedSeries, *, tol: float = 0, limit: int = DEFAULT_LIMIT) -> Certificate:
    """Check the quadratic shuffle system plus ``c_() == 1``.

    Pairs (alpha, beta) run over nonempty words with alpha <= beta in canonical
    order; the system is symmetric so the other half adds nothing.  With
    ``c_() == 1`` the equations involving the empty word hold automatically.
    """
    tol = tol if g.kind == FLOAT else 0
    col = _Collector(limit)
    c0 = g.constant
    if abs(c0 - 1) > tol:
        col.add(EMPTY, EMPTY, c0 - 1)
    if g.kind == RATIONAL:
        # clear denominators: c_w = a_w / D turns each equation into
        # a_alpha * a_beta == D * sum(a_w), all in Python ints
        D = 1
        for c in g._terms.values():
            D = D * c.denominator // math.gcd(D, c.denominator)
        coef = {w: int(c * D) for w, c in g._terms.items()}
    else:
        D = 1
        coef = g._terms
    get = coef.get
    words = all_words(g.n, g.N - 1, mindeg=1)
    for i, a in enumerate(words):
        room = g.N - len(a)
        if room < len(a):
            break
        ca = get(a, 0)
        for b in words[i:]:
            if len(b) > room:
                break
            total = 0
            for w, m in shuffle_counts(a, b):
                cw = get(w)
                if cw:
                    total += m * cw
            d = ca * get(b, 0) - D * total
            if g.kind == RATIONAL:
                if d:
                    col.add(a, b, Fraction(d, D * D))
            elif abs(d) > tol:
                col.add(a, b, d)
    return col.certificate()


def is_grouplike_direct(g: GradedSeries, *, tol: float = 0, limit: int = DEFAULT_LIMIT) -> Certificate:
    """Check ``coproduct(g) == g (x) g`` by building both sides.

    The reported defect at (alpha, beta) is ``(g (x) g - coproduct(g))`` there,
    which matches the sign convention of :func:`shuffle_defect`.
    """
    residual = tensor(g, g) - coproduct(g)
    return _tensor_certificate(residual, tol if g.kind == FLOAT else 0, limit)
