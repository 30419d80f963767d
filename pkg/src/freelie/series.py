"""Truncated noncommutative power series in n generators.

A :class:`GradedSeries` stores the coefficients of words of degree <= N in a
sparse dict.  Binary operations truncate at the smaller of the two degrees,
so a result never claims more precision than its least precise operand.

Coefficients are either exact :class:`fractions.Fraction` ("rational") or
Python floats ("float"); a series commits to one kind and mixing kinds is an
error.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .words import EMPTY, Word, check_word, word_key

Scalar = Union[Fraction, float]

RATIONAL = "rational"
FLOAT = "float"
KINDS = (RATIONAL, FLOAT)


class KindMismatch(ValueError):
    pass


def to_scalar(c, kind: str) -> Scalar:
    """Coerce ``c`` to the scalar type of ``kind``.

    Floats are refused in rational mode; use ``Fraction(c)`` explicitly if a
    binary-exact conversion is really what you want.
    """
    if kind == RATIONAL:
        if isinstance(c, Fraction):
            return c
        if isinstance(c, (int, Rational)) and not isinstance(c, bool):
            return Fraction(c)
        if isinstance(c, str):
            return Fraction(c)
        raise TypeError(f"cannot use {c!r} ({type(c).__name__}) as an exact coefficient")
    if kind == FLOAT:
        return float(c)
    raise ValueError(f"unknown scalar kind {kind!r}")


class GradedSeries:
    """Element of the free associative algebra truncated at degree ``N``.

    Parameters
    ----------
    n : int
        Alphabet size.
    N : int
        Truncation degree; words longer than ``N`` are discarded.
    terms : mapping of word -> coefficient
        Zero coefficients are dropped.
    kind : {"rational", "float"}
    """

    __slots__ = ("n", "N", "kind", "_terms")

    def __init__(self, n: int, N: int, terms: Mapping[Sequence[int], object] | None = None,
                 kind: str = RATIONAL, *, _trusted: bool = False):
        if n < 1:
            raise ValueError(f"alphabet size must be positive, got {n}")
        if N < 0:
            raise ValueError(f"truncation degree must be >= 0, got {N}")
        if kind not in KINDS:
            raise ValueError(f"unknown scalar kind {kind!r}")
        self.n = n
        self.N = N
        self.kind = kind
        if _trusted:
            self._terms = terms
            return
        clean: dict[Word, Scalar] = {}
        for w, c in (terms or {}).items():
            w = check_word(w, n)
            if len(w) > N:
                continue
            c = to_scalar(c, kind)
            if c:
                clean[w] = clean.get(w, 0) + c
        self._terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def _make(cls, n: int, N: int, terms: dict, kind: str) -> "GradedSeries":
        # terms already validated; drop zeros only
        return cls(n, N, {w: c for w, c in terms.items() if c}, kind, _trusted=True)

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, n: int, N: int, kind: str = RATIONAL) -> "GradedSeries":
        return cls(n, N, {}, kind)

    @classmethod
    def one(cls, n: int, N: int, kind: str = RATIONAL) -> "GradedSeries":
        return cls(n, N, {EMPTY: 1}, kind)

    @classmethod
    def generator(cls, j: int, n: int, N: int, kind: str = RATIONAL) -> "GradedSeries":
        """The series consisting of the single letter ``j``."""
        return cls(n, N, {(j,): 1}, kind)

    @classmethod
    def monomial(cls, w: Sequence[int], n: int, N: int, c=1, kind: str = RATIONAL) -> "GradedSeries":
        return cls(n, N, {tuple(w): c}, kind)

    # access ---------------------------------------------------------------

    @property
    def terms(self) -> dict[Word, Scalar]:
        return dict(self._terms)

    def items(self) -> list[tuple[Word, Scalar]]:
        """Stored terms in canonical word order."""
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def coeff(self, w: Sequence[int]) -> Scalar:
        z = Fraction(0) if self.kind == RATIONAL else 0.0
        return self._terms.get(tuple(w), z)

    @property
    def constant(self) -> Scalar:
        return self.coeff(EMPTY)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Word]:
        return iter(sorted(self._terms, key=word_key))

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> int | None:
        """Smallest degree carrying a nonzero coefficient, or None for zero."""
        return min((len(w) for w in self._terms), default=None)

    # structure ------------------------------------------------------------

    def _check(self, other: "GradedSeries") -> None:
        if not isinstance(other, GradedSeries):
            raise TypeError(f"expected GradedSeries, got {type(other).__name__}")
        if self.n != other.n:
            raise ValueError(f"alphabet mismatch: {self.n} != {other.n}")
        if self.kind != other.kind:
            raise KindMismatch(f"scalar kind mismatch: {self.kind} != {other.kind}")

    def truncate(self, N: int) -> "GradedSeries":
        if N > self.N:
            raise ValueError(f"cannot raise truncation degree from {self.N} to {N}")
        return GradedSeries._make(self.n, N, {w: c for w, c in self._terms.items() if len(w) <= N},
                                  self.kind)

    def with_degree(self, N: int) -> "GradedSeries":
        """Reinterpret at degree N: truncates if smaller, pads (with exact zeros) if larger.

        Padding asserts that the element is a polynomial whose higher terms are
        genuinely zero; use only for finite sums such as generators.
        """
        return GradedSeries._make(self.n, N, {w: c for w, c in self._terms.items() if len(w) <= N},
                                  self.kind)

    def to_float(self) -> "GradedSeries":
        return GradedSeries._make(self.n, self.N, {w: float(c) for w, c in self._terms.items()}, FLOAT)

    def map_coeffs(self, f) -> "GradedSeries":
        return GradedSeries._make(self.n, self.N, {w: f(c) for w, c in self._terms.items()}, self.kind)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, GradedSeries):
            return self + self._const(other)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return GradedSeries._make(self.n, self.N, {w: -c for w, c in self._terms.items()}, self.kind)

    def __sub__(self, other):
        if not isinstance(other, GradedSeries):
            other = self._const(other)
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GradedSeries):
            return mul(self, other)
        c = to_scalar(other, self.kind)
        return GradedSeries._make(self.n, self.N, {w: c * v for w, v in self._terms.items()}, self.kind)

    def __rmul__(self, other):
        # scalar * series; series * series is handled by __mul__
        return self.__mul__(other)

    def __truediv__(self, other):
        c = to_scalar(other, self.kind)
        return GradedSeries._make(self.n, self.N, {w: v / c for w, v in self._terms.items()}, self.kind)

    def __pow__(self, m: int):
        if m < 0:
            return inverse(self) ** (-m)
        out = GradedSeries.one(self.n, self.N, self.kind)
        for _ in range(m):
            out = mul(out, self)
        return out

    def _const(self, c) -> "GradedSeries":
        return GradedSeries(self.n, self.N, {EMPTY: c}, self.kind)

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (self.n, self.N, self.kind) == (other.n, other.N, other.kind) and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, self.N, self.kind, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            body = "0"
        else:
            parts = []
            for w, c in self.items()[:12]:
                parts.append(f"{c}*{''.join(f'w{l}' for l in w) or '1'}")
            body = " + ".join(parts) + (" + ..." if len(self._terms) > 12 else "")
        return f"GradedSeries(n={self.n}, N={self.N}, {self.kind}: {body})"

    def max_abs_diff(self, other: "GradedSeries") -> float:
        """Largest coefficientwise distance, as a float; kinds may differ."""
        if self.n != other.n:
            raise ValueError("alphabet mismatch")
        N = min(self.N, other.N)
        keys = {w for w in self._terms if len(w) <= N} | {w for w in other._terms if len(w) <= N}
        return max((abs(float(self._terms.get(w, 0)) - float(other._terms.get(w, 0))) for w in keys),
                   default=0.0)


def add(x: GradedSeries, y: GradedSeries) -> GradedSeries:
    x._check(y)
    N = min(x.N, y.N)
    out = {w: c for w, c in x._terms.items() if len(w) <= N}
    for w, c in y._terms.items():
        if len(w) <= N:
            out[w] = out.get(w, 0) + c
    return GradedSeries._make(x.n, N, out, x.kind)


def _by_degree(terms: dict) -> list[tuple[Word, Scalar]]:
    return sorted(terms.items(), key=lambda kv: len(kv[0]))


def mul(x: GradedSeries, y: GradedSeries) -> GradedSeries:
    """Concatenation product truncated at ``min(x.N, y.N)``."""
    x._check(y)
    N = min(x.N, y.N)
    ys = _by_degree(y._terms)
    out: dict[Word, Scalar] = {}
    get = out.get
    for a, c in x._terms.items():
        room = N - len(a)
        if room < 0:
            continue
        for b, d in ys:
            if len(b) > room:
                break
            w = a + b
            out[w] = get(w, 0) + c * d
    return GradedSeries._make(x.n, N, out, x.kind)


def homogeneous_component(x: GradedSeries, j: int) -> GradedSeries:
    """The degree-``j`` part of ``x``."""
    if not 0 <= j <= x.N:
        raise ValueError(f"degree {j} outside 0..{x.N}")
    return GradedSeries._make(x.n, x.N, {w: c for w, c in x._terms.items() if len(w) == j}, x.kind)


def components(x: GradedSeries) -> list[GradedSeries]:
    return [homogeneous_component(x, j) for j in range(x.N + 1)]


def exp(x: GradedSeries) -> GradedSeries:
    """Exponential of a series with zero constant term.

    The sum stops at ``x**N / N!`` since higher powers vanish after truncation.
    """
    if x.constant:
        raise ValueError("exp needs a series with zero constant term")
    out = GradedSeries.one(x.n, x.N, x.kind)
    term = out
    for m in range(1, x.N + 1):
        term = mul(term, x) / m
        if term.is_zero():
            break
        out = add(out, term)
    return out


def ln(g: GradedSeries) -> GradedSeries:
    """Logarithm of a series with constant term exactly 1."""
    if g.constant != 1:
        raise ValueError(f"ln needs constant term 1, got {g.constant}")
    y = g - 1
    out = GradedSeries.zero(g.n, g.N, g.kind)
    power = GradedSeries.one(g.n, g.N, g.kind)
    for m in range(1, g.N + 1):
        power = mul(power, y)
        if power.is_zero():
            break
        out = add(out, power * to_scalar(Fraction(1 if m % 2 else -1, m), g.kind))
    return out


def inverse(x: GradedSeries) -> GradedSeries:
    """Multiplicative inverse, defined whenever the constant term is nonzero."""
    c0 = x.constant
    if not c0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    u = x / c0
    y = 1 - u
    out = GradedSeries.one(x.n, x.N, x.kind)
    power = out
    for _ in range(x.N):
        power = mul(power, y)
        if power.is_zero():
            break
        out = add(out, power)
    return out / c0


def m_xi(x: GradedSeries, xi) -> GradedSeries:
    """Grading dilation: scale the degree-j part by ``xi**j``.

    ``xi = 0`` projects onto the constant term.
    """
    xi = to_scalar(xi, x.kind)
    if xi < 0:
        raise ValueError(f"dilation parameter must be nonnegative, got {xi}")
    if xi == 0:
        return GradedSeries._make(x.n, x.N, {w: c for w, c in x._terms.items() if not w}, x.kind)
    return GradedSeries._make(x.n, x.N, {w: c * xi ** len(w) for w, c in x._terms.items()}, x.kind)


def circ(x: GradedSeries) -> GradedSeries:
    """Anti-automorphism reversing each word with sign ``(-1)**len``."""
    return GradedSeries._make(
        x.n, x.N, {w[::-1]: (-c if len(w) % 2 else c) for w, c in x._terms.items()}, x.kind)


def xi_norm(x: GradedSeries, xi) -> Scalar:
    """Weighted l1 norm ``sum xi**|w| * |c_w|`` of the stored (truncated) terms.

    Tail mass beyond degree N is not represented, so for a truncation of a
    genuinely infinite element this is a lower bound on its true norm.
    """
    xi = to_scalar(xi, x.kind)
    if xi <= 0:
        raise ValueError(f"xi must be positive, got {xi}")
    return sum((abs(c) * xi ** len(w) for w, c in x._terms.items()),
               Fraction(0) if x.kind == RATIONAL else 0.0)


def lin_comb(pairs: Iterable[tuple[object, GradedSeries]]) -> GradedSeries:
    """Sum of ``c * x`` over ``pairs``; at least one pair required."""
    it = iter(pairs)
    c, x = next(it)
    out = x * c
    for c, x in it:
        out = add(out, x * c)
    return out
