"""Word combinatorics over the alphabet {1, ..., n}.

Words are plain tuples of ints.  The alphabet size travels alongside as a
separate argument and is only checked by :func:`check_word`, so the hot
loops elsewhere in the package stay free of validation.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

Word = tuple[int, ...]

EMPTY: Word = ()


def check_word(w: Sequence[int], n: int) -> Word:
    """Return ``w`` as a tuple after checking every letter lies in [1, n]."""
    if n < 1:
        raise ValueError(f"alphabet size must be positive, got {n}")
    w = tuple(int(l) for l in w)
    for l in w:
        if not 1 <= l <= n:
            raise ValueError(f"letter {l} outside alphabet 1..{n}")
    return w


def word_key(w: Word) -> tuple[int, Word]:
    """Sort key for the canonical (degree, lexicographic) order."""
    return (len(w), w)


def concat(a: Sequence[int], b: Sequence[int], n: int | None = None, m: int | None = None) -> Word:
    if n is not None and m is not None and n != m:
        raise ValueError(f"alphabet mismatch: {n} != {m}")
    return tuple(a) + tuple(b)


def subword(w: Sequence[int], positions: Iterable[int]) -> Word:
    """Letters of ``w`` at the given 1-based positions, in increasing order."""
    pos = sorted(set(positions))
    k = len(w)
    for p in pos:
        if not 1 <= p <= k:
            raise IndexError(f"position {p} out of range 1..{k}")
    return tuple(w[p - 1] for p in pos)


def complement_positions(k: int, positions: Iterable[int]) -> tuple[int, ...]:
    s = set(positions)
    return tuple(p for p in range(1, k + 1) if p not in s)


def shuffle_pairs(a: Sequence[int], b: Sequence[int]) -> Iterator[tuple[tuple[int, ...], Word]]:
    """Yield ``(I, mu)`` for every |a|-subset I of {1..|a|+|b|}.

    ``mu`` is the interleaving that reads ``a`` on I and ``b`` on the rest.
    """
    p, q = len(a), len(b)
    for I in combinations(range(1, p + q + 1), p):
        out = [0] * (p + q)
        ia = iter(a)
        ib = iter(b)
        inI = set(I)
        for pos in range(1, p + q + 1):
            out[pos - 1] = next(ia) if pos in inI else next(ib)
        yield I, tuple(out)


def shuffles(a: Sequence[int], b: Sequence[int]) -> list[Word]:
    """All interleavings of ``a`` and ``b`` as a list (a multiset, with repeats)."""
    return [mu for _, mu in shuffle_pairs(a, b)]


@lru_cache(maxsize=1 << 16)
def shuffle_counts(a: Word, b: Word) -> tuple[tuple[Word, int], ...]:
    """Shuffle multiset of two tuples collapsed to ``(word, multiplicity)`` pairs."""
    c = Counter(shuffles(a, b))
    return tuple(sorted(c.items(), key=lambda kv: word_key(kv[0])))


def all_words(n: int, maxdeg: int, mindeg: int = 0) -> list[Word]:
    """Every word of degree in [mindeg, maxdeg], in canonical order."""
    out: list[Word] = []
    for d in range(mindeg, maxdeg + 1):
        out.extend(product(range(1, n + 1), repeat=d))
    return out


def is_lyndon(w: Sequence[int]) -> bool:
    """True iff ``w`` is strictly smaller than each of its proper rotations."""
    w = tuple(w)
    if not w:
        raise ValueError("is_lyndon is undefined on the empty word")
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def _duval(n: int, maxdeg: int) -> Iterator[Word]:
    # Duval's algorithm: Lyndon words of length <= maxdeg in lex order.
    w = [0]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < maxdeg:
            w.append(w[len(w) - m])
        while w and w[-1] == n:
            w.pop()


@lru_cache(maxsize=None)
def lyndon_words(n: int, maxdeg: int) -> tuple[Word, ...]:
    """Lyndon words over {1..n} of degree <= maxdeg, sorted by (degree, lex)."""
    if n < 1 or maxdeg < 1:
        raise ValueError("need n >= 1 and maxdeg >= 1")
    return tuple(sorted(_duval(n, maxdeg), key=word_key))


def lyndon_suffix_split(w: Word) -> tuple[Word, Word]:
    """Standard factorization ``w = u + v`` with v the longest proper Lyndon suffix."""
    if len(w) < 2:
        raise ValueError("standard factorization needs a word of length >= 2")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise AssertionError("unreachable: the last letter is always Lyndon")


def mobius(k: int) -> int:
    res, p = 1, 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            res = -res
        p += 1
    return -res if k > 1 else res


def witt_dimension(n: int, d: int) -> int:
    """Number of Lyndon words of length d over n letters (Witt's formula)."""
    total = sum(mobius(e) * n ** (d // e) for e in range(1, d + 1) if d % e == 0)
    return total // d
