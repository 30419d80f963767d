"""Seeded random objects shared by the test modules."""
from fractions import Fraction
import random

from freelie.lie import LieSeries
from freelie.series import GradedSeries, exp, mul
from freelie.words import all_words, lyndon_words


def rand_frac(rng: random.Random, num: int = 3, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_series(rng, n, N, density=0.5, constant=None) -> GradedSeries:
    terms = {}
    for w in all_words(n, N):
        if rng.random() < density:
            terms[w] = rand_frac(rng)
    if constant is not None:
        terms[()] = constant
    return GradedSeries(n, N, terms)


def rand_lie(rng, n, N, density=0.6) -> LieSeries:
    coords = {w: rand_frac(rng) for w in lyndon_words(n, N) if rng.random() < density}
    return LieSeries(n, N, coords)


def rand_grouplike(rng, n, N, factors=None) -> GradedSeries:
    """exp of a random Lie element, or a product of a few of them."""
    k = factors if factors is not None else rng.randint(1, 2)
    g = GradedSeries.one(n, N)
    for _ in range(k):
        g = mul(g, exp(rand_lie(rng, n, N).expand()))
    return g


def perturb(rng, g: GradedSeries, eps=Fraction(1, 1000)) -> GradedSeries:
    """Add eps to one coefficient of degree >= 1."""
    words = [w for w in all_words(g.n, g.N, mindeg=1)]
    w = rng.choice(words)
    return g + GradedSeries(g.n, g.N, {w: eps})
