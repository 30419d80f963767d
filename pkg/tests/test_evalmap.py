from fractions import Fraction as F
import math
import random

import numpy as np
import pytest
import scipy.linalg

from freelie.evalmap import (TRUNCATION_ONLY, MatrixTarget, check_homomorphism, elementary,
                             eval_matrix, eval_series, exp_vs_Exp, heisenberg_preimage,
                             heisenberg_target, matrix_exp, min_xi, nilpotency_index, op_norm)
from freelie.lie import LieSeries, NotPrimitiveError, lie_bracket
from freelie.ordexp import NotGrouplikeError
from freelie.series import GradedSeries, exp, mul, xi_norm

from gen import rand_grouplike, rand_lie, rand_series

G = GradedSeries
H = heisenberg_target()


def fr(m):
    return np.array([[F(v) for v in row] for row in m], dtype=object)


def gen(j, N=3, n=2):
    return G.generator(j, n, N)


def test_eval_examples():
    E12 = elementary(1, 2, 3)
    t1 = MatrixTarget.from_lists([E12])
    assert (eval_series(G.generator(1, 1, 3), t1).value == fr(E12)).all()
    r = eval_series(exp(G.generator(1, 1, 3)), t1)
    assert (r.value == fr([[1, 1, 0], [0, 1, 0], [0, 0, 1]])).all()
    assert r.nilpotent_exact
    r = eval_series(exp(gen(1)) * exp(gen(2)), H)
    assert (r.value == fr([[1, 1, 1], [0, 1, 1], [0, 0, 1]])).all()


def test_eval_dimension_mismatch():
    with pytest.raises(ValueError):
        eval_series(G.generator(1, 3, 2), H)
    with pytest.raises(ValueError):
        MatrixTarget.from_lists([[[1, 0], [0, 1]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]]])


def test_eval_linear_and_multiplicative_on_nilpotent_target():
    rng = random.Random(0)
    for _ in range(30):
        x, y = rand_series(rng, 2, 3, 0.5), rand_series(rng, 2, 3, 0.5)
        c = F(rng.randint(-3, 3), rng.randint(1, 3))
        assert (eval_matrix(x + y * c, H) == eval_matrix(x, H) + eval_matrix(y, H) * c).all()
        assert (eval_matrix(mul(x, y), H) == eval_matrix(x, H) @ eval_matrix(y, H)).all()


def test_nilpotent_stability():
    # strictly upper triangular 4x4: products of length 4 vanish, so N >= 3 is exact
    rng = random.Random(1)
    mats = [[[rng.randint(-2, 2) if j > i else 0 for j in range(4)] for i in range(4)] for _ in range(2)]
    t = MatrixTarget.from_lists(mats)
    assert nilpotency_index(t) <= 4
    z = rand_lie(rng, 2, 6).expand()
    g = exp(z)
    ref = eval_series(g.truncate(3), t)
    assert ref.nilpotent_exact
    for N in (4, 5, 6):
        assert (eval_series(g.truncate(N), t).value == ref.value).all()


def test_truncation_only_flag():
    rot = MatrixTarget.from_lists([[[0.0, -1.0], [1.0, 0.0]]])
    r = eval_series(exp(G.generator(1, 1, 6)), rot)
    assert not r.nilpotent_exact and r.note == TRUNCATION_ONLY
    assert nilpotency_index(rot) is None
    assert nilpotency_index(MatrixTarget.from_lists([[[0.0, 1.0], [0.0, 0.0]]])) == 2


def test_check_homomorphism():
    assert check_homomorphism(exp(gen(1)), G.one(2, 3), H) == 0
    assert check_homomorphism(exp(gen(1)), exp(gen(2)), H) <= 1e-12
    with pytest.raises(NotGrouplikeError):
        check_homomorphism(1 + gen(1), G.one(2, 3), H)


def _so3():
    Lx = [[0, 0, 0], [0, 0, -1], [0, 1, 0]]
    Ly = [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]
    return MatrixTarget.from_lists([np.array(Lx, float), np.array(Ly, float)])


def graded_tail_bound(zs, xi, N, top=80):
    """Mass beyond degree N of exp(P(u)) at u = 1, with P(u) = sum_k ||z[k]||_xi u^k.

    Dominates the degree > N part of exp(z_1) exp(z_2) ... in the xi-norm.
    """
    p = [0.0] * (top + 1)
    for z in zs:
        for w, c in z.terms.items():
            p[len(w)] += abs(float(c)) * xi ** len(w)
    out = [1.0] + [0.0] * top
    term = [1.0] + [0.0] * top
    for m in range(1, top + 1):
        term = [sum(term[i] * p[k - i] for i in range(k + 1)) / m for k in range(top + 1)]
        out = [a + b for a, b in zip(out, term)]
    return sum(out[N + 1:])


def test_check_homomorphism_rotation_generators():
    T = _so3()
    xi = min_xi(T)
    assert xi == 1
    rng = random.Random(2)
    N = 10
    for _ in range(10):
        # degree-one exponents: the tail is sum_{k > N} s^k / k!
        zg = G(2, N, {(1,): F(rng.randint(-2, 2), 8), (2,): F(rng.randint(-2, 2), 8)})
        zh = G(2, N, {(1,): F(rng.randint(-2, 2), 8), (2,): F(rng.randint(-2, 2), 8)})
        s = float(xi_norm(zg, 1) + xi_norm(zh, 1))
        bound = sum(s ** k / math.factorial(k) for k in range(N + 1, 60))
        d = check_homomorphism(exp(zg), exp(zh), T)
        assert d <= bound + 1e-14
        assert d <= 1e-6
    for _ in range(10):
        zg = LieSeries(2, N, rand_lie(rng, 2, 3).coords).expand()
        zh = LieSeries(2, N, rand_lie(rng, 2, 3).coords).expand()
        d = check_homomorphism(exp(zg), exp(zh), T)
        assert d <= graded_tail_bound([zg, zh], 1.0, N) + 1e-12


def test_exp_vs_Exp():
    assert exp_vs_Exp(gen(1), H) <= 1e-15
    assert exp_vs_Exp(lie_bracket(gen(1), gen(2)), H) <= 1e-12
    T = MatrixTarget.from_lists([[[0, 1], [0, 0]], [[0, 0], [1, 0]]])
    z = G.generator(1, 2, 12) + G.generator(2, 2, 12)
    assert exp_vs_Exp(z, T) <= 1e-6
    with pytest.raises(NotPrimitiveError):
        exp_vs_Exp(gen(1) * gen(2), H)


def test_matrix_exp_examples():
    assert np.allclose(matrix_exp(np.zeros((3, 3))), np.eye(3), atol=0)
    E12 = np.array(elementary(1, 2, 3), float)
    assert np.array_equal(matrix_exp(E12), np.eye(3) + E12)
    J = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert np.abs(matrix_exp(J * math.pi / 2) - J).max() <= 1e-10


def test_matrix_exp_against_scipy():
    rng = np.random.default_rng(3)
    for _ in range(50):
        d = rng.integers(1, 7)
        A = rng.standard_normal((d, d))
        A *= rng.uniform(0, 10) / max(np.abs(A).sum(axis=1).max(), 1e-300)
        ref = scipy.linalg.expm(A)
        err = np.abs(matrix_exp(A) - ref).max() / np.abs(ref).max()
        assert err <= 1e-10


def test_min_xi():
    assert min_xi(H) == 1
    assert min_xi(H.scaled(3)) == 3
    zero = MatrixTarget.from_lists([[[0, 0], [0, 0]]])
    assert min_xi(zero) == 0


def test_norm_compatibility():
    rng = random.Random(4)
    T = _so3().scaled(0.7)
    xi = min_xi(T)
    for _ in range(30):
        x = rand_series(rng, 2, 5, 0.5)
        lhs = sum(abs(float(c)) * xi ** len(w) for w, c in x.terms.items())
        assert lhs <= float(xi_norm(x.to_float(), xi)) + 1e-12
        assert op_norm(eval_matrix(x, T), T.norm) <= float(xi_norm(x.to_float(), xi)) + 1e-12


def test_heisenberg_surjectivity():
    rng = random.Random(5)
    for _ in range(10):
        a, b, c = (F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3))
        U = [[1, a, c], [0, 1, b], [0, 0, 1]]
        z = heisenberg_preimage(U)
        assert (eval_series(exp(z.expand()), H).value == fr(U)).all()
    with pytest.raises(ValueError):
        heisenberg_preimage([[1, 0, 0], [1, 1, 0], [0, 0, 1]])


def test_heisenberg_random_pairs_exact():
    rng = random.Random(6)
    for _ in range(20):
        g, h = rand_grouplike(rng, 2, 3), rand_grouplike(rng, 2, 3)
        assert check_homomorphism(g, h, H) == 0
        assert exp_vs_Exp(rand_lie(rng, 2, 3).expand(), H) <= 1e-12
