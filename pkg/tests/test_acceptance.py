"""Acceptance criteria, one test each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the PASS/FAIL line
every criterion prints.
"""
from fractions import Fraction as F
import random
import time

import numpy as np

from freelie.evalmap import (check_homomorphism, eval_series, exp_vs_Exp, heisenberg_preimage,
                             heisenberg_target)
from freelie.hopf import is_grouplike, is_grouplike_direct, is_primitive, shuffle_defect
from freelie.lie import LieSeries, log_product_series, lyndon_bracketing, project_to_lyndon
from freelie.linalg import rank
from freelie.ordexp import (PiecewiseConstPath, log_derivative_path, ordered_exp_pc,
                            ordered_exp_poly, volterra_solve)
from freelie.series import GradedSeries, circ, exp, homogeneous_component, ln, m_xi, mul, xi_norm
from freelie.words import all_words, lyndon_words, witt_dimension

from gen import perturb, rand_grouplike, rand_lie, rand_series

G = GradedSeries


def report(number: int, title: str, ok: bool, detail: str = "") -> None:
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
    assert ok, f"criterion {number} failed: {detail}"


def test_criterion_01_bch_certification():
    start = time.perf_counter()
    x, y = G.generator(1, 2, 8), G.generator(2, 2, 8)
    z = ln(mul(exp(x), exp(y)))
    cert = is_primitive(z)
    lin = homogeneous_component(z, 1) == x + y
    c12 = project_to_lyndon(z, check=False).coord((1, 2))
    elapsed = time.perf_counter() - start
    ok = cert.verdict and cert.n_violations == 0 and lin and c12 == F(1, 2) and elapsed < 30
    report(1, "BCH certification at N=8", ok,
           f"violations={cert.n_violations}, coord(12)={c12}, {elapsed:.2f}s")


def test_criterion_02_criteria_equivalence():
    rng = random.Random(2002)
    corpus = []
    for i in range(120):
        n, N = rng.choice([(2, 5), (3, 4), (3, 3), (2, 4)])
        g = rand_grouplike(rng, n, N, factors=1 + i % 2)
        kind = i % 3
        if kind == 1:
            g = perturb(rng, g, F(1, 1000))
        elif kind == 2:
            g = rand_series(rng, n, N, 0.4, constant=F(1))
        corpus.append(g)
    mismatches = sum(is_grouplike(g).verdict != is_grouplike_direct(g).verdict for g in corpus)
    n_true = sum(is_grouplike(g).verdict for g in corpus)
    report(2, "shuffle system agrees with coproduct test", mismatches == 0 and 0 < n_true < len(corpus),
           f"{len(corpus)} series, {n_true} group-like, {mismatches} mismatches")


def test_criterion_03_exp_ln_bridge():
    rng = random.Random(2003)
    bad = 0
    for _ in range(50):
        N = rng.randint(2, 6)
        z = rand_lie(rng, 2, N).expand()
        bad += not is_grouplike(exp(z)).verdict
    for _ in range(50):
        N = rng.randint(2, 6)
        bad += not is_primitive(ln(rand_grouplike(rng, 2, N))).verdict
    detected = 0
    for _ in range(20):
        g = perturb(rng, rand_grouplike(rng, 2, 5), F(1, 1000))
        cert = is_grouplike(g)
        detected += (not cert.verdict) and any(
            v.alpha and shuffle_defect(g, v.alpha, v.beta) != 0 for v in cert.violations)
    report(3, "exp/ln bridge and perturbation detection", bad == 0 and detected == 20,
           f"{bad} bridge failures in 100, perturbations detected {detected}/20")


def test_criterion_04_inverse_law():
    rng = random.Random(2004)
    bad = 0
    for _ in range(50):
        n, N = rng.choice([(2, 6), (3, 4), (2, 5)])
        g = rand_grouplike(rng, n, N)
        bad += mul(circ(g), g) != G.one(n, N) or mul(g, circ(g)) != G.one(n, N)
    report(4, "circ(g) g = 1 on group-like g", bad == 0, f"{bad} failures in 50")


def test_criterion_05_counterexample_coefficients():
    rows = []
    ok = True
    for t in (F(1), F(1, 2), F(2)):
        s = log_product_series(t, 6)
        for m in (2, 3):
            want = -t ** (2 * m) / (2 * m)
            got = (s.coeff((1, 2) * m), s.coeff((2, 1) * m))
            ok &= got == (want, want)
            rows.append(f"t={t} m={m}: got {got[0]}, {got[1]} vs {want}")
    report(5, "alternating coefficients equal -t^(2m)/(2m)", ok, "; ".join(rows))


def test_criterion_06_ordexp_round_trip():
    rng = random.Random(2006)
    bad = 0
    for _ in range(20):
        n, N = rng.choice([(2, 6), (2, 5), (3, 4)])
        g = rand_grouplike(rng, n, N)
        path = log_derivative_path(g)
        bad += ordered_exp_poly(path, 1) != g
        bad += not all(is_primitive(c).verdict for c in path.t_coeffs)
    report(6, "ordered exponential of the log-derivative path returns g", bad == 0,
           f"{bad} failures in 20")


def test_criterion_07_volterra_convergence():
    X1, X2 = LieSeries.generator(1, 2, 4), LieSeries.generator(2, 2, 4)
    path = PiecewiseConstPath([0, F(1, 2), 1], [X1, X2])
    exact = ordered_exp_pc(path, 1)
    errs = [volterra_solve(path, 1.0, s).max_abs_diff(exact) for s in (64, 256, 1024)]
    ok = errs[-1] <= 1e-6 and errs[0] > errs[1] > errs[2]
    report(7, "Volterra solver on the two-piece path", ok,
           ", ".join(f"{s}: {e:.2e}" for s, e in zip((64, 256, 1024), errs)))


def test_criterion_08_heisenberg_universality():
    rng = random.Random(2008)
    H = heisenberg_target()
    worst = 0.0
    for _ in range(20):
        g, h = rand_grouplike(rng, 2, 4), rand_grouplike(rng, 2, 4)
        worst = max(worst, check_homomorphism(g, h, H), exp_vs_Exp(ln(g), H))
    solved = 0
    for _ in range(10):
        a, b, c = (F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3))
        U = np.array([[1, a, c], [0, 1, b], [0, 0, 1]], dtype=object)
        z = heisenberg_preimage(U)
        solved += bool((eval_series(exp(z.expand()), H).value == U).all())
    report(8, "Heisenberg target homomorphism and surjectivity", worst <= 1e-12 and solved == 10,
           f"worst defect {worst:.1e}, preimages {solved}/10")


def test_criterion_09_norm_laws():
    rng = random.Random(2009)
    bad = 0
    for xi in (F(1, 2), F(1), F(2)):
        for _ in range(200):
            n, N = rng.choice([(2, 4), (3, 3), (2, 5)])
            x, y = rand_series(rng, n, N, 0.4), rand_series(rng, n, N, 0.4)
            nx, ny = xi_norm(x, xi), xi_norm(y, xi)
            bad += xi_norm(mul(x, y), xi) > nx * ny
            bad += xi_norm(x + y, xi) > nx + ny
            bad += nx != xi_norm(m_xi(x, xi), 1)
    report(9, "xi-norm submultiplicative, subadditive, dilation identity", bad == 0,
           f"{bad} failures in 600 triples")


def test_criterion_10_witt_and_independence():
    mismatch = [(n, d) for n in (2, 3) for d in range(1, 9)
                if sum(len(w) == d for w in lyndon_words(n, 8)) != witt_dimension(n, d)]
    deficient = []
    for d in range(1, 7):
        words = [w for w in all_words(2, d, mindeg=d)]
        rows = []
        for w in (w for w in lyndon_words(2, d) if len(w) == d):
            b = lyndon_bracketing(w, 2, d)
            rows.append([b.coeff(u) for u in words])
        if rank(rows) != len(rows):
            deficient.append(d)
    report(10, "Lyndon counts match Witt, bracketings independent", not mismatch and not deficient,
           f"count mismatches {mismatch}, rank-deficient degrees {deficient}")
