"""Evaluation of series at tuples of matrices.

Substituting ``w_j -> B_j`` sends a series to ``sum c_w B_{w_1} ... B_{w_k}``.
On group-like series this is a group homomorphism into the matrix group
generated by the ``B_j``, and ``exp(z)`` goes to the matrix exponential of
the image of ``z``.  When every product of N + 1 generators vanishes the
truncated evaluation is exact; otherwise the report says so.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .hopf import is_grouplike, is_primitive
from .lie import LieSeries, NotPrimitiveError
from .linalg import row_basis
from .ordexp import NotGrouplikeError
from .series import RATIONAL, GradedSeries, exp, mul
from .words import Word, word_key

NORMS = ("max-row-sum", "max-col-sum", "spectral")
TRUNCATION_ONLY = "truncation-only, no tail certificate"


def _as_matrix(m, exact: bool) -> np.ndarray:
    if exact:
        a = np.array([[Fraction(v) for v in row] for row in m], dtype=object)
    else:
        a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def _is_rational_entry(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


@dataclass
class MatrixTarget:
    """The generator images ``B_1 .. B_n`` and the operator norm used for bounds.

    Entries that are all ints or Fractions give an exact (object-dtype) target;
    anything else is stored as float64.
    """

    mats: list[np.ndarray]
    norm: str = "max-row-sum"
    exact: bool = field(default=False)

    def __post_init__(self):
        if not self.mats:
            raise ValueError("need at least one matrix")
        if self.norm not in NORMS:
            raise ValueError(f"unknown norm {self.norm!r}; choose from {NORMS}")
        self.mats = [_as_matrix(m, self.exact) for m in self.mats]
        d = {m.shape for m in self.mats}
        if len(d) != 1:
            raise ValueError(f"matrices have different shapes: {sorted(d)}")

    @classmethod
    def from_lists(cls, mats: Sequence, norm: str = "max-row-sum", exact: bool | None = None):
        if exact is None:
            exact = all(_is_rational_entry(v) for m in mats for row in m for v in row)
        return cls(list(mats), norm, exact)

    @property
    def n(self) -> int:
        return len(self.mats)

    @property
    def dim(self) -> int:
        return self.mats[0].shape[0]

    def identity(self) -> np.ndarray:
        if self.exact:
            e = np.full((self.dim, self.dim), Fraction(0), dtype=object)
            for i in range(self.dim):
                e[i, i] = Fraction(1)
            return e
        return np.eye(self.dim)

    def to_float(self) -> "MatrixTarget":
        return MatrixTarget([m.astype(float) for m in self.mats], self.norm, False)

    def scaled(self, c) -> "MatrixTarget":
        return MatrixTarget([m * c for m in self.mats], self.norm, self.exact)


@dataclass
class EvalReport:
    value: np.ndarray
    trunc_degree: int
    nilpotent_exact: bool
    nilpotency_index: int | None
    note: str = ""
    defects: dict[str, float] = field(default_factory=dict)


def op_norm(a: np.ndarray, kind: str = "max-row-sum"):
    """Operator norm induced by the l-infinity (row sums), l1 (column sums) or l2 norm."""
    if kind == "max-row-sum":
        return max(sum(abs(v) for v in row) for row in a) if a.size else 0
    if kind == "max-col-sum":
        return max(sum(abs(v) for v in col) for col in a.T) if a.size else 0
    if kind == "spectral":
        return float(np.linalg.norm(np.asarray(a, dtype=float), 2))
    raise ValueError(f"unknown norm {kind!r}")


def nilpotency_index(target: MatrixTarget) -> int | None:
    """Smallest k such that every product of k generators vanishes, or None.

    Tracks a basis of the span of length-k products; a nilpotent algebra of
    d x d matrices has index at most d, so d + 1 rounds decide the question.
    """
    d = target.dim
    if target.exact:
        span = [list(m.ravel()) for m in target.mats]
        for k in range(1, d + 2):
            span = row_basis(span)
            if not span:
                return k
            span = [list((np.array(v, dtype=object).reshape(d, d) @ b).ravel())
                    for v in span for b in target.mats]
        return None
    scale = max(float(np.abs(m).max()) for m in target.mats) or 1.0
    span = np.array([m.ravel() for m in target.mats])
    for k in range(1, d + 2):
        s_vals = np.linalg.svd(span, compute_uv=False)
        if s_vals.max(initial=0.0) <= 1e-12 * scale ** k:
            return k
        _, s_vals, vt = np.linalg.svd(span, full_matrices=False)
        basis = vt[s_vals > 1e-12 * s_vals[0]]
        span = np.array([(v.reshape(d, d) @ b).ravel() for v in basis for b in target.mats])
    return None


def _word_products(words, target: MatrixTarget) -> dict[Word, np.ndarray]:
    prods: dict[Word, np.ndarray] = {(): target.identity()}

    def get(w: Word) -> np.ndarray:
        p = prods.get(w)
        if p is None:
            p = get(w[:-1]) @ target.mats[w[-1] - 1]
            prods[w] = p
        return p

    for w in sorted(words, key=word_key):
        get(w)
    return prods


def eval_matrix(x: GradedSeries, target: MatrixTarget) -> np.ndarray:
    """``sum c_w B_w`` summed in canonical word order (reproducible in floats)."""
    if x.n != target.n:
        raise ValueError(f"series over {x.n} letters but target has {target.n} matrices")
    exact = target.exact and x.kind == RATIONAL
    tgt = target if exact or not target.exact else target.to_float()
    prods = _word_products(x._terms, tgt)
    out = tgt.identity() * 0
    for w, c in x.items():
        out = out + prods[w] * (c if exact else float(c))
    return out


def eval_series(x: GradedSeries, target: MatrixTarget) -> EvalReport:
    """Evaluate x at the target and record whether truncation is provably harmless."""
    value = eval_matrix(x, target)
    k = nilpotency_index(target)
    exact = k is not None and k <= x.N + 1
    return EvalReport(value, x.N, exact, k, "" if exact else TRUNCATION_ONLY)


def _distance(a: np.ndarray, b: np.ndarray, kind: str) -> float:
    return float(op_norm(a - b, kind))


def _certify_grouplike(g: GradedSeries) -> None:
    cert = is_grouplike(g)
    if not cert.verdict:
        raise NotGrouplikeError("series is not group-like", cert)


def check_homomorphism(g: GradedSeries, h: GradedSeries, target: MatrixTarget) -> float:
    """Operator-norm distance between the image of ``g h`` and the product of images."""
    _certify_grouplike(g)
    _certify_grouplike(h)
    lhs = eval_matrix(mul(g, h), target)
    rhs = eval_matrix(g, target) @ eval_matrix(h, target)
    return _distance(lhs, rhs, target.norm)


def matrix_exp(a, order: int = 18) -> np.ndarray:
    """Matrix exponential by scaling and squaring around a Taylor polynomial.

    ``a`` is scaled by ``2**-s`` until its 1-norm is at most 1/2, the Taylor
    series is summed to ``order`` terms, and the result squared s times.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    nrm = np.abs(a).sum(axis=0).max() if a.size else 0.0
    s = max(0, math.ceil(math.log2(nrm)) + 1) if nrm > 0 else 0
    b = a / 2.0 ** s
    out = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    for k in range(1, order + 1):
        term = term @ b / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


def exp_vs_Exp(z: GradedSeries | LieSeries, target: MatrixTarget) -> float:
    """Distance between the image of ``exp(z)`` and the matrix exponential of the image of z."""
    if isinstance(z, LieSeries):
        z = z.expand()
    cert = is_primitive(z)
    if not cert.verdict:
        raise NotPrimitiveError("exp_vs_Exp needs a Lie element", cert)
    lhs = np.asarray(eval_matrix(exp(z), target), dtype=float)
    rhs = matrix_exp(np.asarray(eval_matrix(z, target), dtype=float))
    return _distance(lhs, rhs, target.norm)


def min_xi(target: MatrixTarget):
    """Largest generator norm: the smallest weight for which every series of
    finite weighted norm has a convergent image."""
    return max(op_norm(m, target.norm) for m in target.mats)


def elementary(i: int, j: int, d: int) -> list[list[int]]:
    """The d x d matrix unit with a 1 in row i, column j (1-based)."""
    return [[1 if (r, c) == (i, j) else 0 for c in range(1, d + 1)] for r in range(1, d + 1)]


def heisenberg_target() -> MatrixTarget:
    """``w1 -> E12``, ``w2 -> E23`` in 3 x 3 matrices, exact."""
    return MatrixTarget.from_lists([elementary(1, 2, 3), elementary(2, 3, 3)])


def heisenberg_preimage(u, N: int = 2) -> LieSeries:
    """A Lie element z with ``exp(z) -> u`` for a unipotent upper-triangular 3 x 3 u.

    With ``z = a w1 + b w2 + c [w1, w2]`` the image of exp(z) is ``I + A + A^2/2``
    where ``A = a E12 + b E23 + c E13`` and ``A^2 = ab E13``; so a and b are read
    off the superdiagonal and ``c = u13 - ab/2``.
    """
    u = np.array([[Fraction(v) for v in row] for row in u], dtype=object)
    if u.shape != (3, 3):
        raise ValueError("need a 3 x 3 matrix")
    for i in range(3):
        for j in range(3):
            want = 1 if i == j else (u[i, j] if j > i else 0)
            if u[i, j] != want:
                raise ValueError("matrix is not unipotent upper triangular")
    a, b = u[0, 1], u[1, 2]
    c = u[0, 2] - a * b / 2
    return LieSeries(2, N, {(1,): a, (2,): b, (1, 2): c})
