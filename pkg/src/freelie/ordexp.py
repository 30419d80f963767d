"""Ordered exponentials of Lie-valued paths.

The ordered exponential ``E(t)`` of a path ``gamma`` solves ``E' = E * gamma``
with ``E(0) = 1`` (the path multiplies on the right).  Two path classes have
exact rational solutions:

* piecewise-constant paths, where ``E`` is a product of exponentials;
* polynomial-in-t paths, where each homogeneous part of ``E`` is a polynomial
  in t found by integrating the degreewise recursion.

:func:`volterra_solve` is the float fallback for arbitrary sampled paths.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .hopf import Certificate, is_grouplike, is_primitive_each
from .lie import LieSeries, NotPrimitiveError, project_to_lyndon
from .series import (FLOAT, RATIONAL, GradedSeries, add, exp, homogeneous_component, inverse,
                     mul, to_scalar)


class NotGrouplikeError(ValueError):
    def __init__(self, msg: str, certificate: Certificate):
        super().__init__(msg)
        self.certificate = certificate


@dataclass
class PiecewiseConstPath:
    """Path equal to ``values[i]`` on ``[breakpoints[i], breakpoints[i+1])``.

    Breakpoints start at 0; the standard domain ends at 1 but any positive
    end point is accepted (time-shifted tails end earlier).
    """

    breakpoints: list[Fraction]
    values: list[LieSeries]

    def __post_init__(self):
        self.breakpoints = [to_scalar(b, RATIONAL) for b in self.breakpoints]
        bp = self.breakpoints
        if len(bp) < 2 or bp[0] != 0:
            raise ValueError("breakpoints must start at 0 and contain at least two points")
        if any(a >= b for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if len(self.values) != len(bp) - 1:
            raise ValueError(f"{len(bp) - 1} pieces need as many values, got {len(self.values)}")
        if len({(v.n, v.N) for v in self.values}) != 1:
            raise ValueError("all piece values need the same (n, N)")

    @property
    def n(self) -> int:
        return self.values[0].n

    @property
    def N(self) -> int:
        return self.values[0].N

    @property
    def end(self) -> Fraction:
        return self.breakpoints[-1]

    def at(self, t) -> LieSeries:
        """Value at time t (right-continuous; the last piece includes the end)."""
        bp = self.breakpoints
        for i in range(len(self.values)):
            if t < bp[i + 1]:
                return self.values[i]
        return self.values[-1]

    def shifted(self, s) -> "PiecewiseConstPath":
        """The tail ``tau -> gamma(s + tau)`` on ``[0, end - s]``."""
        s = to_scalar(s, RATIONAL)
        if not 0 <= s < self.end:
            raise ValueError(f"shift {s} outside [0, {self.end})")
        bps = [Fraction(0)]
        vals = []
        for i, v in enumerate(self.values):
            lo, hi = self.breakpoints[i], self.breakpoints[i + 1]
            if hi <= s:
                continue
            vals.append(v)
            bps.append(hi - s)
        return PiecewiseConstPath(bps, vals)


def ordered_exp_pc(path: PiecewiseConstPath, t=1) -> GradedSeries:
    """``exp(dt_1 X_1) exp(dt_2 X_2) ...`` over the pieces up to time t."""
    t = to_scalar(t, RATIONAL)
    if not 0 <= t <= path.end:
        raise ValueError(f"t = {t} outside [0, {path.end}]")
    out = GradedSeries.one(path.n, path.N)
    for i, v in enumerate(path.values):
        lo, hi = path.breakpoints[i], path.breakpoints[i + 1]
        if t <= lo:
            break
        dt = min(t, hi) - lo
        out = mul(out, exp(v.expand() * dt))
    return out


@dataclass
class PolyPath:
    """Path ``gamma(t) = sum_k t**k * t_coeffs[k]`` with Lie-element coefficients."""

    t_coeffs: list[GradedSeries]
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if not self.t_coeffs:
            raise ValueError("a polynomial path needs at least one coefficient")
        if len({(c.n, c.N, c.kind) for c in self.t_coeffs}) != 1:
            raise ValueError("all coefficients need the same (n, N, kind)")
        if self.check:
            cert = is_primitive_each(self.t_coeffs)
            if not cert.verdict:
                raise NotPrimitiveError("path coefficients are not Lie elements", cert)

    @property
    def n(self) -> int:
        return self.t_coeffs[0].n

    @property
    def N(self) -> int:
        return self.t_coeffs[0].N

    @property
    def kind(self) -> str:
        return self.t_coeffs[0].kind

    def at(self, t) -> GradedSeries:
        t = to_scalar(t, self.kind)
        out = GradedSeries.zero(self.n, self.N, self.kind)
        for k, c in enumerate(self.t_coeffs):
            out = add(out, c * t ** k)
        return out

    def degree_polys(self) -> list[tuple[int, list[GradedSeries]]]:
        """Split by word degree: ``[(j, [coeff of t**k restricted to degree j])]``."""
        out = []
        for j in range(1, self.N + 1):
            polys = [homogeneous_component(c, j) for c in self.t_coeffs]
            if any(not p.is_zero() for p in polys):
                out.append((j, polys))
        return out

    @classmethod
    def from_degree_polys(cls, n: int, N: int, degree_polys: Sequence[tuple[int, Sequence[GradedSeries]]],
                          kind: str = RATIONAL, check: bool = True) -> "PolyPath":
        width = max((len(p) for _, p in degree_polys), default=1)
        coeffs = [GradedSeries.zero(n, N, kind) for _ in range(width)]
        for _, polys in degree_polys:
            for k, p in enumerate(polys):
                coeffs[k] = add(coeffs[k], p)
        return cls(coeffs, check=check)

    @classmethod
    def constant(cls, x: GradedSeries) -> "PolyPath":
        return cls([x])


def _split(x: GradedSeries) -> dict[int, GradedSeries]:
    return {j: homogeneous_component(x, j) for j in range(1, x.N + 1)
            if any(len(w) == j for w in x._terms)}


def ordered_exp_poly_coeffs(path: PolyPath) -> list[GradedSeries]:
    """``E(t)`` as a polynomial in t: entry p is the coefficient of ``t**p``.

    Degree j of E satisfies ``d/dt E[j] = sum_{i+k=j, k>=1} E[i] gamma[k]`` with
    ``E[j](0) = 0`` for j > 0; the right side only involves lower degrees, so
    the parts are found one after the other by exact integration.
    """
    n, N, kind = path.n, path.N, path.kind
    gam: dict[int, dict[int, GradedSeries]] = {}
    for q, c in enumerate(path.t_coeffs):
        for k, part in _split(c).items():
            gam.setdefault(k, {})[q] = part
    one = GradedSeries.one(n, N, kind)
    E: list[dict[int, GradedSeries]] = [{0: one}]
    for j in range(1, N + 1):
        deriv: dict[int, GradedSeries] = {}
        for k in range(1, j + 1):
            for p, e in E[j - k].items():
                for q, g in gam.get(k, {}).items():
                    prod = mul(e, g)
                    deriv[p + q] = add(deriv[p + q], prod) if p + q in deriv else prod
        E.append({p + 1: d / (p + 1) for p, d in deriv.items() if not d.is_zero()})
    width = max(max(d, default=0) for d in E) + 1
    coeffs = [GradedSeries.zero(n, N, kind) for _ in range(width)]
    for d in E:
        for p, s in d.items():
            coeffs[p] = add(coeffs[p], s)
    return coeffs


def ordered_exp_poly(path: PolyPath, t=1) -> GradedSeries:
    """Exact ordered exponential of a polynomial path at time ``t >= 0``."""
    t = to_scalar(t, path.kind)
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    out = GradedSeries.zero(path.n, path.N, path.kind)
    for p, c in enumerate(ordered_exp_poly_coeffs(path)):
        out = add(out, c * t ** p)
    return out


def log_derivative_path(g: GradedSeries) -> PolyPath:
    """The path ``(M_t g)^-1 d/dt (M_t g)`` whose ordered exponential is ``M_t g``.

    With ``(M_t g)[j] = t**j g[j]`` the coefficient of ``t**k`` collects exactly
    the degree-(k+1) terms ``sum_{i+j=k+1} j * inv(g)[i] g[j]``.
    """
    cert = is_grouplike(g)
    if not cert.verdict:
        raise NotGrouplikeError("log_derivative_path needs a group-like series", cert)
    ginv = inverse(g)
    inv_parts = {j: homogeneous_component(ginv, j) for j in range(g.N + 1)}
    g_parts = {j: homogeneous_component(g, j) for j in range(1, g.N + 1)}
    coeffs = []
    for k in range(max(g.N, 1)):
        acc = GradedSeries.zero(g.n, g.N, g.kind)
        for j in range(1, k + 2):
            i = k + 1 - j
            if j in g_parts and i in inv_parts:
                acc = add(acc, mul(inv_parts[i], g_parts[j]) * j)
        coeffs.append(acc)
    return PolyPath(coeffs)


def _float_sampler(path) -> Callable[[float], GradedSeries]:
    if isinstance(path, PiecewiseConstPath):
        cache = {id(v): v.expand().to_float() for v in path.values}
        bp = [float(b) for b in path.breakpoints]

        def sample(t: float) -> GradedSeries:
            for i, v in enumerate(path.values):
                if t < bp[i + 1]:
                    return cache[id(v)]
            return cache[id(path.values[-1])]
        return sample
    if isinstance(path, PolyPath):
        fc = [c.to_float() for c in path.t_coeffs]
        return lambda t: PolyPath(fc, check=False).at(t)
    if callable(path):
        return path
    raise TypeError(f"cannot sample {type(path).__name__}")


# Heun's third-order tableau; nodes stay in [0, 1) so a cell never samples the
# next piece of a right-continuous path.
_RK_C = (0.0, 1 / 3, 2 / 3)
_RK_A = ((), (1 / 3,), (0.0, 2 / 3))
_RK_B = (0.25, 0.0, 0.75)


def volterra_solve(path, t: float, steps: int) -> GradedSeries:
    """Float solution of ``E(t) = 1 + int_0^t E(s) gamma(s) ds``.

    ``path`` is a callable ``float -> GradedSeries`` (float kind) or one of the
    exact path classes.  The integral is accumulated cell by cell on a uniform
    grid with an explicit third-order Runge-Kutta rule (no series exponentials
    are taken), so the error falls like ``steps**-3`` for smooth paths and for
    piecewise-constant paths whose breakpoints lie on the grid.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    sample = _float_sampler(path)
    t = float(t)
    h = t / steps
    E = None
    for k in range(steps):
        g = [sample((k + c) * h) for c in _RK_C]
        if g[0].kind != FLOAT:
            g = [x.to_float() for x in g]
        if E is None:
            E = GradedSeries.one(g[0].n, g[0].N, FLOAT)
        slopes: list[GradedSeries] = []
        for i in range(3):
            stage = E
            for a, s_ in zip(_RK_A[i], slopes):
                if a:
                    stage = add(stage, s_ * (h * a))
            slopes.append(mul(stage, g[i]))
        for b, s_ in zip(_RK_B, slopes):
            if b:
                E = add(E, s_ * (h * b))
    return E


def sample_pc(path: PolyPath, L: int) -> PiecewiseConstPath:
    """Piecewise-constant approximation taking the midpoint value on each of L cells."""
    if path.kind != RATIONAL:
        raise TypeError("sample_pc needs an exact path")
    bps = [Fraction(i, L) for i in range(L + 1)]
    vals = [project_to_lyndon(path.at(Fraction(2 * i + 1, 2 * L))) for i in range(L)]
    return PiecewiseConstPath(bps, vals)
