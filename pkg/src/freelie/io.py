"""JSON encodings of the package's objects.

Rationals are always written as ``{"num": p, "den": q}``, never as decimal
strings; floats as ``{"value": x}``.  Parsers raise :class:`ParseError` for
any malformed input so callers can tell bad files from bad mathematics.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import numpy as np

from .evalmap import EvalReport, MatrixTarget
from .hopf import Certificate, TensorSeries
from .lie import LieSeries
from .ordexp import PiecewiseConstPath, PolyPath
from .series import FLOAT, KINDS, RATIONAL, GradedSeries
from .words import word_key


class ParseError(ValueError):
    pass


def scalar_to_json(c) -> dict:
    if isinstance(c, float):
        return {"value": c}
    c = Fraction(c)
    return {"num": c.numerator, "den": c.denominator}


def rational_from_json(obj) -> Fraction:
    """Accept ``{"num", "den"}``, an int, or a ``"p/q"`` string."""
    try:
        if isinstance(obj, dict):
            if "num" not in obj:
                raise ParseError(f"rational needs 'num': {obj!r}")
            den = obj.get("den", 1)
            if den == 0:
                raise ParseError("zero denominator")
            return Fraction(int(obj["num"]), int(den))
        if isinstance(obj, bool):
            raise ParseError("booleans are not numbers")
        if isinstance(obj, int):
            return Fraction(obj)
        if isinstance(obj, str):
            return Fraction(obj)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"bad rational {obj!r}: {e}") from None
    raise ParseError(f"expected an exact rational, got {obj!r}")


def _coef_from_term(t: dict, kind: str):
    if kind == FLOAT:
        if "value" in t:
            return float(t["value"])
        return float(rational_from_json(t))
    if "value" in t:
        raise ParseError("float 'value' in a rational series")
    return rational_from_json(t)


def _word(obj, n: int, what: str = "word") -> tuple[int, ...]:
    if not isinstance(obj, list) or not all(isinstance(l, int) and not isinstance(l, bool) for l in obj):
        raise ParseError(f"{what} must be a list of integers, got {obj!r}")
    if any(not 1 <= l <= n for l in obj):
        raise ParseError(f"{what} {obj} has letters outside 1..{n}")
    return tuple(obj)


def _header(obj: dict) -> tuple[int, int]:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object")
    try:
        n, N = obj["n"], obj["maxdeg"]
    except KeyError as e:
        raise ParseError(f"missing field {e}") from None
    if not isinstance(n, int) or not isinstance(N, int) or n < 1 or N < 0:
        raise ParseError(f"need integer n >= 1 and maxdeg >= 0, got n={n!r}, maxdeg={N!r}")
    return n, N


# series ---------------------------------------------------------------------

def series_to_json(x: GradedSeries) -> dict:
    terms = []
    for w, c in x.items():
        d = {"word": list(w)}
        d.update(scalar_to_json(c))
        terms.append(d)
    return {"n": x.n, "maxdeg": x.N, "scalar": x.kind, "terms": terms}


def series_from_json(obj: dict) -> GradedSeries:
    n, N = _header(obj)
    kind = obj.get("scalar", RATIONAL)
    if kind not in KINDS:
        raise ParseError(f"unknown scalar kind {kind!r}")
    terms = obj.get("terms", [])
    if not isinstance(terms, list):
        raise ParseError("'terms' must be a list")
    out = {}
    prev = None
    for t in terms:
        if not isinstance(t, dict) or "word" not in t:
            raise ParseError(f"bad term {t!r}")
        w = _word(t["word"], n)
        if len(w) > N:
            raise ParseError(f"word {list(w)} longer than maxdeg {N}")
        if prev is not None and word_key(w) <= word_key(prev):
            raise ParseError("terms must be sorted in canonical order without duplicates"
                             f" ({list(prev)} then {list(w)})")
        prev = w
        out[w] = _coef_from_term(t, kind)
    return GradedSeries(n, N, out, kind)


def lie_to_json(x: LieSeries) -> dict:
    coords = []
    for w, c in x.items():
        d = {"lyndon": list(w)}
        d.update(scalar_to_json(c))
        coords.append(d)
    return {"n": x.n, "maxdeg": x.N, "coords": coords}


def lie_from_json(obj: dict) -> LieSeries:
    n, N = _header(obj)
    coords = obj.get("coords", [])
    if not isinstance(coords, list):
        raise ParseError("'coords' must be a list")
    out = {}
    for t in coords:
        if not isinstance(t, dict) or "lyndon" not in t:
            raise ParseError(f"bad coordinate {t!r}")
        w = _word(t["lyndon"], n, "lyndon")
        if w in out:
            raise ParseError(f"duplicate Lyndon word {list(w)}")
        out[w] = rational_from_json(t)
    try:
        return LieSeries(n, N, out)
    except ValueError as e:
        raise ParseError(str(e)) from None


def tensor_to_json(x: TensorSeries) -> dict:
    terms = []
    for (a, b), c in x.items():
        d = {"left": list(a), "right": list(b)}
        d.update(scalar_to_json(c))
        terms.append(d)
    return {"n": x.n, "maxdeg": x.N, "scalar": x.kind, "terms": terms}


def tensor_from_json(obj: dict) -> TensorSeries:
    n, N = _header(obj)
    kind = obj.get("scalar", RATIONAL)
    out = {}
    for t in obj.get("terms", []):
        k = (_word(t["left"], n, "left"), _word(t["right"], n, "right"))
        if k in out:
            raise ParseError(f"duplicate tensor term {k}")
        out[k] = _coef_from_term(t, kind)
    return TensorSeries(n, N, out, kind)


def certificate_to_json(c: Certificate) -> dict:
    return {
        "verdict": c.verdict,
        "violations": [{"alpha": list(v.alpha), "beta": list(v.beta), "defect": scalar_to_json(v.defect)}
                       for v in c.violations],
        "n_violations": c.n_violations,
    }


# paths --------------------------------------------------------------------

def path_to_json(p) -> dict:
    if isinstance(p, PiecewiseConstPath):
        return {"breakpoints": [scalar_to_json(b) for b in p.breakpoints],
                "values": [lie_to_json(v) for v in p.values]}
    if isinstance(p, PolyPath):
        return {"n": p.n, "maxdeg": p.N,
                "degree_polys": [{"j": j, "t_coeffs": [series_to_json(s) for s in polys]}
                                 for j, polys in p.degree_polys()]}
    raise TypeError(f"cannot encode {type(p).__name__}")


def path_from_json(obj: dict):
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object")
    if "breakpoints" in obj:
        try:
            bps = [rational_from_json(b) for b in obj["breakpoints"]]
            vals = [lie_from_json(v) for v in obj["values"]]
            return PiecewiseConstPath(bps, vals)
        except KeyError as e:
            raise ParseError(f"missing field {e}") from None
        except ParseError:
            raise
        except ValueError as e:
            raise ParseError(str(e)) from None
    if "degree_polys" in obj:
        entries = []
        for d in obj["degree_polys"]:
            polys = [series_from_json(s) for s in d["t_coeffs"]]
            for s in polys:
                if any(len(w) != d["j"] for w in s.terms):
                    raise ParseError(f"degree_polys entry j={d['j']} has a term of another degree")
            entries.append((d["j"], polys))
        if not entries:
            raise ParseError("empty polynomial path")
        first = entries[0][1][0]
        n = obj.get("n", first.n)
        N = obj.get("maxdeg", first.N)
        return PolyPath.from_degree_polys(n, N, entries, kind=first.kind)
    raise ParseError("path needs 'breakpoints' or 'degree_polys'")


# matrices -----------------------------------------------------------------

def _entry_from_json(v):
    if isinstance(v, float):
        return v
    return rational_from_json(v)


def target_from_json(obj: dict) -> MatrixTarget:
    if not isinstance(obj, dict) or "mats" not in obj:
        raise ParseError("matrix target needs 'mats'")
    mats = [[[_entry_from_json(v) for v in row] for row in m] for m in obj["mats"]]
    try:
        t = MatrixTarget.from_lists(mats, obj.get("norm", "max-row-sum"))
    except ValueError as e:
        raise ParseError(str(e)) from None
    if "n" in obj and obj["n"] != t.n:
        raise ParseError(f"n = {obj['n']} but {t.n} matrices given")
    if "dim" in obj and obj["dim"] != t.dim:
        raise ParseError(f"dim = {obj['dim']} but matrices are {t.dim} x {t.dim}")
    return t


def _entry_to_json(v):
    if isinstance(v, Fraction):
        return scalar_to_json(v)
    return float(v)


def matrix_to_json(a: np.ndarray) -> list:
    return [[_entry_to_json(v) for v in row] for row in a]


def target_to_json(t: MatrixTarget) -> dict:
    return {"n": t.n, "dim": t.dim, "mats": [matrix_to_json(m) for m in t.mats], "norm": t.norm}


def report_to_json(r: EvalReport) -> dict:
    return {"value": matrix_to_json(r.value), "trunc_degree": r.trunc_degree,
            "nilpotent_exact": r.nilpotent_exact, "nilpotency_index": r.nilpotency_index,
            "note": r.note, "defects": dict(r.defects)}


def load(path: str) -> Any:
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=1)
