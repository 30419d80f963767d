"""Command-line front end.  JSON in, JSON out.

Exit codes: 0 success (or verdict true), 1 verdict false, 2 parse error,
3 precondition violation.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import io
from .evalmap import eval_series, exp_vs_Exp, min_xi
from .hopf import coproduct, is_grouplike, is_primitive
from .lie import BCHSelfCheckError, LieSeries, NotPrimitiveError, bch, log_product_series
from .ordexp import (NotGrouplikeError, PiecewiseConstPath, PolyPath, ordered_exp_pc,
                     ordered_exp_poly, volterra_solve)
from .series import FLOAT, RATIONAL, ln, xi_norm

EXIT_OK, EXIT_FALSE, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


class PreconditionError(Exception):
    pass


@dataclass
class CommandConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    maxdeg: int | None = None
    n: int | None = None
    scalar: str = RATIONAL
    out: str | None = None
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.maxdeg is not None and self.maxdeg < 0:
            raise PreconditionError("--maxdeg must be >= 0")
        if self.n is not None and self.n < 1:
            raise PreconditionError("--n must be >= 1")
        if self.scalar not in (RATIONAL, FLOAT):
            raise PreconditionError(f"--scalar must be rational or float, got {self.scalar}")


def _expect_n(cfg: CommandConfig, n: int) -> None:
    if cfg.n is not None and cfg.n != n:
        raise PreconditionError(f"--n {cfg.n} disagrees with input alphabet size {n}")


def _with_degree(x: LieSeries, N: int | None) -> LieSeries:
    return x if N is None else LieSeries(x.n, N, x.coords)


def cmd_bch(cfg: CommandConfig, args) -> tuple[dict, int]:
    x = _with_degree(io.lie_from_json(io.load(args.x)), cfg.maxdeg)
    y = _with_degree(io.lie_from_json(io.load(args.y)), cfg.maxdeg)
    _expect_n(cfg, x.n)
    if x.n != y.n:
        raise PreconditionError(f"alphabet mismatch: {x.n} != {y.n}")
    if cfg.maxdeg is None and x.N != y.N:
        raise PreconditionError(f"maxdeg mismatch: {x.N} != {y.N}; pass --maxdeg")
    try:
        z = bch(x, y)
    except BCHSelfCheckError as e:
        return {"error": str(e), "certificate": io.certificate_to_json(e.certificate)}, EXIT_FALSE
    return io.lie_to_json(z), EXIT_OK


def cmd_certify(cfg: CommandConfig, args) -> tuple[dict, int]:
    x = io.series_from_json(io.load(args.series))
    _expect_n(cfg, x.n)
    tol = cfg.tolerance if x.kind == FLOAT else 0
    cert = is_primitive(x, tol=tol) if args.mode == "primitive" else is_grouplike(x, tol=tol)
    return io.certificate_to_json(cert), EXIT_OK if cert.verdict else EXIT_FALSE


def cmd_coproduct(cfg: CommandConfig, args) -> tuple[dict, int]:
    x = io.series_from_json(io.load(args.series))
    _expect_n(cfg, x.n)
    return io.tensor_to_json(coproduct(x)), EXIT_OK


def cmd_ordexp(cfg: CommandConfig, args) -> tuple[dict, int]:
    path = io.path_from_json(io.load(args.path))
    _expect_n(cfg, path.n)
    if cfg.maxdeg is not None and cfg.maxdeg != path.N:
        raise PreconditionError(f"path has maxdeg {path.N}, --maxdeg says {cfg.maxdeg}")
    try:
        t = Fraction(args.t)
    except ValueError:
        raise io.ParseError(f"bad time {args.t!r}") from None
    if cfg.scalar == FLOAT:
        if t < 0:
            raise PreconditionError("t must be >= 0")
        value = volterra_solve(path, float(t), args.steps)
        cert = is_grouplike(value, tol=cfg.tolerance)
    else:
        try:
            if isinstance(path, PiecewiseConstPath):
                value = ordered_exp_pc(path, t)
            else:
                value = ordered_exp_poly(path, t)
        except ValueError as e:
            raise PreconditionError(str(e)) from None
        cert = is_grouplike(value)
    out = {"value": io.series_to_json(value), "certificate": io.certificate_to_json(cert)}
    return out, EXIT_OK if cert.verdict else EXIT_FALSE


def cmd_eval(cfg: CommandConfig, args) -> tuple[dict, int]:
    x = io.series_from_json(io.load(args.series))
    _expect_n(cfg, x.n)
    target = io.target_from_json(io.load(args.target))
    if x.n != target.n:
        raise PreconditionError(f"series over {x.n} letters but target has {target.n} matrices")
    report = eval_series(x, target)
    if x.kind == RATIONAL and x.constant == 1 and is_grouplike(x).verdict:
        z = ln(x)
        if is_primitive(z).verdict:
            report.defects["exp_vs_Exp"] = exp_vs_Exp(z, target)
    return io.report_to_json(report), EXIT_OK


def cmd_norms(cfg: CommandConfig, args) -> tuple[dict, int]:
    x = io.series_from_json(io.load(args.series))
    _expect_n(cfg, x.n)
    xis = [Fraction(v) for v in args.xi]
    if any(v <= 0 for v in xis):
        raise PreconditionError("xi must be positive")
    rows = []
    for xi in xis:
        v = xi_norm(x, xi if x.kind == RATIONAL else float(xi))
        rows.append({"xi": io.scalar_to_json(xi), "norm": io.scalar_to_json(v)})
    out = {"norms": rows}
    if args.target:
        target = io.target_from_json(io.load(args.target))
        m = min_xi(target)
        out["min_xi"] = io.scalar_to_json(m) if isinstance(m, Fraction) else {"value": float(m)}
    return out, EXIT_OK


def counterexample_rows(t: Fraction, maxdeg: int) -> list[dict]:
    """Alternating-word coefficients of ln(exp(t w1) exp(t w2)) next to -t^(2m)/(2m)."""
    s = log_product_series(t, maxdeg)
    rows = []
    for m in range(1, maxdeg // 2 + 1):
        c12 = s.coeff((1, 2) * m)
        c21 = s.coeff((2, 1) * m)
        pred = -t ** (2 * m) / (2 * m)
        rows.append({"m": m, "coef_12": c12, "coef_21": c21, "sum": c12 + c21,
                     "predicted_each": pred, "predicted_sum": 2 * pred,
                     "match_12": c12 == pred, "match_21": c21 == pred,
                     "match_sum": c12 + c21 == 2 * pred})
    return rows


def cmd_counterexample(cfg: CommandConfig, args) -> tuple[dict, int]:
    try:
        t = Fraction(args.t)
    except ValueError:
        raise io.ParseError(f"bad time {args.t!r}") from None
    maxdeg = cfg.maxdeg if cfg.maxdeg is not None else 4
    if maxdeg < 2:
        raise PreconditionError("--maxdeg must be >= 2")
    rows = counterexample_rows(t, maxdeg)
    enc = [{k: io.scalar_to_json(v) if isinstance(v, Fraction) else v for k, v in r.items()}
           for r in rows]
    ok = all(r["match_12"] and r["match_21"] for r in rows)
    return {"t": io.scalar_to_json(t), "maxdeg": maxdeg, "rows": enc, "all_match": ok}, \
        EXIT_OK if ok else EXIT_FALSE


COMMANDS = {
    "bch": cmd_bch,
    "certify": cmd_certify,
    "coproduct": cmd_coproduct,
    "ordexp": cmd_ordexp,
    "eval": cmd_eval,
    "norms": cmd_norms,
    "counterexample": cmd_counterexample,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="alphabet size (checked against inputs)")
    common.add_argument("--maxdeg", type=int, help="truncation degree N")
    common.add_argument("--scalar", choices=[RATIONAL, FLOAT], default=RATIONAL)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--tolerance", type=float, default=1e-9, help="float mode only")

    p = argparse.ArgumentParser(prog="freelie", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bch", parents=[common], help="z with exp(x)exp(y) = exp(z)")
    s.add_argument("x")
    s.add_argument("y")

    s = sub.add_parser("certify", parents=[common], help="primitive / group-like certificate")
    s.add_argument("series")
    s.add_argument("--mode", choices=["primitive", "grouplike"], required=True)

    s = sub.add_parser("coproduct", parents=[common])
    s.add_argument("series")

    s = sub.add_parser("ordexp", parents=[common], help="ordered exponential of a path")
    s.add_argument("path")
    s.add_argument("--t", default="1")
    s.add_argument("--steps", type=int, default=1024, help="grid size in float mode")

    s = sub.add_parser("eval", parents=[common], help="evaluate a series at matrices")
    s.add_argument("series")
    s.add_argument("target")

    s = sub.add_parser("norms", parents=[common], help="weighted l1 norms")
    s.add_argument("series")
    s.add_argument("--xi", nargs="+", default=["1"])
    s.add_argument("--target", help="also report the minimal xi for this matrix target")

    s = sub.add_parser("counterexample", parents=[common],
                       help="alternating-word coefficients of ln(exp(t w1) exp(t w2))")
    s.add_argument("--t", default="1")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    try:
        cfg = CommandConfig(args.command, maxdeg=args.maxdeg, n=args.n, scalar=args.scalar,
                            out=args.out, tolerance=args.tolerance)
        result, code = COMMANDS[args.command](cfg, args)
    except (io.ParseError, OSError, KeyError, TypeError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, NotPrimitiveError, NotGrouplikeError, ValueError) as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    text = io.dumps(result)
    if cfg.out:
        with open(cfg.out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
