"""Command-line front end.

Subcommands: ``eval``, ``table``, ``series``, ``cofactor`` and ``verify``.
Exit status is 0 on success, 2 on usage errors and 1 on numerical failures
(overflow, non-convergence, divergence).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Sequence

from .errors import ConvergenceError, DomainError, InputLengthError, NumericalError
from .ode import eval_ode, residual_report, residual_table_csv, residual_table_json
from .quadrature import DEFAULT_TOL, BSpec, FamilyParams, eval_Db, eval_F_family
from .scalars import EXACT, FLOATING, format_scalar, parse_scalar
from .series import DEFAULT_ORDER, dawson_derivatives, series_dump, series_eval
from .triangular import cofactor_closed_form, cofactor_oracle, parse_matrix

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _real(text: str) -> float:
    v = float(parse_scalar(text))
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_grid(start: float, stop: float, step: float) -> list[float]:
    """Points ``start + j*step``; ``stop`` is included when it lands on the grid.

    "Lands" means ``(stop - start) / step`` is within ``1e-12`` (relative) of
    an integer.  Points are generated by multiplication, not accumulation.
    """
    if step == 0 or not all(map(math.isfinite, (start, stop, step))):
        raise UsageError("grid step must be nonzero and all bounds finite")
    span = (stop - start) / step
    if span < 0:
        raise UsageError("grid step points away from the end of the range")
    nearest = round(span)
    if abs(span - nearest) <= 1e-12 * max(1.0, abs(span)):
        count = nearest
        points = [start + j * step for j in range(count)] + [stop]
    else:
        count = math.floor(span)
        points = [start + j * step for j in range(count + 1)]
    return points


def parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be A:B:H, got {text!r}")
    try:
        a, b, h = (_real(p) for p in parts)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise UsageError(str(exc)) from exc
    return build_grid(a, b, h)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gendawson", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate D_b(x) or the two-parameter family at one point")
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--b", help="b-spec: poly:c0,c1,... | mono:LAMBDA,P | series:d0,d1,...")
    src.add_argument("--family", help="LAMBDA,P,MU,S")
    e.add_argument("--x", type=_real, required=True)
    e.add_argument("--method", choices=("series", "quad", "ode"), default="quad")
    e.add_argument("--tol", type=float, default=DEFAULT_TOL)
    e.add_argument("--order", type=_positive_int, default=DEFAULT_ORDER)
    e.add_argument("--step", type=float, default=1e-3, help="RK4 step for --method ode")
    e.add_argument("--format", choices=("text", "json"), default="text")

    t = sub.add_parser("table", help="tabulate D_b over a range")
    t.add_argument("--b", required=True)
    t.add_argument("--from", dest="start", type=_real, required=True)
    t.add_argument("--to", dest="stop", type=_real, required=True)
    t.add_argument("--step", type=_real, required=True)
    t.add_argument("--method", choices=("series", "quad", "ode"), default="quad")
    t.add_argument("--tol", type=float, default=DEFAULT_TOL)
    t.add_argument("--order", type=_positive_int, default=DEFAULT_ORDER)
    t.add_argument("--format", choices=("csv", "json"), default="csv")

    s = sub.add_parser("series", help="dump MacLaurin derivatives as JSON")
    s.add_argument("--b", required=True)
    s.add_argument("--order", type=_positive_int, default=DEFAULT_ORDER)
    s.add_argument("--rational", action="store_true", help="exact p/q output")

    c = sub.add_parser("cofactor", help="closed-form cofactor of a unit lower-triangular matrix")
    c.add_argument("--matrix", type=Path, required=True)
    c.add_argument("--i", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--oracle", action="store_true", help="also compute the minor directly")

    v = sub.add_parser("verify", help="cross-check quadrature, ODE and series on a grid")
    v.add_argument("--b", required=True)
    v.add_argument("--grid", required=True, help="A:B:H")
    v.add_argument("--tol", type=float, default=DEFAULT_TOL)
    v.add_argument("--order", type=_positive_int, default=DEFAULT_ORDER)
    v.add_argument("--format", choices=("csv", "json"), default="csv")
    return p


def _bspec(text: str) -> BSpec:
    try:
        return BSpec.parse(text)
    except (ValueError, DomainError) as exc:
        raise UsageError(f"bad b-spec {text!r}: {exc}") from exc


def _evaluate(b: BSpec, x: float, method: str, tol: float, order: int, step: float = 1e-3):
    if method == "quad":
        return eval_Db(b, x, tol)
    if method == "ode":
        return eval_ode(b, x, step)
    d = dawson_derivatives(b.derivs_at_zero(max(order - 1, 1)), order).to_floating()
    return series_eval(d, x)


def _cmd_eval(args, out) -> int:
    if not 0 < args.tol < 1:
        raise UsageError("--tol must lie in (0, 1)")
    if args.family is not None:
        try:
            fp = FamilyParams.parse(args.family)
        except (ValueError, DomainError) as exc:
            raise UsageError(f"bad --family: {exc}") from exc
        rep = eval_F_family(fp, args.x, args.tol)
    else:
        rep = _evaluate(_bspec(args.b), args.x, args.method, args.tol, args.order, args.step)
    if args.format == "json":
        out.write(json.dumps({"x": args.x, "value": rep.value, "est_error": rep.est_error,
                              "method": rep.method, "detail": rep.detail}) + "\n")
    else:
        out.write(f"value {rep.value!r}\nest_error {rep.est_error!r}\nmethod {rep.method}\n")
    return EXIT_OK


def _cmd_table(args, out) -> int:
    b = _bspec(args.b)
    xs = build_grid(args.start, args.stop, args.step)
    reps = [_evaluate(b, x, args.method, args.tol, args.order) for x in xs]
    if args.format == "json":
        rows = [{"x": x, "value": r.value, "est_error": r.est_error, "method": r.method}
                for x, r in zip(xs, reps)]
        out.write(json.dumps({"b_spec": b.label, "rows": rows}) + "\n")
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "value", "est_error", "method"])
        for x, r in zip(xs, reps):
            w.writerow([f"{x:.17g}", f"{r.value:.17g}", f"{r.est_error:.17g}", r.method])
        out.write(buf.getvalue())
    return EXIT_OK


def _cmd_series(args, out) -> int:
    b = _bspec(args.b)
    derivs = b.derivs_at_zero(max(args.order - 1, 1), EXACT if args.rational else FLOATING)
    out.write(json.dumps(series_dump(b.label, derivs, args.order)) + "\n")
    return EXIT_OK


def _cmd_cofactor(args, out) -> int:
    try:
        m = parse_matrix(args.matrix.read_text())
        closed = cofactor_closed_form(m, args.i, args.n)
    except OSError as exc:
        raise UsageError(f"cannot read {args.matrix}: {exc}") from exc
    except (ValueError, DomainError) as exc:
        raise UsageError(str(exc)) from exc
    out.write(f"closed_form {format_scalar(closed)}\n")
    if args.oracle:
        oracle = cofactor_oracle(m, args.i, args.i + args.n)
        out.write(f"oracle {format_scalar(oracle)}\n")
        out.write(f"verdict {'EQUAL' if oracle == closed else 'DIFFERENT'}\n")
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    b = _bspec(args.b)
    rows = residual_report(b, parse_grid(args.grid), args.tol, args.order)
    out.write(residual_table_json(rows) + "\n" if args.format == "json" else residual_table_csv(rows))
    return EXIT_OK


_COMMANDS = {
    "eval": _cmd_eval,
    "table": _cmd_table,
    "series": _cmd_series,
    "cofactor": _cmd_cofactor,
    "verify": _cmd_verify,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"gendawson: usage error: {exc}\n")
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, out)
    except (UsageError, InputLengthError) as exc:
        err.write(f"gendawson: usage error: {exc}\n")
        return EXIT_USAGE
    except NumericalError as exc:
        if getattr(args, "format", None) == "json":
            payload = {"error": type(exc).__name__, "message": str(exc)}
            if isinstance(exc, ConvergenceError):
                payload["best_estimate"] = exc.best_estimate
            out.write(json.dumps(payload) + "\n")
        err.write(f"gendawson: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
