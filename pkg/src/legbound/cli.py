"""Command-line front end: ``legbound {coeffs,bound,compare,verify,tables}``.

Exit codes: 0 ok, 2 usage or parse error, 3 numerical failure, 4 a hard
check or soundness failure.  Output is assembled in full before anything is
written, so a failing run never leaves a partial table behind.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import tables, verify
from .bounds import BoundKind, BoundReport, BoundRow, compare, markdown_table
from .errors import ConvergenceError, IntegrationError, LegboundError, ParseError
from .fmt import fmt_float
from .funcdsl import builtin_fj, make_function_spec, parse_override
from .quadrature import DEFAULT_TOL, seminorm
from .series import legendre_series

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_HARD = 0, 2, 3, 4

KIND_ALIASES = {
    "bon": BoundKind.CoeffBon,
    "hco": BoundKind.CoeffHCo,
    "xiang": BoundKind.CoeffXiang,
    "wang21c": BoundKind.CoeffWang21,
    "thm2": BoundKind.TruncThm2,
    "wang21": BoundKind.TruncWang21,
    "wang18": BoundKind.TruncWang18,
    "shu12": BoundKind.TruncShu12,
}


class UsageError(Exception):
    pass


class HardFailure(Exception):
    """Raised with the fully rendered output and a diagnostic."""

    def __init__(self, output, message):
        super().__init__(message)
        self.output = output


@dataclass
class RunConfig:
    command: str
    func: Optional[str] = None
    builtin: Optional[str] = None
    j: Optional[int] = None
    t: float = 0.0
    n: list = field(default_factory=list)
    N: list = field(default_factory=list)
    r: list = field(default_factory=list)
    overrides: dict = field(default_factory=dict)
    fmt: str = "csv"
    out: Optional[str] = None
    tol: float = DEFAULT_TOL
    extra: dict = field(default_factory=dict)


def parse_range(text):
    """``'7'`` -> [7]; ``'2..16'`` -> [2, ..., 16]."""
    try:
        if ".." in text:
            lo, hi = (int(p) for p in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a..b, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _override(text):
    try:
        return parse_override(text)
    except LegboundError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_function_args(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--func", help="expression in x, e.g. 'exp(x)' or 'abs(x)^3'")
    g.add_argument("--builtin", choices=["fj"], help="builtin family f_j(x) = (x-t)^(j-1)|x-t|/j!")
    p.add_argument("--j", type=int, help="index of the builtin family")
    p.add_argument("--t", type=float, default=0.0, help="kink location of the builtin family")
    p.add_argument("--override", type=_override, action="append", default=[], metavar="KIND:R=V")


def _add_common(p):
    p.add_argument("--format", dest="fmt", choices=["csv", "json", "md"], default="csv")
    p.add_argument("--out", help="write to this path instead of stdout")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)


def build_parser():
    parser = argparse.ArgumentParser(prog="legbound", description="Legendre expansion bounds toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="Legendre coefficients a_n")
    _add_function_args(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n-max", type=int)
    g.add_argument("--n", type=parse_range)
    _add_common(p)

    p = sub.add_parser("bound", help="evaluate bound formulas")
    p.add_argument("--kind", action="append", choices=sorted(KIND_ALIASES), help="default: all kinds")
    _add_function_args(p, required=False)
    p.add_argument("--seminorm", type=float, help="seminorm value to use instead of a function")
    p.add_argument("--n", type=parse_range, help="coefficient index (coefficient kinds)")
    p.add_argument("--N", type=parse_range, help="truncation degree (truncation kinds)")
    p.add_argument("--r", type=parse_range, required=True)
    _add_common(p)

    p = sub.add_parser("compare", help="every bound against the measured error")
    _add_function_args(p)
    p.add_argument("--N", type=parse_range, required=True)
    p.add_argument("--r", type=parse_range, required=True)
    _add_common(p)

    p = sub.add_parser("verify", help="structural identities and inequality audits")
    p.add_argument("--lemma", required=True, choices=verify.LEMMAS)
    p.add_argument("--n", type=parse_range, required=True)
    p.add_argument("--r-max", type=int)
    _add_common(p)

    p = sub.add_parser("tables", help="recompute the printed comparison tables")
    p.add_argument("--which", type=int, required=True, choices=[1, 2])
    p.add_argument("--t", type=float, default=0.0, help="kink location for table 2")
    _add_common(p)
    return parser


def _config(ns):
    cfg = RunConfig(ns.command, fmt=ns.fmt, out=ns.out, tol=ns.tol)
    for name in ("func", "builtin", "j", "t"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    cfg.overrides = dict(getattr(ns, "override", []) or [])
    cfg.n = getattr(ns, "n", None) or []
    cfg.N = getattr(ns, "N", None) or []
    cfg.r = getattr(ns, "r", None) or []
    if ns.command == "coeffs" and ns.n_max is not None:
        if ns.n_max < 0:
            raise UsageError("--n-max must be nonnegative")
        cfg.n = list(range(ns.n_max + 1))
    for key in ("kind", "seminorm", "lemma", "r_max", "which"):
        if hasattr(ns, key):
            cfg.extra[key] = getattr(ns, key)
    if cfg.builtin and cfg.j is None:
        raise UsageError("--builtin fj requires --j")
    if cfg.tol < 1e-14 or cfg.tol >= 1:
        raise UsageError(f"--tol must lie in [1e-14, 1), got {cfg.tol!r}")
    return cfg


def load_function(cfg):
    if cfg.func is not None:
        return make_function_spec(cfg.func, cfg.overrides)
    f = builtin_fj(cfg.j, cfg.t)
    if cfg.overrides:
        f = dataclasses.replace(f, overrides={**f.overrides, **cfg.overrides})
    return f


def _render(obj, fmt):
    return {"csv": obj.to_csv, "json": obj.to_json, "md": obj.to_markdown}[fmt]()


def cmd_coeffs(cfg):
    f = load_function(cfg)
    s = legendre_series(f, max(cfg.n), cfg.tol)
    rows = [(n, s.coeffs[n]) for n in cfg.n]
    if cfg.fmt == "json":
        doc = {"coeffs": [a for _, a in rows], "n": [n for n, _ in rows], "N": max(cfg.n),
               "quadrature_order": s.quadrature_order, "function": f.name}
        return json.dumps(doc, indent=2) + "\n"
    body = [[str(n), fmt_float(a)] for n, a in rows]
    if cfg.fmt == "md":
        return markdown_table(["n", "a_n"], body)
    return "\n".join(["n,a_n"] + [",".join(b) for b in body]) + "\n"


def cmd_bound(cfg):
    kinds = [KIND_ALIASES[k] for k in cfg.extra.get("kind") or []] or list(BoundKind)
    value = cfg.extra.get("seminorm")
    f = None
    if value is None:
        if cfg.func is None and cfg.builtin is None:
            raise UsageError("bound needs --func, --builtin or --seminorm")
        f = load_function(cfg)
    rows = []
    for kind in kinds:
        idx_values = cfg.n if kind.level == "coefficient" else cfg.N
        if not idx_values:
            flag = "--n" if kind.level == "coefficient" else "--N"
            if cfg.extra.get("kind"):
                raise UsageError(f"{kind.name} needs {flag}")
            continue
        for idx in idx_values:
            for r in cfg.r:
                rr = 0 if kind is BoundKind.CoeffBon else r
                ok, why = kind.valid(idx, rr)
                if not ok:
                    rows.append(BoundRow(kind.name, idx, rr, None, None, None, f"inapplicable: {why}"))
                    continue
                sv = value if f is None else seminorm(f, kind.seminorm, rr, cfg.tol).value
                rows.append(BoundRow(kind.name, idx, rr, sv, kind.evaluate(idx, rr, sv), None, "ok"))
    if not rows:
        raise UsageError("nothing to evaluate; give --n and/or --N")
    return _render(BoundReport(rows, f.name if f else ""), cfg.fmt)


def cmd_compare(cfg):
    f = load_function(cfg)
    series = legendre_series(f, max(cfg.N) + 1, cfg.tol)
    rows = []
    for N in cfg.N:
        for r in cfg.r:
            rows.extend(compare(f, N, r, cfg.tol, series).rows)
    report = BoundReport(rows, f.name)
    out = _render(report, cfg.fmt)
    if report.violations:
        v = report.violations[0]
        raise HardFailure(out, f"soundness breach: {v.kind} at ({v.n_or_N}, {v.r}): "
                               f"measured {v.measured!r} > bound {v.bound!r}")
    return out


def cmd_verify(cfg):
    rep = verify.run(cfg.extra["lemma"], cfg.n, cfg.extra.get("r_max"))
    out = _render(rep, cfg.fmt)
    if rep.hard_failures:
        first = rep.hard_failures[0]
        detail = f" at x = {first.points[0][0]!r}" if first.points else ""
        raise HardFailure(out, f"hard failure: {first.to_line()}{detail}")
    return out


def cmd_tables(cfg):
    res = tables.table1() if cfg.extra["which"] == 1 else tables.table2(cfg.t)
    out = _render(res, cfg.fmt)
    if res.hard_failures:
        raise HardFailure(out, "hard check failed: " + res.hard_failures[0])
    return out


COMMANDS = {
    "coeffs": cmd_coeffs,
    "bound": cmd_bound,
    "compare": cmd_compare,
    "verify": cmd_verify,
    "tables": cmd_tables,
}


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(ns)
        text = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"legbound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"legbound: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HardFailure as exc:
        # the report is still useful for diagnosis; send it to stderr
        sys.stderr.write(exc.output)
        print(f"legbound: {exc}", file=sys.stderr)
        return EXIT_HARD
    except (ConvergenceError, IntegrationError) as exc:
        print(f"legbound: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (LegboundError, ValueError) as exc:
        print(f"legbound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, cfg.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
