"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad arguments,
3 an index outside the computable range, 4 path enumeration over budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from typing import List, Optional

from nclaurent import dynamics as dyn
from nclaurent import pathmodel as pm
from nclaurent.ncpoly import NoSolutionInSupport
from nclaurent.verify import full_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RANGE, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


def parse_range(text: str) -> List[int]:
    """``5``, ``-3..4`` or ``0:8`` (both ends included)."""
    text = text.strip()
    for sep in ("..", ":"):
        if sep in text[1:]:
            i = text.index(sep, 1)
            lo, hi = int(text[:i]), int(text[i + len(sep):])
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
    return [int(text)]


def _case(text: str) -> dyn.CaseTag:
    try:
        return dyn.CaseTag.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


@contextmanager
def _sink(path: Optional[str]):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh
    else:
        yield sys.stdout


def _values(cfg, systems: dyn.Systems):
    name = "u" if cfg.u else "R"
    for n in cfg.n:
        p = systems.u(cfg.case, n) if cfg.u else systems.R(cfg.case, n)
        yield name, n, p


def cmd_compute(cfg) -> int:
    top = max(abs(n) for n in cfg.n) + 2
    systems = dyn.Systems(min(2 * top + 2 if cfg.u else top, 8))
    rows = list(_values(cfg, systems))
    with _sink(cfg.output) as out:
        if cfg.format == "json":
            doc = {
                "case": cfg.case.value,
                "values": [{"name": f"{nm}_{n}", "n": n, "terms": p.to_json()} for nm, n, p in rows],
            }
            out.write(json.dumps(doc, indent=2) + "\n")
        elif len(rows) == 1:
            out.write(f"{rows[0][2]}\n")
        else:
            for nm, n, p in rows:
                out.write(f"{nm}_{n} = {p}\n")
    return EXIT_OK


def cmd_verify(cfg) -> int:
    rep = full_suite(cfg.nmax, inject_fault=cfg.inject_fault, budget=cfg.budget)
    with _sink(cfg.output) as out:
        out.write((rep.to_json() if cfg.format == "json" else rep.to_text()) + "\n")
    return EXIT_OK if rep.overall else EXIT_FAIL


def cmd_paths(cfg) -> int:
    model = pm.build_model(cfg.case)
    paths = list(pm.enumerate_paths(model, cfg.len, cfg.budget))
    total = sum((w for _, w in paths), dyn.NCPoly.zero())
    with _sink(cfg.output) as out:
        if cfg.format == "json":
            doc = {
                "case": cfg.case.value,
                "length": cfg.len,
                "paths": [
                    {"vertices": list(v), "steps": pm.symbolic_weight(model, v), "weight": w.to_json()}
                    for v, w in paths
                ],
                "count": len(paths),
                "partition_function": total.to_json(),
            }
            out.write(json.dumps(doc, indent=2) + "\n")
        else:
            for v, w in paths:
                out.write(f"{' '.join(map(str, v))}\t{pm.symbolic_weight(model, v)}\t{w}\n")
            out.write(f"# {len(paths)} paths\n# Z = {total}\n")
    return EXIT_OK


def cmd_stats(cfg) -> int:
    top = max(abs(n) for n in cfg.n) + 2
    systems = dyn.Systems(min(2 * top + 2 if cfg.u else top, 8))
    rows = []
    for nm, n, p in _values(cfg, systems):
        (x0, x1), (y0, y1) = p.degree_span()
        rows.append({"name": f"{nm}_{n}", "n": n, "terms": len(p), "max_coeff": p.max_coeff(),
                     "x_span": [x0, x1], "y_span": [y0, y1]})
    with _sink(cfg.output) as out:
        if cfg.format == "json":
            out.write(json.dumps({"case": cfg.case.value, "rows": rows}, indent=2) + "\n")
        else:
            out.write(f"{'n':>4} {'terms':>8} {'max':>6} {'x span':>10} {'y span':>10}\n")
            for r in rows:
                xs = "{}..{}".format(*r["x_span"])
                ys = "{}..{}".format(*r["y_span"])
                out.write(f"{r['n']:>4} {r['terms']:>8} {r['max_coeff']:>6} {xs:>10} {ys:>10}\n")
    return EXIT_OK


def cmd_series(cfg) -> int:
    model = pm.build_model(cfg.case)
    series = pm.continued_fraction_series(model, cfg.order)
    rep = pm.series_multiply_check(model, series)
    with _sink(cfg.output) as out:
        if cfg.format == "json":
            doc = {"case": cfg.case.value, "base": model.base.to_json(),
                   "coeffs": [c.to_json() for c in series.coeffs], "check": rep.overall}
            out.write(json.dumps(doc, indent=2) + "\n")
        else:
            out.write(f"# base {model.base}\n")
            for k, c in enumerate(series.coeffs):
                out.write(f"t^{k}: {c}\n")
            out.write(f"# (1 - tK + t^2 C) F check: {'PASS' if rep.overall else 'FAIL'}\n")
    return EXIT_OK if rep.overall else EXIT_FAIL


def cmd_probe(cfg) -> int:
    res = dyn.finite_type_probe(1, cfg.c, cfg.nmax, support_rounds=cfg.rounds)
    rep = res.report
    with _sink(cfg.output) as out:
        if cfg.format == "json":
            doc = json.loads(rep.to_json())
            doc.update({"period": res.period, "conjugation": res.conjugation, "complete": res.complete})
            out.write(json.dumps(doc, indent=2) + "\n")
        else:
            out.write(rep.to_text() + "\n")
    return EXIT_OK if rep.overall else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nclaurent", description="Noncommutative rank-2 cluster recursions, exactly.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("compute", parents=[common], help="print R_n or u_n")
    p.add_argument("--case", type=_case, required=True)
    p.add_argument("--n", type=parse_range, required=True, help="index or range lo..hi")
    p.add_argument("--u", action="store_true", help="print u_n instead of R_n")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", parents=[common], help="run the full property suite")
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--inject-fault", action="store_true", help="use a wrong K for (2,2)")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("paths", parents=[common], help="list the closed walks of a path model")
    p.add_argument("--case", type=_case, required=True)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("stats", parents=[common], help="term counts and degree spans")
    p.add_argument("--case", type=_case, required=True)
    p.add_argument("--n", type=parse_range, default=parse_range("0..8"))
    p.add_argument("--u", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("series", parents=[common], help="expand the continued fraction")
    p.add_argument("--case", type=_case, required=True)
    p.add_argument("--order", type=int, default=6)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("probe", parents=[common], help="finite-type (1,c) probe by exact division")
    p.add_argument("--c", type=int, choices=(1, 2, 3), default=1)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--rounds", type=int, default=2, help="support growth rounds for division")
    p.set_defaults(func=cmd_probe)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        cfg = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(cfg, "budget", None) is not None and cfg.budget <= 0:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    for attr in ("len", "order", "nmax"):
        v = getattr(cfg, attr, None)
        if v is not None and v < 0:
            print(f"error: --{attr} must be nonnegative", file=sys.stderr)
            return EXIT_USAGE
    try:
        return cfg.func(cfg)
    except dyn.IndexUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except pm.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NoSolutionInSupport as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, pm.UnsupportedCase, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
