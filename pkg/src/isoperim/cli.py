"""Command-line interface: ``isoperim <command> [options]``.

Exit codes: 0 success, 1 computation or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import analysis, dp, oracle, suites
from .fast import ENV_VAR, ExceptionTableError, fast_P, fast_Q, fast_range, load_exception_table
from .numeric import MAX_N, decompose, g_orbit, EXCEPTION_CEILING
from .values import ValueTable, load_cache, save_cache

ENGINES = ("fast", "dp", "brute", "direct")
FORMATS = ("text", "csv", "json", "bfile")


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--engine", choices=ENGINES, default="fast")
    p.add_argument("--fn", choices=("P", "Q", "both"), default="both")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--exceptions-file", default=None,
                   help=f"exception table CSV (overrides ${ENV_VAR})")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--memory-budget", type=float, default=dp.DEFAULT_MEMORY_BUDGET_MB,
                   help="MiB allowed for the dp helper tables")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="isoperim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="P(n) and/or Q(n) for one n")
    p.add_argument("n", type=int)

    p = sub.add_parser("table", parents=[common], help="values for 0..max")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--cache", default=None, help="binary cache file to reuse or create")

    p = sub.add_parser("verify", parents=[common], help="run the cross-engine and bound suites")
    p.add_argument("--max", type=int, default=2000, help="range for dp-backed suites")
    p.add_argument("--big", type=int, default=10**6, help="range for fast-engine bound suites")
    p.add_argument("--samples", type=int, default=100_000, help="random n for the quasi-explicit check")
    p.add_argument("--cross", default="brute,dp,fast,direct,quasi",
                   help="comma-separated engines to cross-check")

    p = sub.add_parser("exceptions", parents=[common], help="show or regenerate the exception table")
    p.add_argument("--regenerate", type=int, default=None, metavar="N")

    p = sub.add_parser("bounds", parents=[common], help="check the proven bounds on 1..max")
    p.add_argument("--max", type=int, default=10**6)

    p = sub.add_parser("triangle", parents=[common], help="values arranged by row f(n)")
    p.add_argument("--rows", type=int, default=10)
    p.add_argument("--series", choices=analysis.SERIES, default="P_minus_f")

    p = sub.add_parser("plotdata", parents=[common], help="n, value, drift CSV for plotting")
    p.add_argument("--max", type=int, required=True)

    p = sub.add_parser("phi", parents=[common], help="g-orbit of n and its length phi")
    p.add_argument("n", type=int)
    p.add_argument("--threshold", type=int, default=EXCEPTION_CEILING)
    return parser


def _fns(args) -> list[str]:
    return ["P", "Q"] if args.fn == "both" else [args.fn]


def _check_n(n: int, engine: str, budget: float) -> None:
    if n < 0 or n > MAX_N:
        raise UsageError(f"n must lie in 0..{MAX_N}")
    if engine == "brute" and n > oracle.DEFAULT_CEILING:
        raise UsageError(f"brute engine is limited to n <= {oracle.DEFAULT_CEILING}")
    if engine in ("dp", "direct"):
        try:
            dp._check_budget(n, engine == "direct", budget)
        except dp.MemoryBudgetError as e:
            raise UsageError(str(e)) from None


def _table(args):
    try:
        return load_exception_table(args.exceptions_file)
    except OSError as e:
        raise ExceptionTableError(str(e)) from None


def _range_values(args, N: int) -> ValueTable:
    _check_n(N, args.engine, args.memory_budget)
    if args.engine == "fast":
        return fast_range(N, _table(args))
    if args.engine == "dp":
        return dp.compute_values(N, args.memory_budget)
    raise UsageError(f"engine {args.engine!r} cannot tabulate a range; use fast or dp")


def _direct(route, n: int, args) -> int:
    # the scan reads volumes T(m) - n, which can exceed n; grow the tables until covered
    N = n
    while True:
        _check_n(N, "direct", args.memory_budget)
        try:
            return route(n, dp.build_helper_tables(N, memory_budget_mb=args.memory_budget))
        except dp.TableCoverageError:
            N *= 2


def cmd_compute(args, out) -> int:
    n = args.n
    _check_n(n, args.engine, args.memory_budget)
    if args.engine == "fast":
        t = _table(args)
        vals = {"P": lambda: fast_P(n, t), "Q": lambda: fast_Q(n, t)}
    elif args.engine == "brute":
        vals = {"P": lambda: oracle.brute_P(n), "Q": lambda: oracle.brute_Q(n)}
    elif args.engine == "dp":
        v = dp.compute_values(n, args.memory_budget)
        vals = {"P": lambda: int(v.P[n]), "Q": lambda: int(v.Q[n])}
    else:
        if n < 2:
            raise UsageError("direct engine needs n >= 2")
        vals = {"P": lambda: _direct(dp.direct_P, n, args), "Q": lambda: _direct(dp.direct_Q, n, args)}
    res = {k: int(vals[k]()) for k in _fns(args)}
    if args.format == "json":
        print(json.dumps({"n": n, "engine": args.engine, **res}, sort_keys=True), file=out)
    elif args.format == "csv":
        print(",".join(["n", *res, "engine"]), file=out)
        print(",".join([str(n), *map(str, res.values()), args.engine]), file=out)
    elif args.format == "bfile":
        if len(res) != 1:
            raise UsageError("bfile output needs --fn P or --fn Q")
        print(f"{n} {next(iter(res.values()))}", file=out)
    elif len(res) == 1:
        print(next(iter(res.values())), file=out)
    else:
        print(" ".join(f"{k}={v}" for k, v in res.items()) + f"  (engine: {args.engine})", file=out)
    return 0


def _emit_values(v: ValueTable, args, out) -> None:
    fns = _fns(args)
    cols = {"P": v.P, "Q": v.Q}
    if args.format == "bfile":
        if len(fns) != 1:
            raise UsageError("bfile output needs --fn P or --fn Q")
        for n, x in enumerate(cols[fns[0]].tolist()):
            print(f"{n} {x}", file=out)
    elif args.format == "json":
        d = {"engine": v.engine, "N": v.N, **{k: cols[k].tolist() for k in fns}}
        print(json.dumps(d, sort_keys=True), file=out)
    else:
        sep = "," if args.format == "csv" else " "
        print(sep.join(["n", *fns]), file=out)
        lists = [cols[k].tolist() for k in fns]
        for n in range(v.N + 1):
            print(sep.join([str(n), *(str(c[n]) for c in lists)]), file=out)


def cmd_table(args, out) -> int:
    v = None
    if args.cache and os.path.exists(args.cache):
        cached = load_cache(args.cache)
        if cached.N >= args.max:
            v = cached.truncate(args.max)
    if v is None:
        v = _range_values(args, args.max)
        if args.cache:
            save_cache(v, args.cache)
    _emit_values(v, args, out)
    return 0


def cmd_verify(args, out) -> int:
    cross = {c.strip() for c in args.cross.split(",") if c.strip()}
    unknown = cross - {"brute", "dp", "fast", "direct", "quasi"}
    if unknown:
        raise UsageError(f"unknown engines in --cross: {sorted(unknown)}")
    _check_n(args.max, "dp", args.memory_budget)
    results = suites.run_all(max_n=args.max, big=args.big, samples=args.samples,
                             cross=cross, table=_table(args), jobs=args.jobs)
    ok = all(r.passed for r in results)
    if args.format == "json":
        rep = {"pass": ok, "suites": [
            {"name": r.name, "pass": r.passed, "detail": r.detail, "failures": [str(x) for x in r.failures]}
            for r in results]}
        print(json.dumps(rep, sort_keys=True), file=out)
    else:
        for r in results:
            print(r.line(), file=out)
            for x in r.failures[:5]:
                print(f"      {x}", file=out)
        print(f"{'all suites passed' if ok else 'verification FAILED'} ({len(results)} suites)", file=out)
    return 0 if ok else 1


def cmd_exceptions(args, out) -> int:
    table = _table(args)
    if args.regenerate is None:
        print(table.to_csv(), end="", file=out)
        c = table.counts()
        print(f"# source={table.source} " + " ".join(f"{k}={v}" for k, v in c.items()), file=sys.stderr)
        return 0
    N = args.regenerate
    _check_n(N, "dp", args.memory_budget)
    regen = analysis.regenerate_exceptions(N, dp.compute_values(N, args.memory_budget))
    diff = analysis.diff_exceptions(regen, table, N)
    if args.format == "json":
        print(json.dumps({
            "N": N,
            "records": [[r.n, r.P, r.Q, int(r.p_identity_fails), int(r.q_identity_fails)] for r in regen],
            "diff": {k: [str(x) for x in v] for k, v in diff.items()},
        }, sort_keys=True), file=out)
    else:
        print("n,P,Q,p_exc,q_exc", file=out)
        for r in regen:
            print(f"{r.n},{r.P},{r.Q},{int(r.p_identity_fails)},{int(r.q_identity_fails)}", file=out)
        for k, v in diff.items():
            print(f"# {k}: {len(v)}" + (f" {v[:10]}" if v else ""), file=out)
    return 0 if not any(diff.values()) else 1


def cmd_bounds(args, out) -> int:
    v = _range_values(args, args.max)
    rep = analysis.check_bounds(args.max, values=v)
    if args.format == "json":
        print(rep.to_json(), file=out)
    else:
        for name, count in rep.checked.items():
            print(f"{name}: {count} checked", file=out)
        for viol in rep.violations[:20]:
            print(f"VIOLATION n={viol[0]} {viol[1]}: {viol[2]} vs {viol[3]}", file=out)
        print("pass" if rep.passed else f"FAIL ({len(rep.violations)} violations)", file=out)
    return 0 if rep.passed else 1


def cmd_triangle(args, out) -> int:
    if args.rows < 1:
        raise UsageError("--rows must be >= 1")
    top = args.rows * (args.rows - 1) // 2
    values = None if args.series == "FG" else _range_values(args, top)
    tri = analysis.triangle(args.series, args.rows, values)

    def cell(x):
        return f"{x[0]},{x[1]}" if isinstance(x, tuple) else str(x)

    if args.format == "json":
        print(json.dumps({"series": tri.series, "rows": tri.rows}), file=out)
    else:
        sep = ";" if args.format == "csv" else " "
        for row in tri.rows:
            print(sep.join(cell(x) for x in row), file=out)
    return 0


def cmd_plotdata(args, out) -> int:
    if args.fn == "both":
        raise UsageError("plotdata needs --fn P or --fn Q")
    v = _range_values(args, args.max)
    print(analysis.emit_drift_series(args.max, args.fn, v), end="", file=out)
    return 0


def cmd_phi(args, out) -> int:
    _check_n(args.n, "fast", args.memory_budget)
    if args.threshold < 0:
        raise UsageError("--threshold must be nonnegative")
    orb = g_orbit(args.n, args.threshold)
    if args.format == "json":
        print(json.dumps({"n": args.n, "threshold": orb.threshold, "orbit": list(orb.iterates),
                          "phi": orb.phi}), file=out)
    else:
        for i, x in enumerate(orb.iterates):
            d = decompose(x)
            print(f"g^{i}: {x}  (f={d.f}, g={d.g})", file=out)
        print(f"phi = {orb.phi}", file=out)
    return 0


COMMANDS = {
    "compute": cmd_compute, "table": cmd_table, "verify": cmd_verify, "exceptions": cmd_exceptions,
    "bounds": cmd_bounds, "triangle": cmd_triangle, "plotdata": cmd_plotdata, "phi": cmd_phi,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        parser.error(str(e))
    except ExceptionTableError as e:
        print(f"isoperim.fast: exception table rejected: {e}", file=sys.stderr)
    except (OSError, ValueError) as e:
        print(f"isoperim.{args.command}: {e}", file=sys.stderr)
    except (MemoryError, AssertionError, LookupError) as e:
        print(f"isoperim.dp: {type(e).__name__}: {e}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
