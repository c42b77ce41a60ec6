"""Command-line entry point.

Subcommands:
  compute     solve a series and print its coefficient table (json/csv/tex)
  verify      run the theorem/oracle check suites, nonzero exit on failure
  conjecture  run the conjecture sweeps (corolla-denominator, newton, partition)
  cache       maintain the on-disk coefficient cache (list, gc, verify-hashes)

Output is deterministic: two identical invocations produce byte-identical
output, and parallel runs (--workers) agree with single-worker runs.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys

from . import cache as cache_mod
from . import solvers as sv
from . import trees as tr
from . import verify as vf
from .algebra import factor_cyclotomic, xpoly_fraction, QPoly, QRat, XPoly
from .serialize import canonical_json, series_from_obj, value_to_obj
from .series import TreeSeries

CACHE_DIR_ENV = "ARBORQ_CACHE_DIR"
COSTLY_ORDER = 9

SERIES_RING = {
    "pawn": "xpoly",
    "E": "qrat",
    "F": "qrat",
    "G": "qrat",
    "omega": "qrat",
    "omega_bar": "qrat",
    "pawn_at": "qrat",
}


def _compute_series(name: str, n: int | None, order: int, workers: int) -> TreeSeries:
    if name == "pawn":
        return sv.solve_pawn(order, workers)
    if name == "E":
        return sv.series_E(order)
    if name == "F":
        if n is None or n < 0:
            raise SystemExit("error: series F requires --n >= 0")
        return sv.coloring_series(order, n, "weak")
    if name == "G":
        if n is None or n < 0:
            raise SystemExit("error: series G requires --n >= 0")
        return sv.coloring_series(order, n, "strict")
    if name == "omega":
        return sv.solve_omega(order, workers)
    if name == "omega_bar":
        return sv.solve_omega_bar(order, workers)
    if name == "pawn_at":
        if n is None:
            raise SystemExit("error: series pawn_at requires --n (the q-integer)")
        return sv.eval_pawn_at_qint(sv.solve_pawn(order, workers), n)
    raise SystemExit(f"error: unknown series {name!r}")


# ---------------------------------------------------------------------------
# Renderers


def _render_json(payload: dict) -> str:
    return canonical_json(payload) + "\n"


def _render_csv(series: TreeSeries) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["size", "encoding", "coefficient"])
    for t, v in series.items():
        writer.writerow([tr.size(t), tr.encoding(t), str(v)])
    return buf.getvalue()


def _qpoly_tex(p: QPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e in range(p.degree, -1, -1):
        c = p.coeff(e)
        if c == 0:
            continue
        mono = "" if e == 0 else ("q" if e == 1 else f"q^{{{e}}}")
        if e == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            mag = str(abs(c)) if abs(c).denominator == 1 else f"\\tfrac{{{abs(c.numerator)}}}{{{c.denominator}}}"
            body = f"{mag}{mono}"
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(f"{sign} {body}" if parts else f"{sign}{body}")
    return " ".join(parts)


def _cyclo_tex(den: QPoly) -> str:
    if den.degree == 0:
        return ""
    unit, factors, remainder = factor_cyclotomic(den)
    bits = []
    if unit != 1:
        bits.append(str(unit))
    for d in sorted(factors):
        m = factors[d]
        bits.append(f"\\Phi_{{{d}}}" + (f"^{{{m}}}" if m > 1 else ""))
    if remainder.degree > 0:
        bits.append(f"({_qpoly_tex(remainder)})")
    return "".join(bits)


def _qrat_tex(r: QRat) -> str:
    num = _qpoly_tex(r.num)
    if r.den.degree == 0:
        return num
    return f"\\frac{{{num}}}{{{_cyclo_tex(r.den)}}}"


def _xpoly_tex(f: XPoly) -> str:
    num, den = xpoly_fraction(f)
    rows = []
    for j in range(num.degree_x, -1, -1):
        row = num.x_slice(j)
        if row.is_zero():
            continue
        if j == 0:
            rows.append(_qpoly_tex(row))
        else:
            mono = "x" if j == 1 else f"x^{{{j}}}"
            body = _qpoly_tex(row)
            rows.append(f"({body}){mono}" if " " in body else f"{body}{mono}")
    numerator = " + ".join(rows) if rows else "0"
    if den.degree == 0:
        return numerator
    return f"\\frac{{{numerator}}}{{{_cyclo_tex(den)}}}"


def _render_tex(series: TreeSeries, name: str) -> str:
    lines = [f"% series {name}, order {series.order}", "\\begin{align*}"]
    for t, v in series.items():
        coeff = _xpoly_tex(v) if series.ring == "xpoly" else _qrat_tex(v)
        if not coeff.startswith("\\frac") and " " in coeff:
            coeff = f"\\left({coeff}\\right)"
        aut = tr.aut_order(t)
        tree_part = (
            f"\\frac{{\\texttt{{{tr.encoding(t)}}}}}{{{aut}}}"
            if aut > 1
            else f"\\texttt{{{tr.encoding(t)}}}"
        )
        lines.append(f"&{coeff} \\cdot {tree_part} \\\\")
    lines.append("\\end{align*}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Subcommands


def cmd_compute(args) -> int:
    if args.order >= COSTLY_ORDER:
        print(
            f"warning: order {args.order} runs exact bivariate arithmetic over "
            f"hundreds of tree classes; expect a long run",
            file=sys.stderr,
        )
    params = {} if args.n is None else {"n": args.n}
    key = cache_mod.make_key(args.series, params, args.order)
    cache_dir = args.cache_dir or os.environ.get(CACHE_DIR_ENV)

    payload = None
    series = None
    if cache_dir:
        try:
            payload = cache_mod.load(cache_dir, key)
        except cache_mod.CacheError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    if payload is not None:
        series = series_from_obj(
            {"order": payload["order"], "ring": SERIES_RING[args.series],
             "entries": payload["entries"]}
        )
    else:
        series = _compute_series(args.series, args.n, args.order, args.workers)
        entries = [[tr.encoding(t), value_to_obj(series.ring, v)] for t, v in series.items()]
        payload = {
            "series": args.series,
            "params": params,
            "order": args.order,
            "entries": entries,
        }
        if cache_dir:
            cache_mod.store(cache_dir, key, payload)

    if args.format == "json":
        text = _render_json(payload)
    elif args.format == "csv":
        text = _render_csv(series)
    else:
        text = _render_tex(series, args.series)

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition("..")
        return int(lo), int(hi or lo)
    except ValueError:
        raise SystemExit(f"error: bad range {text!r}, expected e.g. 2..4")


def cmd_verify(args) -> int:
    if args.suite == "all":
        names = list(vf.THEOREM_NAMES)
    else:
        names = [s.strip() for s in args.suite.split(",") if s.strip()]
    kwargs = {}
    if args.n_range:
        kwargs["n_range"] = _parse_range(args.n_range)
    if args.coloring_bound:
        kwargs["bound"] = args.coloring_bound
    if args.workers and args.workers > 1:
        kwargs["workers"] = args.workers
    failures = 0
    for name in names:
        report = vf.check_theorem(name, args.max_order, **kwargs)
        status = report.status.upper()
        print(f"{status:4s}  {name:24s} {report.seconds:8.2f}s")
        if not report.ok():
            failures += 1
            print(f"      witness: {canonical_json(report.witness)}")
    print(f"{len(names) - failures}/{len(names)} checks passed")
    return 1 if failures else 0


def cmd_conjecture(args) -> int:
    def progress(msg: str):
        print(f"  .. {msg}", file=sys.stderr)

    if args.name == "corolla-denominator":
        report = vf.check_corolla_denominator(args.max_n, progress=progress)
    elif args.name == "newton":
        report = vf.check_newton_sweep(args.max_size, progress=progress)
    elif args.name == "partition":
        try:
            lam = tuple(int(p) for p in args.lam.split(",") if p) if args.lam else ()
        except ValueError:
            raise SystemExit(f"error: bad partition {args.lam!r}, expected e.g. 2,1")
        try:
            report = vf.check_partition_conjecture(lam, args.k, args.order_cap)
        except ValueError as exc:
            print(f"INCONCLUSIVE  partition: {exc}")
            return 0
    else:
        raise SystemExit(f"error: unknown conjecture {args.name!r}")
    print(f"{report.status.upper():4s}  {report.name:24s} {report.seconds:8.2f}s")
    if not report.ok():
        print(f"      witness: {canonical_json(report.witness)}")
        return 1
    return 0


def cmd_cache(args) -> int:
    directory = args.dir or os.environ.get(CACHE_DIR_ENV)
    if not directory:
        print(f"error: give --dir or set {CACHE_DIR_ENV}", file=sys.stderr)
        return 2
    if args.action == "list":
        entries = cache_mod.list_entries(directory)
        for e in entries:
            if e.get("status") == "ok":
                print(f"{e['file']}  {e['series']}  params={canonical_json(e['params'])} "
                      f"order={e['order']} v{e['version']} sha={e['sha256']}")
            else:
                print(f"{e['file']}  {e['status']}")
        print(f"{len(entries)} entries")
        return 0
    if args.action == "gc":
        removed = cache_mod.gc(directory)
        print(f"removed {removed} stale entries")
        return 0
    if args.action == "verify-hashes":
        results = cache_mod.verify_hashes(directory)
        bad = [name for name, ok in results if not ok]
        for name, ok in results:
            print(f"{'ok  ' if ok else 'BAD '} {name}")
        print(f"{len(results) - len(bad)}/{len(results)} entries verified")
        return 1 if bad else 0
    raise SystemExit(f"error: unknown cache action {args.action!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arborq",
        description="Exact tree-indexed q-series: compute, specialize, verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute a series coefficient table")
    p.add_argument("series", choices=sorted(SERIES_RING))
    p.add_argument("--n", type=int, default=None,
                   help="parameter for F/G (color bound) or pawn_at (q-integer)")
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--format", choices=("json", "csv", "tex"), default="json")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None, help="write to a file instead of stdout")
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("verify", help="run theorem and oracle check suites")
    p.add_argument("--suite", default="all",
                   help="'all' or comma-separated check names "
                        f"({', '.join(vf.THEOREM_NAMES)})")
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--n-range", default=None, help="like 2..4")
    p.add_argument("--coloring-bound", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("conjecture", help="run a conjecture sweep")
    p.add_argument("name", choices=("corolla-denominator", "newton", "partition"))
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--max-size", type=int, default=8)
    p.add_argument("--lam", default="", help="partition, comma separated (e.g. 2,1)")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--order-cap", type=int, default=12)
    p.set_defaults(fn=cmd_conjecture)

    p = sub.add_parser("cache", help="maintain the on-disk cache")
    p.add_argument("action", choices=("list", "gc", "verify-hashes"))
    p.add_argument("--dir", default=None)
    p.set_defaults(fn=cmd_cache)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
