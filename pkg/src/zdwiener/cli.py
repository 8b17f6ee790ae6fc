"""Command-line entry point.

Exit codes: 0 verified, 1 formula/oracle mismatch, 2 usage or parse
error (including unwritable output), 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formulas as fm
from . import qcount
from . import zdgraph as zg
from .errors import InvalidParameterError, ResourceLimitError, ZDError
from .export import FORMATS, render
from .matring import RingSpec, VertexClass, parse_ring_spec
from .polyrec import evaluate_polynomial, wiener_simple_polynomial
from .verify import run_sweep, run_verify, sweep_csv, sweep_json

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _ring(args) -> RingSpec:
    text = args.ring_opt or args.ring
    if not text:
        raise _Usage("a ring is required, e.g. 'M2(2)xM2(3)'")
    return parse_ring_spec(text)


def _single(r: RingSpec) -> tuple[int, int]:
    if r.l != 1:
        raise InvalidParameterError(f"this quantity needs a single factor, got {r}")
    return r.nq[0]


def _need(value, flag: str):
    if value is None:
        raise _Usage(f"{flag} is required for this quantity")
    return value


def _formula_value(name: str, r: RingSpec, k: int | None, cls: str | None):
    c = VertexClass.parse(cls) if cls is not None else None
    ring_level = {
        "wiener": lambda: fm.wiener_semisimple(r).wiener,
        "d1": lambda: fm.wiener_semisimple(r).d1,
        "d2": lambda: fm.wiener_semisimple(r).d2,
        "d3": lambda: fm.d3_pair_count(r),
        "n2": lambda: fm.n2_count(r),
        "t": lambda: fm.t_value(r),
        "s": lambda: fm.s_value(r),
        "bound": lambda: fm.complexity_upper_bound(r),
        "order": lambda: r.order,
        "units": lambda: r.unit_count,
        "zero-divisors": lambda: r.zero_divisor_count,
        "vertices": lambda: r.zero_divisor_count - 1,
        "degree": lambda: fm.degree_formula(r, _need(c, "--class")),
        "transmission": lambda: fm.transmission_semisimple(r, _need(c, "--class")),
        "d3-vertex": lambda: fm.d3_vertex_count(r, _need(c, "--class")),
    }
    if name in ring_level:
        return ring_level[name]()
    n, q = _single(r)
    simple = {
        "wiener-simple": lambda: fm.wiener_simple(n, q),
        "complexity": lambda: fm.wiener_complexity_simple(n),
        "gl-order": lambda: qcount.gl_order(n, q),
        "rank-count": lambda: qcount.rank_count(n, q, _need(k, "--k")),
        "squarezero-count": lambda: qcount.squarezero_rank_count(n, q, _need(k, "--k")),
        "gaussian-binomial": lambda: qcount.gaussian_binomial(n, _need(k, "--k"), q),
        "ann-size": lambda: fm.ann_size_simple(n, q, _need(k, "--k")),
        "annihilators": lambda: vars(fm.annihilator_sizes(n, q, _need(k, "--k"))),
    }
    if name not in simple:
        raise _Usage(f"unknown quantity {name!r}; known: {', '.join(FORMULA_NAMES)}")
    return simple[name]()


FORMULA_NAMES = [
    "wiener", "d1", "d2", "d3", "n2", "t", "s", "bound", "order", "units", "zero-divisors",
    "vertices", "degree", "transmission", "d3-vertex", "wiener-simple", "complexity",
    "gl-order", "rank-count", "squarezero-count", "gaussian-binomial", "ann-size", "annihilators",
]


def _stringify(v):
    if isinstance(v, dict):
        return {k: str(x) for k, x in v.items()}
    return str(v)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise _Usage(f"cannot write {out}: {exc}") from exc


def cmd_formula(args) -> int:
    r = _ring(args)
    value = _formula_value(args.name, r, args.k, args.cls)
    payload = {"ring": r.canonical(), "name": args.name, "value": _stringify(value)}
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    r = _ring(args)
    g = zg.build_graph(r, max_vertices=args.max_vertices)
    hist = zg.distance_histogram(g, args.workers)
    table = zg.transmission_table(g, args.workers)
    d3 = zg.distance3_counts(g, args.workers)
    classes: dict[VertexClass, dict] = {}
    for v, c in enumerate(g.classes):
        rec = classes.setdefault(c, {"class": str(c), "count": 0, "degree": set(), "transmission": set(), "d3": set()})
        rec["count"] += 1
        rec["degree"].add(g.degree(v))
        rec["transmission"].add(table.per_vertex[v])
        rec["d3"].add(d3[v])
    payload = {
        "ring": r.canonical(),
        "vertices": str(g.nv),
        "edges": str(g.edge_count),
        "wiener": str(zg.wiener_oracle(g, args.workers)),
        "complexity": str(len(table.values)),
        "histogram": {"d1": str(hist.d1), "d2": str(hist.d2), "d3": str(hist.d3), "unreachable": str(hist.unreachable)},
        "n2": str(sum(c.squarezero for c in g.classes)),
        "transmissions": {str(k): str(v) for k, v in table.values.items()},
        "classes": [
            {k: (",".join(map(str, sorted(x))) if isinstance(x, set) else (str(x) if k == "count" else x))
             for k, x in rec.items()}
            for _, rec in sorted(classes.items(), key=lambda kv: (kv[0].ks, kv[0].squarezero))
        ],
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verify(_ring(args), max_vertices=args.max_vertices, workers=args.workers)
    _emit(report.dumps(timings=not args.no_timings), args.out)
    return report.exit_code


def cmd_sweep(args) -> int:
    if args.max_vertices < 1:
        raise _Usage("--max-vertices must be >= 1")
    rows = run_sweep(args.max_vertices, workers=args.workers)
    if args.no_timings:
        for row in rows:
            row["ms"] = ""
    _emit(sweep_csv(rows) if args.csv else sweep_json(rows), args.out)
    return EXIT_OK if all(row["verdict"] == "pass" for row in rows) else EXIT_MISMATCH


def cmd_export(args) -> int:
    if args.format not in FORMATS:
        raise _Usage(f"unknown format {args.format!r}; choose from {', '.join(FORMATS)}")
    g = zg.build_graph(_ring(args), max_vertices=args.max_vertices)
    _emit(render(g, args.format), args.out)
    return EXIT_OK


def cmd_poly(args) -> int:
    p = wiener_simple_polynomial(args.n)
    payload = {"n": args.n, "degree": p.degree, "coefficients": p.as_strings()}
    if args.at is not None:
        payload["value"] = str(evaluate_polynomial(p, args.at))
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--workers", type=int, default=1, help="parallel workers for distance sweeps")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--no-timings", action="store_true", help="omit timing fields (byte-stable output)")

    budget = _Parser(add_help=False)
    budget.add_argument("--max-vertices", type=int, default=zg.VERTEX_BUDGET, help="oracle vertex budget")

    ring = _Parser(add_help=False)
    ring.add_argument("ring", nargs="?", help="ring spec, e.g. M2(2)xM2(3)")
    ring.add_argument("--ring", dest="ring_opt", help="ring spec (alternative to the positional)")

    p = _Parser(prog="zdwiener", description="Wiener indices of zero-divisor graphs of finite semisimple rings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("formula", parents=[common, budget], help="evaluate a closed-form quantity")
    f.add_argument("name", choices=FORMULA_NAMES, metavar="NAME")
    f.add_argument("ring", nargs="?")
    f.add_argument("--ring", dest="ring_opt")
    f.add_argument("--k", type=int, help="rank, for per-rank quantities")
    f.add_argument("--class", dest="cls", help="vertex class such as '1,2|0'")
    f.set_defaults(func=cmd_formula)

    sub.add_parser("oracle", parents=[common, budget, ring], help="brute-force graph quantities").set_defaults(func=cmd_oracle)
    sub.add_parser("verify", parents=[common, budget, ring], help="compare formulas with the oracle").set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common], help="verify every ring up to a vertex count")
    s.add_argument("--max-vertices", type=int, required=True, help="largest vertex count to include")
    s.add_argument("--csv", action="store_true", help="CSV instead of JSON")
    s.set_defaults(func=cmd_sweep)

    e = sub.add_parser("export", parents=[common, budget, ring], help="write the graph to a file")
    e.add_argument("format_pos", nargs="?", metavar="FORMAT")
    e.add_argument("--format", default=None)
    e.set_defaults(func=cmd_export)

    pl = sub.add_parser("poly", parents=[common], help="W(M_n(F)) as a polynomial in |F|")
    pl.add_argument("--n", type=int, default=2)
    pl.add_argument("--at", type=int, help="also evaluate at this field order")
    pl.set_defaults(func=cmd_poly)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "export":
            args.format = args.format or args.format_pos or "edgelist"
        return args.func(args)
    except _Usage as exc:
        print(f"zdwiener: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"zdwiener: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except InvalidParameterError as exc:
        print(f"zdwiener: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ZDError as exc:
        print(f"zdwiener: internal error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
