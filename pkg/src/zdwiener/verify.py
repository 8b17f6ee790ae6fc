"""Formula-versus-oracle reports and parameter sweeps."""

from __future__ import annotations

import csv
import io
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from math import prod

from . import formulas as fm
from . import zdgraph as zg
from .ffield import prime_power
from .matring import RingSpec, VertexClass, parse_ring_spec
from .qcount import gl_order, zero_divisor_count

__all__ = [
    "Quantity",
    "VerifyReport",
    "run_verify",
    "sweep_rings",
    "run_sweep",
    "SWEEP_COLUMNS",
]


@dataclass
class Quantity:
    name: str
    formula: int
    oracle: int
    match: bool

    def to_json(self) -> dict:
        return {"name": self.name, "formula": str(self.formula), "oracle": str(self.oracle), "match": self.match}


@dataclass
class VerifyReport:
    ring: str
    vertices: int
    quantities: list[Quantity] = field(default_factory=list)
    experiments: list[Quantity] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if all(q.match for q in self.quantities) else "fail"

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict == "pass" else 1

    def get(self, name: str) -> Quantity:
        return next(q for q in self.quantities if q.name == name)

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "ring": self.ring,
            "vertices": str(self.vertices),
            "quantities": [q.to_json() for q in self.quantities],
            "formula_mismatch": [q.name for q in self.quantities if not q.match],
            "experiments": [q.to_json() for q in self.experiments],
            "verdict": self.verdict,
        }
        if timings:
            out["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return out

    def dumps(self, timings: bool = True) -> str:
        return json.dumps(self.to_json(timings), indent=2) + "\n"


@contextmanager
def _timed(report: VerifyReport, phase: str):
    t0 = time.perf_counter()
    yield
    report.timings[phase] = (time.perf_counter() - t0) * 1000.0


def _class_key(c: VertexClass):
    return (c.ks, c.squarezero)


def run_verify(
    ring: str | RingSpec,
    max_vertices: int = zg.VERTEX_BUDGET,
    workers: int = 1,
) -> VerifyReport:
    """Evaluate every closed form for ``ring`` and compare it with the graph oracle."""
    t0 = time.perf_counter()
    r = parse_ring_spec(ring) if isinstance(ring, str) else ring
    parse_ms = (time.perf_counter() - t0) * 1000.0
    report = VerifyReport(ring=r.canonical(), vertices=0)
    report.timings["parse"] = parse_ms

    with _timed(report, "formula"):
        w = fm.wiener_semisimple(r)
        bound = fm.complexity_upper_bound(r)
        simple = r.l == 1 and r.sizes[0] >= 2
        if simple:
            n, q = r.nq[0]
            w_simple = fm.wiener_simple(n, q)
            cw_simple = fm.wiener_complexity_simple(n)

    with _timed(report, "oracle_build"):
        g = zg.build_graph(r, max_vertices=max_vertices)
    with _timed(report, "oracle_distances"):
        hist = zg.distance_histogram(g, workers)
        table = zg.transmission_table(g, workers)
        wiener = zg.wiener_oracle(g, workers)
        complexity = zg.wiener_complexity_oracle(g, workers)
        d3_per_vertex = zg.distance3_counts(g, workers)

    report.vertices = g.nv
    add = report.quantities.append

    def eq(name: str, formula: int, oracle: int) -> None:
        add(Quantity(name, formula, oracle, formula == oracle))

    with _timed(report, "compare"):
        eq("vertices", w.vertices, g.nv)
        eq("wiener", w.wiener, wiener)
        if simple:
            eq("wiener_simple", w_simple, wiener)
        eq("d1", w.d1, hist.d1)
        eq("d2", w.d2, hist.d2)
        eq("d3", w.d3, hist.d3)
        eq("unreachable", 0, hist.unreachable)
        eq("n2", w.n2, sum(c.squarezero for c in g.classes))

        seen: dict[VertexClass, tuple[set, set, set]] = {}
        for v, c in enumerate(g.classes):
            deg, tr, d3 = seen.setdefault(c, (set(), set(), set()))
            deg.add(g.degree(v))
            tr.add(table.per_vertex[v])
            d3.add(d3_per_vertex[v])
        for c in sorted(seen, key=_class_key):
            degs, trs, d3s = seen[c]
            # a class whose vertices disagree among themselves can never match
            one = lambda s: next(iter(s)) if len(s) == 1 else -1  # noqa: E731
            eq(f"degree[{c}]", fm.degree_formula(r, c), one(degs))
            if simple:
                eq(f"transmission[{c}]", fm.transmission_simple(n, q, c.ks[0], c.squarezero), one(trs))
            else:
                eq(f"transmission[{c}]", fm.transmission_semisimple(r, c), one(trs))
            eq(f"d3_vertex[{c}]", fm.d3_vertex_count(r, c), one(d3s))
            inclusive = fm.d3_vertex_count_unit_inclusive(r, c)
            report.experiments.append(Quantity(f"d3_vertex_unit_inclusive[{c}]", inclusive, one(d3s), inclusive == one(d3s)))

        if simple:
            eq("complexity", cw_simple, complexity)
            classes = fm.transmission_class_count(r.sizes[0])
            report.experiments.append(Quantity("complexity_class_count", classes, complexity, classes == complexity))
        add(Quantity("complexity_bound", bound, complexity, complexity <= bound))
    return report


# -- sweeps --------------------------------------------------------------------------

SWEEP_COLUMNS = [
    "ring", "vertices", "wiener_formula", "wiener_oracle", "complexity_oracle",
    "complexity_bound", "d3", "n2", "verdict", "ms",
]


def _prime_powers():
    q = 2
    while True:
        if prime_power(q):
            yield q
        q += 1


def _vertex_count(nq) -> int:
    return prod(q ** (n * n) for n, q in nq) - prod(gl_order(n, q) for n, q in nq) - 1


def sweep_rings(max_vertices: int) -> list[tuple[tuple[int, int], ...]]:
    """Every ring (factors sorted by (n, q)) whose graph has 1..max_vertices vertices.

    Single fields have empty graphs and are skipped.  In a product with two
    or more factors every factor satisfies |R_i| <= V + 1, which bounds the
    candidates.
    """
    candidates = []
    n = 1
    while 2 ** (n * n) <= max_vertices + 1 or zero_divisor_count(n, 2) - 1 <= max_vertices:
        for q in _prime_powers():
            in_product = q ** (n * n) <= max_vertices + 1
            alone = n >= 2 and zero_divisor_count(n, q) - 1 <= max_vertices
            if not in_product and not alone:
                break
            candidates.append(((n, q), in_product))
        n += 1
    candidates.sort()

    found: set[tuple[tuple[int, int], ...]] = set()
    for nq, _ in candidates:
        if nq[0] >= 2 and 1 <= _vertex_count([nq]) <= max_vertices:
            found.add((nq,))
    prod_ok = [nq for nq, ok in candidates if ok]

    def extend(prefix: list[tuple[int, int]], start: int) -> None:
        for i in range(start, len(prod_ok)):
            ring = prefix + [prod_ok[i]]
            v = _vertex_count(ring)
            if len(ring) >= 2:
                if v > max_vertices:
                    continue
                found.add(tuple(ring))
            extend(ring, i)

    extend([], 0)
    return sorted(found, key=lambda nq: (_vertex_count(nq), nq))


def run_sweep(max_vertices: int, workers: int = 1) -> list[dict]:
    rows = []
    for nq in sweep_rings(max_vertices):
        r = RingSpec.of(*nq)
        t0 = time.perf_counter()
        rep = run_verify(r, max_vertices=max_vertices, workers=workers)
        ms = (time.perf_counter() - t0) * 1000.0
        rows.append({
            "ring": rep.ring,
            "vertices": str(rep.vertices),
            "wiener_formula": str(rep.get("wiener").formula),
            "wiener_oracle": str(rep.get("wiener").oracle),
            "complexity_oracle": str(rep.get("complexity_bound").oracle),
            "complexity_bound": str(rep.get("complexity_bound").formula),
            "d3": str(rep.get("d3").oracle),
            "n2": str(rep.get("n2").oracle),
            "verdict": rep.verdict,
            "ms": f"{ms:.1f}",
        })
    return rows


def sweep_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def sweep_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2) + "\n"
