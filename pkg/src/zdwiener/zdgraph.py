"""Brute-force zero-divisor graph oracle.

The graph is built by multiplying ring elements and nothing else; no
closed-form count is consulted.  Adjacency is kept as one Python ``int``
bitset per vertex.  Distances use the fact that the diameter is at most
3: the distance-2 layer is the union of the neighbours' bitsets, and a
remaining vertex is at distance 3 exactly when it touches that layer.
``bfs_distances`` is the plain reference path the fast path is tested
against.
"""

from __future__ import annotations

import multiprocessing
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

import numpy as np

from .errors import InternalConsistencyError, InvalidParameterError, ResourceLimitError
from .ffield import FieldSpec, field_add, field_mul
from .matring import (
    ORDER_BUDGET,
    ElementKind,
    RingElem,
    RingSpec,
    VertexClass,
    batch_is_zero,
    batch_matmul,
    batch_rank,
    classify_element,
    enumerate_matrices,
    mat_rank,
)

VERTEX_BUDGET = 200_000
TABLE_LIMIT = 4096

__all__ = [
    "VERTEX_BUDGET",
    "ZDGraph",
    "DistanceSummary",
    "TransmissionTable",
    "build_graph",
    "distances_from",
    "bfs_distances",
    "wiener_oracle",
    "transmission_table",
    "wiener_complexity_oracle",
    "distance_histogram",
    "classify_distance",
    "structural_distances",
    "layer_counts",
    "distance3_counts",
]


@dataclass
class _Factor:
    n: int
    field: FieldSpec
    mats: np.ndarray  # every matrix of the factor, codec order
    ranks: np.ndarray
    squarezero: np.ndarray
    zprod: np.ndarray | None  # zprod[a, b] == (mats[a] @ mats[b] == 0)

    def products_zero(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.zprod is not None:
            return self.zprod[a, b]
        return batch_is_zero(batch_matmul(self.mats[a], self.mats[b], self.field))


def _factor_data(n: int, f: FieldSpec, table_limit: int) -> _Factor:
    mats = enumerate_matrices(n, f)
    size = len(mats)
    ranks = batch_rank(mats, f)
    sq = batch_is_zero(batch_matmul(mats, mats, f))
    zprod = None
    if size <= table_limit:
        zprod = np.empty((size, size), dtype=bool)
        step = max(1, (1 << 20) // size)
        for s in range(0, size, step):
            blk = mats[s:s + step]
            zprod[s:s + step] = batch_is_zero(batch_matmul(blk[:, None], mats[None, :], f))
    return _Factor(n, f, mats, ranks, sq, zprod)


@dataclass(frozen=True)
class DistanceSummary:
    d1: int
    d2: int
    d3: int
    unreachable: int  # ordered pairs not joined within 3 steps

    @property
    def total(self) -> int:
        return self.d1 + self.d2 + self.d3 + self.unreachable


@dataclass(frozen=True)
class TransmissionTable:
    per_vertex: tuple[int, ...]
    values: dict[int, int]  # distinct transmission -> number of vertices, ascending


@dataclass
class ZDGraph:
    ring: RingSpec
    vertices: np.ndarray  # element indices, ascending
    factor_idx: np.ndarray  # (V, l) matrix index of each component
    adj: list[int]
    classes: list[VertexClass]
    _factors: list[_Factor] = field(repr=False, default_factory=list)
    _layers: np.ndarray | None = field(repr=False, default=None)
    _nbrs: list[list[int]] | None = field(repr=False, default=None)

    @property
    def nv(self) -> int:
        return len(self.vertices)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @property
    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def edges(self):
        """Undirected edges (u, v) with u < v, ascending."""
        for u, a in enumerate(self.adj):
            for v in _bits(a >> (u + 1)):
                yield u, u + 1 + v

    @property
    def edge_count(self) -> int:
        return sum(self.degrees) // 2

    def vertex_id(self, element_index: int) -> int:
        i = int(np.searchsorted(self.vertices, element_index))
        if i == self.nv or self.vertices[i] != element_index:
            raise InvalidParameterError(f"element {element_index} is not a vertex")
        return i

    def units_mask(self) -> np.ndarray:
        """(V, l) boolean: component i of the vertex is invertible."""
        return np.stack([fd.ranks[self.factor_idx[:, i]] == fd.n for i, fd in enumerate(self._factors)], axis=1)


def _bits(x: int) -> list[int]:
    if not x:
        return []
    raw = np.frombuffer(x.to_bytes((x.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).tolist()


def _to_int(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def build_graph(
    r: RingSpec,
    max_vertices: int = VERTEX_BUDGET,
    max_order: int = ORDER_BUDGET,
    table_limit: int = TABLE_LIMIT,
) -> ZDGraph:
    if r.order > max_order:
        raise ResourceLimitError(f"ring order {r.order} exceeds enumeration budget {max_order}", r.order)
    factors = [_factor_data(n, f, table_limit) for n, f in r.factors]

    units = prod(int((fd.ranks == fd.n).sum()) for fd in factors)
    would_be = r.order - units - 1
    if would_be > max_vertices:
        raise ResourceLimitError(
            f"{r} has {would_be} vertices, over the budget of {max_vertices}", would_be
        )

    chunks, fidx_chunks = [], []
    step = 1 << 20
    for start in range(0, r.order, step):
        idx = np.arange(start, min(start + step, r.order), dtype=np.int64)
        rest = idx.copy()
        cols = []
        for size in r.factor_orders:
            rest, d = np.divmod(rest, size)
            cols.append(d)
        fi = np.stack(cols, axis=1)
        unit = np.all([fd.ranks[fi[:, i]] == fd.n for i, fd in enumerate(factors)], axis=0)
        keep = ~unit & (idx != 0)
        chunks.append(idx[keep])
        fidx_chunks.append(fi[keep])
    vertices = np.concatenate(chunks)
    fidx = np.concatenate(fidx_chunks).reshape(-1, r.l)
    if len(vertices) != would_be:
        raise InternalConsistencyError("vertex enumeration disagrees with the unit census")

    V = len(vertices)
    ranks = np.stack([fd.ranks[fidx[:, i]] for i, fd in enumerate(factors)], axis=1)
    sq = np.all([fd.squarezero[fidx[:, i]] for i, fd in enumerate(factors)], axis=0)
    classes = [VertexClass(tuple(map(int, ks)), bool(s)) for ks, s in zip(ranks, sq)]

    adj: list[int] = []
    if V:
        step = max(1, (1 << 22) // (V * max(1, max(fd.n for fd in factors) ** 2)))
        for s in range(0, V, step):
            rows = slice(s, min(s + step, V))
            left = np.ones((rows.stop - s, V), dtype=bool)
            right = np.ones_like(left)
            for i, fd in enumerate(factors):
                a = fidx[rows, i][:, None]
                b = fidx[:, i][None, :]
                left &= fd.products_zero(a, b)
                right &= fd.products_zero(b, a)
            block = left | right
            block[np.arange(rows.stop - s), np.arange(s, rows.stop)] = False
            adj.extend(_to_int(row) for row in block)
    return ZDGraph(r, vertices, fidx, adj, classes, factors)


# -- distances ------------------------------------------------------------------

def _layers_of(adj: list[int], u: int) -> tuple[int, int, int, int]:
    """Bitsets of the vertices at distance 1, 2, 3 from u, plus the leftovers."""
    full = (1 << len(adj)) - 1
    n1 = adj[u]
    reach = 0
    for v in _bits(n1):
        reach |= adj[v]
    seen = n1 | (1 << u)
    n2 = reach & ~seen
    seen |= n2
    rest = full & ~seen
    n3 = 0
    for w in _bits(rest):
        if adj[w] & n2:
            n3 |= 1 << w
    return n1, n2, n3, rest & ~n3


_WORK: list[int] | None = None


def _range_counts(bounds: tuple[int, int]) -> list[tuple[int, int, int, int]]:
    adj = _WORK
    out = []
    for u in range(*bounds):
        layers = _layers_of(adj, u)
        out.append(tuple(x.bit_count() for x in layers))
    return out


def layer_counts(g: ZDGraph, workers: int = 1) -> np.ndarray:
    """(V, 4) array: per source, number of vertices at distance 1, 2, 3 and beyond.

    Sources are split into contiguous ranges; results are concatenated in
    source order, so the worker count never changes the output.
    """
    global _WORK
    if g._layers is not None:
        return g._layers
    V = g.nv
    if V == 0:
        g._layers = np.zeros((0, 4), dtype=np.int64)
        return g._layers
    workers = max(1, min(workers, V))
    n_chunks = workers * 4 if workers > 1 else 1
    bounds = [(V * i // n_chunks, V * (i + 1) // n_chunks) for i in range(n_chunks)]
    _WORK = g.adj
    try:
        if workers == 1:
            rows = [row for b in bounds for row in _range_counts(b)]
        else:
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
                rows = [row for part in pool.map(_range_counts, bounds) for row in part]
    finally:
        _WORK = None
    g._layers = np.array(rows, dtype=np.int64).reshape(V, 4)
    return g._layers


def _check_vertex(g: ZDGraph, v: int) -> None:
    if not 0 <= v < g.nv:
        raise InvalidParameterError(f"vertex id {v} outside [0, {g.nv})")


def distances_from(g: ZDGraph, v: int) -> list[int]:
    _check_vertex(g, v)
    n1, n2, n3, rest = _layers_of(g.adj, v)
    if rest:
        raise InternalConsistencyError(
            f"vertex {v} has {rest.bit_count()} vertices beyond distance 3; diameter bound violated"
        )
    dist = [0] * g.nv
    for d, layer in ((1, n1), (2, n2), (3, n3)):
        for w in _bits(layer):
            dist[w] = d
    return dist


def bfs_distances(g: ZDGraph, v: int) -> list[int]:
    """Textbook BFS; -1 marks unreachable vertices."""
    _check_vertex(g, v)
    if g._nbrs is None:
        g._nbrs = [g.neighbors(u) for u in range(g.nv)]
    nbrs = g._nbrs
    dist = [-1] * g.nv
    dist[v] = 0
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in nbrs[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance_histogram(g: ZDGraph, workers: int = 1) -> DistanceSummary:
    d1, d2, d3, beyond = (int(x) for x in layer_counts(g, workers).sum(axis=0))
    return DistanceSummary(d1, d2, d3, beyond)


def transmission_table(g: ZDGraph, workers: int = 1) -> TransmissionTable:
    counts = layer_counts(g, workers)
    if counts[:, 3].any():
        raise InternalConsistencyError("graph has pairs farther than 3 apart; transmissions undefined here")
    per_vertex = tuple(int(x) for x in counts[:, :3] @ np.array([1, 2, 3]))
    return TransmissionTable(per_vertex, dict(sorted(Counter(per_vertex).items())))


def wiener_oracle(g: ZDGraph, workers: int = 1) -> int:
    doubled = sum(transmission_table(g, workers).per_vertex)
    if doubled % 2:
        raise InternalConsistencyError(f"sum of all distances {doubled} is odd")
    return doubled // 2


def wiener_complexity_oracle(g: ZDGraph, workers: int = 1) -> int:
    return len(transmission_table(g, workers).values)


def distance3_counts(g: ZDGraph, workers: int = 1) -> list[int]:
    """Per vertex, how many vertices sit at distance exactly 3."""
    return [int(x) for x in layer_counts(g, workers)[:, 2]]


# -- structural distance ------------------------------------------------------------

_cached_kind = lru_cache(maxsize=1 << 16)(classify_element)


@lru_cache(maxsize=1 << 16)
def _unit_slots(x: RingElem, r: RingSpec) -> tuple[bool, ...]:
    return tuple(mat_rank(p, f) == n for p, (n, f) in zip(x, r.factors))


def _annihilates(a: RingElem, b: RingElem, r: RingSpec) -> bool:
    """True when ab = 0, stopping at the first nonzero entry."""
    for pa, pb, (n, f) in zip(a, b, r.factors):
        x, y = pa.entries, pb.entries
        for i in range(n):
            for j in range(n):
                if f.m == 1:
                    s = sum(x[i * n + t] * y[t * n + j] for t in range(n)) % f.p
                else:
                    s = 0
                    for t in range(n):
                        s = field_add(s, field_mul(x[i * n + t], y[t * n + j], f), f)
                if s:
                    return False
    return True


def classify_distance(r: RingSpec, a: RingElem, b: RingElem) -> int:
    """Distance between two distinct vertices read off from their components."""
    for x in (a, b):
        if _cached_kind(x, r) is not ElementKind.ZERO_DIVISOR:
            raise InvalidParameterError("both arguments must be nonzero zero-divisors")
    if a == b:
        raise InvalidParameterError("arguments must be distinct")
    if _annihilates(a, b, r) or _annihilates(b, a, r):
        return 1
    covered = all(ua or ub for ua, ub in zip(_unit_slots(a, r), _unit_slots(b, r)))
    shared = any(not pa.is_zero() and not pb.is_zero() for pa, pb in zip(a, b))
    return 3 if covered and shared else 2


def structural_distances(g: ZDGraph) -> np.ndarray:
    """V x V matrix of the component-wise distance rule, for every vertex pair."""
    V = g.nv
    unit = g.units_mask()
    nonzero = g.factor_idx != 0
    adj = np.zeros((V, V), dtype=bool)
    for u, a in enumerate(g.adj):
        adj[u, _bits(a)] = True
    covered = np.all(unit[:, None, :] | unit[None, :, :], axis=2)
    shared = np.any(nonzero[:, None, :] & nonzero[None, :, :], axis=2)
    out = np.where(covered & shared, 3, 2).astype(np.int8)
    out[adj] = 1
    np.fill_diagonal(out, 0)
    return out
