"""Closed-form evaluators for degrees, distance counts and Wiener indices.

Every quantity with a fractional coefficient is assembled as twice its
value and halved only after an evenness check, so a transcription slip
surfaces as :class:`InternalConsistencyError` instead of a wrong integer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

from . import qcount
from .errors import InternalConsistencyError, InvalidParameterError
from .matring import AnnCensus, RingSpec, VertexClass

__all__ = [
    "WienerResult",
    "ann_size_simple",
    "annihilator_sizes",
    "degree_formula",
    "wiener_simple",
    "wiener_complexity_simple",
    "transmission_class_count",
    "transmission_simple",
    "t_value",
    "d3_pair_count",
    "n2_count",
    "s_value",
    "wiener_semisimple",
    "complexity_upper_bound",
    "d3_vertex_count",
    "d3_vertex_count_unit_inclusive",
    "transmission_semisimple",
]


def _half(doubled: int, what: str) -> int:
    if doubled % 2:
        raise InternalConsistencyError(f"2*{what} = {doubled} is odd")
    return doubled // 2


def _nq(r: RingSpec) -> list[tuple[int, int]]:
    return list(r.nq)


@dataclass(frozen=True)
class WienerResult:
    wiener: int
    zero_divisor_count: int
    d1: int
    d3: int
    n2: int
    t_value: int

    @property
    def vertices(self) -> int:
        return self.zero_divisor_count - 1

    @property
    def d2(self) -> int:
        v = self.vertices
        return v * (v - 1) - self.d1 - self.d3


# -- annihilators and degrees -----------------------------------------------------

def ann_size_simple(n: int, q: int, k: int) -> int:
    """|Ann(A)| for a rank-k matrix A in M_n(GF(q)), 1 <= k <= n."""
    if not 1 <= k <= n:
        raise InvalidParameterError(f"rank must lie in [1, {n}], got {k}")
    return 2 * q ** (n * (n - k)) - q ** ((n - k) ** 2)


def annihilator_sizes(n: int, q: int, k: int) -> AnnCensus:
    if not 0 <= k <= n:
        raise InvalidParameterError(f"rank must lie in [0, {n}], got {k}")
    side = q ** (n * (n - k))
    return AnnCensus(side, side, q ** ((n - k) ** 2))


def degree_formula(r: RingSpec, c: VertexClass) -> int:
    """Degree of every vertex whose rank profile and square-zero flag are ``c``.

    A unit profile gives 0.  The l = 1 case is the simple-ring degree.
    """
    nq = _nq(r)
    if len(c.ks) != len(nq) or any(not 0 <= k <= n for k, (n, _) in zip(c.ks, nq)):
        raise InvalidParameterError(f"class {c} does not fit {r}")
    if not any(c.ks):
        raise InvalidParameterError("the zero element is not a vertex")
    if all(k == n for k, (n, _) in zip(c.ks, nq)):
        return 0
    eps = 2 if c.squarezero else 1
    two_sided = prod(q ** ((n - k) ** 2) for k, (n, q) in zip(c.ks, nq))
    cross = prod(q ** (k * (n - k)) for k, (n, q) in zip(c.ks, nq))
    return two_sided * (2 * cross - 1) - eps


# -- simple rings --------------------------------------------------------------------

def wiener_simple(n: int, q: int) -> int:
    """Wiener index of the zero-divisor graph of M_n(GF(q)), n >= 2.

    Accepts any integer q >= 2 so the value can be interpolated in q.
    """
    if n < 2:
        raise InvalidParameterError("n must be >= 2; use wiener_semisimple for fields")
    z = qcount.zero_divisor_count(n, q)
    doubled = 2 * z * z - 5 * z + 3
    for k in range(1, n):
        num = prod(q**n - q**j for j in range(k))
        den = prod(q**k - q**j for j in range(k))
        subspaces = qcount.exact_div(num, den)
        sq_part = prod(q ** (n - k) - q**j for j in range(k))
        doubled += subspaces * (sq_part - ann_size_simple(n, q, k) * num)
    return _half(doubled, f"W(M{n}({q}))")


def wiener_complexity_simple(n: int) -> int:
    """Closed-form count of distinct transmissions for M_n(F): 2(n - 1).

    The graph disagrees for n = 3; see transmission_class_count.
    """
    if n < 2:
        raise InvalidParameterError("n must be >= 2")
    return 2 * (n - 1)


def transmission_class_count(n: int) -> int:
    """Number of (rank, square-zero) classes that actually occur among vertices of M_n(F).

    Ranks 1..n-1 all occur without A^2 = 0, but a square-zero matrix has
    rank at most n/2, so only floor(n/2) square-zero classes exist.
    """
    if n < 2:
        raise InvalidParameterError("n must be >= 2")
    return (n - 1) + n // 2


def transmission_simple(n: int, q: int, k: int, squarezero: bool) -> int:
    if not 1 <= k <= n - 1:
        raise InvalidParameterError(f"rank must lie in [1, {n - 1}], got {k}")
    deg = ann_size_simple(n, q, k) - (2 if squarezero else 1)
    return 2 * (qcount.zero_divisor_count(n, q) - 2) - deg


# -- semisimple rings -------------------------------------------------------------------

def _units(nq) -> list[int]:
    return [qcount.gl_order(n, q) for n, q in nq]


def _zds(nq) -> list[int]:
    return [qcount.zero_divisor_count(n, q) for n, q in nq]


def t_value(r: RingSpec) -> int:
    nq = _nq(r)
    units, zds = _units(nq), _zds(nq)
    total = 0
    for size in range(2, len(nq) + 1):
        for lam in itertools.combinations(range(len(nq)), size):
            total += (2**size - 2) * prod(zds[i] if i in lam else units[i] for i in range(len(nq)))
    return total


def d3_pair_count(r: RingSpec) -> int:
    """Ordered vertex pairs at distance 3."""
    return (t_value(r) - 2 ** r.l + 2) * prod(_units(_nq(r)))


def n2_count(r: RingSpec) -> int:
    """Nonzero elements with square zero."""
    return prod(
        sum(qcount.squarezero_rank_count(n, q, k) for k in range(n)) for n, q in _nq(r)
    ) - 1


def s_value(r: RingSpec) -> int:
    return prod(n + 1 for n in r.sizes) - prod(r.sizes)


def _lattice_sum(nq) -> int:
    total = 0
    for ks in itertools.product(*(range(n + 1) for n, _ in nq)):
        count = prod(qcount.rank_count(n, q, k) for k, (n, q) in zip(ks, nq))
        two_sided = prod(q ** ((n - k) ** 2) for k, (n, q) in zip(ks, nq))
        cross = prod(q ** (k * (n - k)) for k, (n, q) in zip(ks, nq))
        total += count * two_sided * (2 * cross - 1)
    return total


def wiener_semisimple(r: RingSpec) -> WienerResult:
    nq = _nq(r)
    l = len(nq)
    order = prod(q ** (n * n) for n, q in nq)
    units = prod(_units(nq))
    z = order - units
    t = t_value(r)
    n2 = n2_count(r)
    lattice = _lattice_sum(nq)
    gl_products = prod(prod(q**n - q**j for j in range(n)) for n, q in nq)

    doubled = (
        2 * z * z - 5 * z + 3
        + (t - 2**l + 2) * units
        - lattice
        + order
        + gl_products
        + n2
    )
    wiener = _half(doubled, f"W({r})")

    d1 = lattice - order - gl_products - (z - 1) - n2
    d3 = (t - 2**l + 2) * units
    v = z - 1
    if 2 * wiener != 2 * v * (v - 1) + d3 - d1:
        raise InternalConsistencyError("Wiener index disagrees with its own distance counts")
    return WienerResult(wiener, z, d1, d3, n2, t)


def complexity_upper_bound(r: RingSpec) -> int:
    return prod(r.sizes) + prod(n + 1 for n in r.sizes) - 3


# -- per-class distance-3 counts and transmissions --------------------------------------

def d3_vertex_count(r: RingSpec, c: VertexClass) -> int:
    """Vertices at distance 3 from any vertex of class ``c``.

    B is at distance 3 from A iff every component is a unit in A or in B,
    some component is nonzero in both, and AB != 0 != BA.  On the
    components where A is not a unit, B must be a unit; on the others B
    is free except that B itself must not be a unit.
    """
    nq = _nq(r)
    full = [k == n for k, (n, _) in zip(c.ks, nq)]
    if all(full) or not any(c.ks):
        raise InvalidParameterError(f"class {c} is not a vertex class")
    forced = prod(qcount.gl_order(n, q) for f, (n, q) in zip(full, nq) if not f)
    free_all = prod(q ** (n * n) for f, (n, q) in zip(full, nq) if f)
    free_units = prod(qcount.gl_order(n, q) for f, (n, q) in zip(full, nq) if f)
    if not any(full):
        return 0
    # A already has a nonzero non-unit component: any non-unit B part works
    intermediate = any(0 < k < n for k, (n, _) in zip(c.ks, nq))
    if intermediate:
        return forced * (free_all - free_units)
    # A's non-unit components are all zero: B must also be nonzero on A's unit slots
    return forced * (free_all - free_units - 1)


def d3_vertex_count_unit_inclusive(r: RingSpec, c: VertexClass) -> int:
    """Per-class distance-3 count that also admits all-unit companions.

    Those companions are units, not vertices, so this over-counts whenever
    A has a unit component.  verify reports it as an experiment only.
    """
    nq = _nq(r)
    ks = c.ks
    if any(0 < k < n for k, (n, _) in zip(ks, nq)):
        out = 1
        for k, (n, q) in zip(ks, nq):
            if k == n:
                out *= q ** (n * n)
            else:
                num = prod((q**n - q**j) ** 2 for j in range(n))
                out *= qcount.exact_div(num, prod(q**n - q**j for j in range(n)))
        return out
    zero_slots = [(n, q) for k, (n, q) in zip(ks, nq) if k == 0]
    unit_slots = [(n, q) for k, (n, q) in zip(ks, nq) if k == n]
    left = prod(
        qcount.exact_div(prod((q**n - q**j) ** 2 for j in range(n)), prod(q**n - q**j for j in range(n)))
        for n, q in zero_slots
    )
    return left * (-1 + prod(q ** (n * n) for n, q in unit_slots))


def transmission_semisimple(r: RingSpec, c: VertexClass) -> int:
    z = r.zero_divisor_count
    return 2 * (z - 2) - degree_formula(r, c) + d3_vertex_count(r, c)
