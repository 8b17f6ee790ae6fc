"""Matrices over GF(q), direct products of matrix rings, and enumeration.

Element codec: an index into R = M_{n_1}(F_1) x ... x M_{n_l}(F_l) is a
mixed-radix number.  Factor 0 occupies the lowest digits, and inside a
factor the entries are read row-major with the first entry lowest, each
entry one base-q_i digit.  Index 0 is the zero element.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from math import prod

import numpy as np

from . import qcount
from .errors import InvalidParameterError, ParseError, ResourceLimitError
from .ffield import FieldSpec, field_add, field_build, field_inv, field_mul, field_sub, prime_power

ORDER_BUDGET = 1 << 24

__all__ = [
    "ORDER_BUDGET",
    "Matrix",
    "RingSpec",
    "RingElem",
    "VertexClass",
    "AnnCensus",
    "ElementKind",
    "parse_ring_spec",
    "mat_mul",
    "mat_rank",
    "ring_mul",
    "classify_element",
    "rank_profile",
    "element_from_index",
    "element_index",
    "annihilator_census",
    "enumerate_matrices",
    "batch_matmul",
    "batch_rank",
    "batch_is_zero",
]


# -- data types ---------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.n * self.n:
            raise InvalidParameterError(f"{len(self.entries)} entries for a {self.n}x{self.n} matrix")

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self.entries[r * self.n + c]

    @classmethod
    def zero(cls, n: int) -> Matrix:
        return cls(n, (0,) * (n * n))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, tuple(int(r == c) for r in range(n) for c in range(n)))

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> Matrix:
        """E_ij with 0-based indices."""
        e = [0] * (n * n)
        e[i * n + j] = 1
        return cls(n, tuple(e))

    @classmethod
    def from_rows(cls, rows) -> Matrix:
        rows = [list(r) for r in rows]
        return cls(len(rows), tuple(x for r in rows for x in r))

    def is_zero(self) -> bool:
        return not any(self.entries)


RingElem = tuple  # tuple[Matrix, ...], one part per factor


@dataclass(frozen=True)
class VertexClass:
    """Rank profile plus the square-zero flag."""

    ks: tuple[int, ...]
    squarezero: bool

    def __str__(self) -> str:
        return ",".join(map(str, self.ks)) + ("|1" if self.squarezero else "|0")

    @classmethod
    def parse(cls, text: str) -> VertexClass:
        try:
            ks, sq = text.split("|")
            if sq not in ("0", "1"):
                raise ValueError(sq)
            return cls(tuple(int(k) for k in ks.split(",")), sq == "1")
        except ValueError:
            raise InvalidParameterError(f"bad vertex class {text!r}, expected e.g. '1,2|0'") from None


@dataclass(frozen=True)
class AnnCensus:
    left: int
    right: int
    twosided: int


class ElementKind(str, enum.Enum):
    ZERO = "zero"
    UNIT = "unit"
    ZERO_DIVISOR = "zero-divisor"


@dataclass(frozen=True)
class RingSpec:
    factors: tuple[tuple[int, FieldSpec], ...]

    def __post_init__(self):
        if not self.factors:
            raise InvalidParameterError("a ring needs at least one factor")
        for n, _ in self.factors:
            if n < 1:
                raise InvalidParameterError(f"matrix size must be >= 1, got {n}")

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> RingSpec:
        """Build from (n, q) pairs, e.g. ``RingSpec.of((2, 2), (2, 3))``."""
        factors = []
        for n, q in pairs:
            pm = prime_power(q)
            if pm is None:
                raise InvalidParameterError(f"M{n}({q}): {q} is not a prime power")
            factors.append((n, field_build(*pm)))
        return cls(tuple(factors))

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.factors)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.factors)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(f.q for _, f in self.factors)

    @property
    def nq(self) -> tuple[tuple[int, int], ...]:
        return tuple((n, f.q) for n, f in self.factors)

    @property
    def factor_orders(self) -> tuple[int, ...]:
        return tuple(f.q ** (n * n) for n, f in self.factors)

    @property
    def order(self) -> int:
        return prod(self.factor_orders)

    @property
    def unit_count(self) -> int:
        return prod(qcount.gl_order(n, f.q) for n, f in self.factors)

    @property
    def zero_divisor_count(self) -> int:
        return self.order - self.unit_count

    def __str__(self) -> str:
        return "x".join(f"M{n}({f.q})" for n, f in self.factors)

    def canonical(self) -> str:
        """Factor-order-independent key: factors sorted by (n, q)."""
        return "x".join(f"M{n}({q})" for n, q in sorted(self.nq))


# -- parser -------------------------------------------------------------------

_FACTOR = re.compile(r"M(\d+)\((\d+)(?:\^(\d+))?\)")


def parse_ring_spec(text: str) -> RingSpec:
    """Parse ``M2(2)xM1(3)``-style text; the order may be written ``p^m``."""
    pos = 0
    factors = []
    while True:
        m = _FACTOR.match(text, pos)
        if m is None:
            raise ParseError(f"expected factor like 'M2(3)' in {text!r}", pos)
        n = int(m.group(1))
        base = int(m.group(2))
        q = base ** int(m.group(3)) if m.group(3) is not None else base
        if n < 1:
            raise ParseError(f"matrix size must be >= 1 in {m.group(0)!r}", m.start(1))
        pm = prime_power(q)
        if pm is None:
            raise InvalidParameterError(f"factor {m.group(0)!r}: {q} is not a prime power")
        factors.append((n, field_build(*pm)))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "x":
            raise ParseError(f"expected 'x' between factors in {text!r}", pos)
        pos += 1
    return RingSpec(tuple(factors))


# -- scalar matrix arithmetic -------------------------------------------------

def mat_mul(a: Matrix, b: Matrix, f: FieldSpec) -> Matrix:
    if a.n != b.n:
        raise InvalidParameterError(f"size mismatch {a.n} vs {b.n}")
    n = a.n
    out = []
    for r in range(n):
        for c in range(n):
            s = 0
            for t in range(n):
                s = field_add(s, field_mul(a[r, t], b[t, c], f), f)
            out.append(s)
    return Matrix(n, tuple(out))


def mat_rank(a: Matrix, f: FieldSpec) -> int:
    """Rank by Gaussian elimination with exact field inverses."""
    n = a.n
    rows = [list(a.entries[r * n:(r + 1) * n]) for r in range(n)]
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, n) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field_inv(rows[rank][col], f)
        rows[rank] = [field_mul(inv, x, f) for x in rows[rank]]
        for r in range(n):
            if r != rank and rows[r][col]:
                c = rows[r][col]
                rows[r] = [field_sub(x, field_mul(c, y, f), f) for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _check_shape(x: RingElem, r: RingSpec) -> None:
    if len(x) != r.l or any(part.n != n for part, (n, _) in zip(x, r.factors)):
        raise InvalidParameterError(f"element shape does not match {r}")
    for part, (_, f) in zip(x, r.factors):
        if any(not 0 <= e < f.q for e in part.entries):
            raise InvalidParameterError(f"entry code out of range for {f}")


def ring_mul(x: RingElem, y: RingElem, r: RingSpec) -> RingElem:
    _check_shape(x, r)
    _check_shape(y, r)
    return tuple(mat_mul(a, b, f) for a, b, (_, f) in zip(x, y, r.factors))


def classify_element(x: RingElem, r: RingSpec) -> ElementKind:
    _check_shape(x, r)
    if all(part.is_zero() for part in x):
        return ElementKind.ZERO
    if all(mat_rank(part, f) == n for part, (n, f) in zip(x, r.factors)):
        return ElementKind.UNIT
    return ElementKind.ZERO_DIVISOR


def rank_profile(x: RingElem, r: RingSpec) -> VertexClass:
    _check_shape(x, r)
    ks = tuple(mat_rank(part, f) for part, (_, f) in zip(x, r.factors))
    sq = all(p.is_zero() for p in ring_mul(x, x, r))
    return VertexClass(ks, sq)


# -- codec ----------------------------------------------------------------------

def element_from_index(i: int, r: RingSpec) -> RingElem:
    if not 0 <= i < r.order:
        raise InvalidParameterError(f"index {i} outside [0, {r.order})")
    parts = []
    for n, f in r.factors:
        entries = []
        for _ in range(n * n):
            i, d = divmod(i, f.q)
            entries.append(d)
        parts.append(Matrix(n, tuple(entries)))
    return tuple(parts)


def element_index(x: RingElem, r: RingSpec) -> int:
    _check_shape(x, r)
    idx = 0
    scale = 1
    for part, (_, f) in zip(x, r.factors):
        for e in part.entries:
            idx += e * scale
            scale *= f.q
    return idx


def matrix_index(a: Matrix, f: FieldSpec) -> int:
    return sum(e * f.q**j for j, e in enumerate(a.entries))


def factor_indices(i: int, r: RingSpec) -> tuple[int, ...]:
    out = []
    for size in r.factor_orders:
        i, d = divmod(i, size)
        out.append(d)
    return tuple(out)


# -- batched numpy kernels ------------------------------------------------------

def enumerate_matrices(n: int, f: FieldSpec, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Matrices with codec indices start..stop-1 as an (N, n, n) int64 array."""
    total = f.q ** (n * n)
    stop = total if stop is None else min(stop, total)
    idx = np.arange(start, stop, dtype=np.int64)
    powers = f.q ** np.arange(n * n, dtype=np.int64)
    return (idx[:, None] // powers[None, :] % f.q).reshape(-1, n, n)


def matrix_indices(mats: np.ndarray, f: FieldSpec) -> np.ndarray:
    n = mats.shape[-1]
    powers = f.q ** np.arange(n * n, dtype=np.int64)
    return mats.reshape(*mats.shape[:-2], n * n) @ powers


def batch_matmul(a: np.ndarray, b: np.ndarray, f: FieldSpec) -> np.ndarray:
    """Broadcasting product of (..., n, n) code arrays over GF(q)."""
    if f.m == 1:
        # entries < p <= 2^20, so n * p^2 stays far below 2^63
        return np.matmul(a, b) % f.p
    a, b = np.broadcast_arrays(a, b)
    n = a.shape[-1]
    out = f.vmul(a[..., :, 0:1], b[..., 0:1, :])
    for t in range(1, n):
        out = f.vadd(out, f.vmul(a[..., :, t:t + 1], b[..., t:t + 1, :]))
    return out


def batch_is_zero(a: np.ndarray) -> np.ndarray:
    return ~a.reshape(*a.shape[:-2], -1).any(axis=-1)


def batch_rank(a: np.ndarray, f: FieldSpec) -> np.ndarray:
    """Ranks of a stack of matrices by vectorised Gaussian elimination."""
    m = np.array(a, dtype=np.int64, copy=True)
    N, n, _ = m.shape
    row = np.zeros(N, dtype=np.int64)
    ar = np.arange(N)
    rows_idx = np.arange(n)
    for col in range(n):
        cand = (m[:, :, col] != 0) & (rows_idx[None, :] >= row[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = ar[has]
        piv = cand[has].argmax(axis=1)
        tgt = row[has]
        prow = m[sel, piv].copy()
        m[sel, piv] = m[sel, tgt]
        m[sel, tgt] = prow
        inv = f.vinv(prow[:, col])
        prow = f.vmul(inv[:, None], prow)
        m[sel, tgt] = prow
        for r in range(n):
            others = tgt != r
            if not others.any():
                continue
            s = sel[others]
            c = m[s, r, col]
            m[s, r] = f.vsub(m[s, r], f.vmul(c[:, None], prow[others]))
        row[has] += 1
    return row


def annihilator_census(x: RingElem, r: RingSpec, budget: int = ORDER_BUDGET, chunk: int = 1 << 16) -> AnnCensus:
    """Count left, right and two-sided annihilators of x by scanning all of R."""
    _check_shape(x, r)
    if r.order > budget:
        raise ResourceLimitError(f"ring order {r.order} exceeds enumeration budget {budget}", r.order)
    xs = [np.array(part.entries, dtype=np.int64).reshape(n, n) for part, (n, _) in zip(x, r.factors)]
    left = right = both = 0
    for start in range(0, r.order, chunk):
        stop = min(start + chunk, r.order)
        idx = np.arange(start, stop, dtype=np.int64)
        lz = np.ones(len(idx), dtype=bool)
        rz = np.ones(len(idx), dtype=bool)
        for (n, f), size, xa in zip(r.factors, r.factor_orders, xs):
            idx, fi = np.divmod(idx, size)
            powers = f.q ** np.arange(n * n, dtype=np.int64)
            ys = (fi[:, None] // powers[None, :] % f.q).reshape(-1, n, n)
            lz &= batch_is_zero(batch_matmul(ys, xa, f))
            rz &= batch_is_zero(batch_matmul(xa, ys, f))
        left += int(lz.sum())
        right += int(rz.sum())
        both += int((lz & rz).sum())
    return AnnCensus(left, right, both)
