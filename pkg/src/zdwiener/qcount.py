"""Exact q-combinatorial counts over Python integers.

Every function accepts any integer ``q >= 2``; prime-power validation
happens when a ring spec is parsed, so the polynomial module can probe
the formulas at arbitrary integer points.
"""

from math import comb, prod

from .errors import InternalConsistencyError, InvalidParameterError

__all__ = [
    "exact_div",
    "gaussian_binomial",
    "rank_count",
    "gl_order",
    "zero_divisor_count",
    "squarezero_rank_count",
]


def exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise InternalConsistencyError(f"inexact division {num} / {den}")
    return q


def _check(n: int, q: int, k: int | None = None) -> None:
    if n < 0:
        raise InvalidParameterError(f"matrix size must be >= 0, got {n}")
    if q < 2:
        raise InvalidParameterError(f"field order must be >= 2, got {q}")
    if k is not None and not 0 <= k <= n:
        raise InvalidParameterError(f"rank {k} outside [0, {n}]")


def _falling(base: int, q: int, k: int) -> int:
    """prod_{j<k} (base - q^j)."""
    return prod(base - q**j for j in range(k))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    _check(n, q, k)
    return exact_div(_falling(q**n, q, k), _falling(q**k, q, k))


def rank_count(n: int, q: int, k: int) -> int:
    """Number of rank-k matrices in M_n(GF(q))."""
    _check(n, q, k)
    num = _falling(q**n, q, k) ** 2
    return exact_div(num, _falling(q**k, q, k))


def gl_order(n: int, q: int) -> int:
    if n < 1:
        raise InvalidParameterError(f"matrix size must be >= 1, got {n}")
    _check(n, q)
    return q ** comb(n, 2) * prod(q**j - 1 for j in range(1, n + 1))


def zero_divisor_count(n: int, q: int) -> int:
    """|Z(M_n(GF(q)))|, zero included."""
    return q ** (n * n) - gl_order(n, q)


def squarezero_rank_count(n: int, q: int, k: int) -> int:
    """Number of rank-k matrices A in M_n(GF(q)) with A^2 = 0 (1 for k = 0)."""
    _check(n, q, k)
    num = _falling(q**n, q, 2 * k)
    den = q ** (k * k) * _falling(q**k, q, k)
    return exact_div(num, den)
