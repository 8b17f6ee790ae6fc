"""Exact reconstruction of q -> W(Gamma(M_n(GF(q)))) as a rational polynomial."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalConsistencyError, InvalidParameterError
from .formulas import wiener_simple

__all__ = ["RationalPoly", "interpolate", "wiener_simple_polynomial", "evaluate_polynomial"]


@dataclass(frozen=True)
class RationalPoly:
    coefficients: tuple[Fraction, ...]  # highest degree first

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in self.coefficients:
            acc = acc * x + c
        return acc

    def as_strings(self) -> list[str]:
        return [str(c) for c in self.coefficients]


def interpolate(xs: list[int], ys: list[int]) -> RationalPoly:
    """Newton divided differences, expanded to monomial form."""
    if len(xs) != len(ys) or not xs:
        raise InvalidParameterError("need equally many nodes and values")
    coef = [Fraction(y) for y in ys]
    for j in range(1, len(xs)):
        for i in range(len(xs) - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = _newton_to_monomial(coef, xs)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return RationalPoly(tuple(reversed(poly)))


def _newton_to_monomial(coef: list[Fraction], xs: list[int]) -> list[Fraction]:
    """Ascending monomial coefficients of sum_k coef[k] * prod_{j<k} (q - xs[j])."""
    n = len(coef)
    poly = [coef[-1]]
    for k in range(n - 2, -1, -1):
        # poly <- poly * (q - xs[k]) + coef[k]
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, p in enumerate(poly):
            nxt[i + 1] += p
            nxt[i] -= xs[k] * p
        nxt[0] += coef[k]
        poly = nxt
    return poly


def wiener_simple_polynomial(n: int) -> RationalPoly:
    """Interpolate wiener_simple(n, q) at q = 2 .. 2n^2 + 2."""
    if n < 2:
        raise InvalidParameterError("n must be >= 2")
    xs = list(range(2, 2 * n * n + 3))
    return interpolate(xs, [wiener_simple(n, q) for q in xs])


def evaluate_polynomial(p: RationalPoly, q: int) -> int:
    value = p(q)
    if value.denominator != 1:
        raise InternalConsistencyError(f"polynomial value {value} at {q} is not an integer")
    return value.numerator
