from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zdwiener.errors import InternalConsistencyError, InvalidParameterError
from zdwiener.formulas import wiener_simple
from zdwiener.polyrec import RationalPoly, evaluate_polynomial, interpolate, wiener_simple_polynomial

N2_COEFFICIENTS = [1, 1, Fraction(-3, 2), -3, Fraction(-1, 2), 2, 1]


def test_n2_coefficients():
    p = wiener_simple_polynomial(2)
    assert list(p.coefficients) == N2_COEFFICIENTS
    assert p.degree == 6
    assert evaluate_polynomial(p, 2) == 51


def test_n3_degree_and_held_out_points():
    p = wiener_simple_polynomial(3)
    assert p.degree == 16
    for q in range(21, 31):
        assert evaluate_polynomial(p, q) == wiener_simple(3, q)


@given(st.integers(2, 10_000))
def test_n2_polynomial_matches_formula_everywhere(q):
    assert evaluate_polynomial(wiener_simple_polynomial(2), q) == wiener_simple(2, q)


@given(st.lists(st.fractions(max_denominator=50), min_size=1, max_size=6))
def test_interpolation_recovers_a_polynomial(coeffs):
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs = coeffs[1:]
    p = RationalPoly(tuple(coeffs))
    xs = list(range(len(coeffs) + 2))
    assert interpolate(xs, [p(x) for x in xs]) == p


def test_errors():
    with pytest.raises(InvalidParameterError):
        wiener_simple_polynomial(1)
    with pytest.raises(InvalidParameterError):
        interpolate([1, 2], [1])
    with pytest.raises(InternalConsistencyError):
        evaluate_polynomial(RationalPoly((Fraction(1, 2),)), 3)
