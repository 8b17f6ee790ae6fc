import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zdwiener.errors import InvalidParameterError, ResourceLimitError
from zdwiener.ffield import (
    field_add, field_build, field_inv, field_mul, field_neg, field_pow, field_sub,
    is_prime, prime_power,
)

from oracles import all_prime_powers

SMALL = [prime_power(q) for q in all_prime_powers(64)]


def test_gf4_table():
    f = field_build(2, 2)
    assert f.modulus == (1, 1, 1)
    assert field_mul(2, 3, f) == 1
    assert field_inv(2, f) == 3
    assert field_add(2, 3, f) == 1


def test_prime_power_detection():
    assert prime_power(8) == (2, 3)
    assert prime_power(49) == (7, 2)
    assert prime_power(6) is None
    assert prime_power(1) is None
    assert [q for q in range(2, 20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("p,m", SMALL, ids=[f"{p}^{m}" for p, m in SMALL])
def test_field_axioms_exhaustive(p, m):
    f = field_build(p, m)
    q = f.q
    els = range(q)
    for a in els:
        assert field_add(a, 0, f) == a
        assert field_mul(a, 1, f) == a
        assert field_add(a, field_neg(a, f), f) == 0
        assert field_pow(a, q, f) == a  # Frobenius fixes every element
        if a:
            assert field_mul(a, field_inv(a, f), f) == 1
    if q <= 16:
        for a, b, c in itertools.product(els, repeat=3):
            assert field_mul(a, field_add(b, c, f), f) == field_add(field_mul(a, b, f), field_mul(a, c, f), f)
            assert field_mul(field_mul(a, b, f), c, f) == field_mul(a, field_mul(b, c, f), f)
    # multiplicative group is cyclic of order q-1: some element has full order
    orders = set()
    for a in range(1, q):
        e, x = 1, a
        while x != 1:
            x, e = field_mul(x, a, f), e + 1
        orders.add(e)
    assert max(orders) == q - 1


def test_build_is_deterministic():
    assert field_build(3, 4).modulus == field_build(3, 4, max_order=10**6).modulus
    f = field_build(2, 3)
    assert f.modulus == (1, 0, 1, 1)  # x^3 + x^2 + 1, constant term first


@pytest.mark.parametrize("p,m", [(2, 1), (7, 1), (2, 3), (3, 2), (2, 9), (5, 3)])
def test_vector_kernels_match_scalar(p, m):
    f = field_build(p, m)
    rng = np.random.default_rng(p * 100 + m)
    a = rng.integers(0, f.q, 500)
    b = rng.integers(0, f.q, 500)
    assert f.vadd(a, b).tolist() == [field_add(int(x), int(y), f) for x, y in zip(a, b)]
    assert f.vsub(a, b).tolist() == [field_sub(int(x), int(y), f) for x, y in zip(a, b)]
    assert f.vmul(a, b).tolist() == [field_mul(int(x), int(y), f) for x, y in zip(a, b)]
    assert f.vneg(a).tolist() == [field_neg(int(x), f) for x in a]
    nz = a[a != 0]
    assert f.vinv(nz).tolist() == [field_inv(int(x), f) for x in nz]


@settings(max_examples=100, deadline=None)
@given(pm=st.sampled_from(SMALL), data=st.data())
def test_digit_codec_round_trip(pm, data):
    f = field_build(*pm)
    a = data.draw(st.integers(0, f.q - 1))
    digits = f.digits(a)
    assert len(digits) == f.m and all(0 <= d < f.p for d in digits)
    assert f.from_digits(digits) == a


def test_errors():
    with pytest.raises(InvalidParameterError):
        field_build(4)
    with pytest.raises(ResourceLimitError):
        field_build(2, 30, max_order=2**20)
    with pytest.raises(ZeroDivisionError):
        field_inv(0, field_build(5))
    with pytest.raises(InvalidParameterError):
        field_add(5, 1, field_build(5))
