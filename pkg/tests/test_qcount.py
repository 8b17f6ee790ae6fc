from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from zdwiener import qcount
from zdwiener.errors import InternalConsistencyError, InvalidParameterError
from zdwiener.ffield import field_build

from oracles import matrix_census, subspaces

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9]


@pytest.mark.parametrize("n,k,q,expected", [(2, 1, 2, 3), (4, 2, 2, 35), (3, 1, 3, 13)])
def test_gaussian_binomial_counts_subspaces(n, k, q, expected):
    assert qcount.gaussian_binomial(n, k, q) == expected
    assert len(subspaces(n, k, field_build(q))) == expected


def test_known_values():
    assert qcount.gl_order(2, 2) == 6
    assert qcount.gl_order(2, 3) == 48
    assert qcount.gl_order(3, 2) == 168
    assert qcount.zero_divisor_count(2, 2) == 10
    assert qcount.zero_divisor_count(2, 3) == 33
    assert qcount.rank_count(2, 2, 1) == 9
    assert qcount.squarezero_rank_count(2, 2, 1) == 3
    assert qcount.squarezero_rank_count(2, 3, 1) == 8


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 4), (3, 2)])
def test_counts_against_enumeration(n, q):
    f = field_build(*{2: (2, 1), 3: (3, 1), 4: (2, 2)}[q])
    census = matrix_census(n, f)
    for k in range(n + 1):
        assert qcount.rank_count(n, q, k) == census["rank"][k]
        assert qcount.squarezero_rank_count(n, q, k) == census["squarezero"][k]


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 6), q=st.sampled_from(PRIME_POWERS + [6, 10]))
def test_rank_counts_partition_the_ring(n, q):
    assert sum(qcount.rank_count(n, q, k) for k in range(n + 1)) == q ** (n * n)
    assert qcount.rank_count(n, q, n) == qcount.gl_order(n, q)
    assert qcount.zero_divisor_count(n, q) == q ** (n * n) - qcount.gl_order(n, q)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 8), data=st.data(), q=st.integers(2, 12))
def test_gaussian_binomial_symmetry_and_limit(n, data, q):
    k = data.draw(st.integers(0, n))
    g = qcount.gaussian_binomial(n, k, q)
    assert g == qcount.gaussian_binomial(n, n - k, q)
    assert g >= comb(n, k)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 7), q=st.sampled_from(PRIME_POWERS))
def test_squarezero_vanishes_above_half(n, q):
    assert qcount.squarezero_rank_count(n, q, 0) == 1
    for k in range(n + 1):
        value = qcount.squarezero_rank_count(n, q, k)
        if 2 * k > n:
            assert value == 0
        else:
            assert 0 < value <= qcount.rank_count(n, q, k)


def test_exact_div_refuses_remainder():
    assert qcount.exact_div(12, 4) == 3
    with pytest.raises(InternalConsistencyError):
        qcount.exact_div(7, 2)


@pytest.mark.parametrize("call", [
    lambda: qcount.rank_count(2, 2, 3),
    lambda: qcount.gl_order(0, 2),
    lambda: qcount.gaussian_binomial(2, -1, 2),
    lambda: qcount.gl_order(2, 1),
])
def test_invalid_parameters(call):
    with pytest.raises(InvalidParameterError):
        call()
