import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zdwiener.errors import InvalidParameterError, ParseError, ResourceLimitError
from zdwiener.ffield import field_build
from zdwiener.matring import (
    AnnCensus, ElementKind, Matrix, RingSpec, VertexClass, annihilator_census, batch_matmul,
    batch_rank, classify_element, element_from_index, element_index, enumerate_matrices,
    mat_mul, mat_rank, parse_ring_spec, rank_profile, ring_mul,
)

F2 = field_build(2)
F3 = field_build(3)
F4 = field_build(2, 2)


# -- parsing ---------------------------------------------------------------------

def test_parse_examples():
    r = parse_ring_spec("M2(3)xM1(2^2)")
    assert r.nq == ((2, 3), (1, 4))
    assert str(r) == "M2(3)xM1(4)"
    assert r.canonical() == "M1(4)xM2(3)"
    assert r.order == 3**4 * 4
    assert parse_ring_spec("M2(2)").l == 1


@pytest.mark.parametrize("text,pos", [("M2(2)y", 5), ("X2(2)", 0), ("M2(2)x", 6), ("", 0), ("M0(2)", 1)])
def test_parse_error_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_ring_spec(text)
    assert info.value.position == pos


def test_parse_rejects_non_prime_power():
    with pytest.raises(InvalidParameterError, match="M2\\(6\\)"):
        parse_ring_spec("M1(2)xM2(6)")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 4), st.sampled_from([2, 3, 4, 5, 8, 9])), min_size=1, max_size=4))
def test_canonical_round_trip(pairs):
    r = RingSpec.of(*pairs)
    again = parse_ring_spec(str(r))
    assert again == r
    assert parse_ring_spec(r.canonical()).canonical() == r.canonical()
    assert r.unit_count + r.zero_divisor_count == r.order


# -- scalar arithmetic -----------------------------------------------------------

def test_matrix_units_multiply():
    e11, e12, e21 = Matrix.unit(2, 0, 0), Matrix.unit(2, 0, 1), Matrix.unit(2, 1, 0)
    assert mat_mul(e11, e12, F2) == e12
    assert mat_mul(e12, e11, F2).is_zero()
    assert mat_mul(e12, e21, F2) == e11
    assert mat_mul(Matrix.identity(2), e21, F3) == e21


def test_rank_examples():
    assert mat_rank(Matrix.zero(3), F2) == 0
    assert mat_rank(Matrix.identity(3), F3) == 3
    assert mat_rank(Matrix.from_rows([[1, 1], [1, 1]]), F2) == 1
    assert mat_rank(Matrix.from_rows([[1, 2], [2, 1]]), F3) == 1  # 1 - 4 = 0 mod 3
    assert mat_rank(Matrix.from_rows([[1, 2], [2, 1]]), F4) == 2
    assert mat_rank(Matrix.from_rows([[1, 2], [3, 1]]), F4) == 1  # 2 * 3 = 1 in GF(4)


def test_ring_mul_and_classify():
    r = parse_ring_spec("M1(2)xM2(2)")
    x = (Matrix.from_rows([[1]]), Matrix.unit(2, 0, 1))
    assert ring_mul(x, x, r) == (Matrix.from_rows([[1]]), Matrix.zero(2))
    assert classify_element(x, r) is ElementKind.ZERO_DIVISOR
    assert classify_element((Matrix.from_rows([[1]]), Matrix.identity(2)), r) is ElementKind.UNIT
    assert classify_element(element_from_index(0, r), r) is ElementKind.ZERO
    assert rank_profile(x, r) == VertexClass((1, 1), False)
    with pytest.raises(InvalidParameterError):
        ring_mul(x, (Matrix.identity(2),), r)


def test_vertex_class_text():
    c = VertexClass((1, 2), True)
    assert str(c) == "1,2|1"
    assert VertexClass.parse("1,2|1") == c
    assert VertexClass.parse("0|0") == VertexClass((0,), False)
    with pytest.raises(InvalidParameterError):
        VertexClass.parse("1,2")


# -- codec and batch kernels -----------------------------------------------------

def test_codec_order_for_product_of_fields():
    r = parse_ring_spec("M1(2)xM1(2)")
    elems = [tuple(part.entries[0] for part in element_from_index(i, r)) for i in range(4)]
    assert elems == [(0, 0), (1, 0), (0, 1), (1, 1)]


@pytest.mark.parametrize("spec", ["M2(2)", "M1(3)xM2(2)", "M2(4)", "M1(2)xM1(5)xM1(4)"])
def test_codec_round_trip(spec):
    r = parse_ring_spec(spec)
    for i in range(0, r.order, max(1, r.order // 300)):
        assert element_index(element_from_index(i, r), r) == i


@pytest.mark.parametrize("n,f", [(2, F2), (2, F3), (2, F4), (3, F2), (2, field_build(5))])
def test_batch_kernels_match_scalar(n, f):
    mats = enumerate_matrices(n, f)[: 2000]
    ranks = batch_rank(mats, f)
    objs = [Matrix(n, tuple(int(e) for e in m.ravel())) for m in mats]
    assert ranks.tolist() == [mat_rank(a, f) for a in objs]
    rng = np.random.default_rng(0)
    pick = rng.integers(0, len(mats), (200, 2))
    prods = batch_matmul(mats[pick[:, 0]], mats[pick[:, 1]], f)
    for (i, j), c in zip(pick, prods):
        assert tuple(int(e) for e in c.ravel()) == mat_mul(objs[i], objs[j], f).entries


# -- annihilators ----------------------------------------------------------------

def test_census_examples():
    r = parse_ring_spec("M2(2)")
    assert annihilator_census((Matrix.unit(2, 0, 0),), r) == AnnCensus(4, 4, 2)
    assert annihilator_census((Matrix.identity(2),), r) == AnnCensus(1, 1, 1)
    assert annihilator_census((Matrix.zero(2),), r) == AnnCensus(16, 16, 16)
    with pytest.raises(ResourceLimitError):
        annihilator_census((Matrix.zero(2),), r, budget=8)


def _random_invertible(n, f, rng):
    while True:
        m = Matrix(n, tuple(int(e) for e in rng.integers(0, f.q, n * n)))
        if mat_rank(m, f) == n:
            return m


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 4), f=st.sampled_from([F2, F3, F4, field_build(7)]))
def test_rank_invariant_under_equivalence(seed, n, f):
    rng = np.random.default_rng(seed)
    a = Matrix(n, tuple(int(e) for e in rng.integers(0, f.q, n * n)))
    p = _random_invertible(n, f, rng)
    q = _random_invertible(n, f, rng)
    assert mat_rank(mat_mul(mat_mul(p, a, f), q, f), f) == mat_rank(a, f)


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_classification_partitions_ring(data):
    r = parse_ring_spec(data.draw(st.sampled_from(["M2(2)", "M1(3)xM1(2)", "M1(2)xM2(2)"])))
    i = data.draw(st.integers(0, r.order - 1))
    x = element_from_index(i, r)
    kind = classify_element(x, r)
    census = annihilator_census(x, r)
    if kind is ElementKind.UNIT:
        assert census == AnnCensus(1, 1, 1)
    else:
        assert census.left > 1 and census.right > 1
    assert (kind is ElementKind.ZERO) == (i == 0)
