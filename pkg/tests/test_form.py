import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gauss_rats
from gausspicard.exact_arith import GaussInt, GaussRat
from gausspicard.form import IDENTITY, J, GroupElement, MatrixParseError, Vector31, hermitian_product, is_member, stabilizes_infinity
from gausspicard.generators import GENERATORS, random_word

matrices = st.lists(st.lists(gauss_rats, min_size=4, max_size=4), min_size=4, max_size=4).map(GroupElement)


def naive_mul(a, b):
    ra, rb = a.rows(), b.rows()
    return GroupElement([[sum((ra[i][k] * rb[k][j] for k in range(4)), GaussRat(0)) for j in range(4)] for i in range(4)])


def naive_star(a):
    r = a.rows()
    return GroupElement([[r[j][i].conj() for j in range(4)] for i in range(4)])


@settings(max_examples=50)
@given(matrices, matrices)
def test_matmul_matches_naive(a, b):
    assert a @ b == naive_mul(a, b)


@settings(max_examples=50)
@given(matrices)
def test_j_unitary_matches_naive(a):
    assert a.is_j_unitary() == (naive_mul(naive_mul(naive_star(a), J), a) == J)


def test_hermitian_form():
    e1 = Vector31([1, 0, 0, 0])
    e4 = Vector31([0, 0, 0, 1])
    assert hermitian_product(e1, e4) == 1
    assert hermitian_product(e1, e1) == 0
    v = Vector31([0, GaussInt(0, 1), 0, 0])
    assert hermitian_product(v, v) == 1


def test_generators_are_members():
    for g in GENERATORS.values():
        assert is_member(g)
        assert g @ g.inverse() == IDENTITY


def test_random_products_are_members():
    rng = random.Random(1)
    for _ in range(50):
        g = random_word(rng).evaluate()
        assert is_member(g)
        assert g.inverse() @ g == IDENTITY


def test_non_members():
    assert not is_member(GroupElement.diagonal([2, 1, 1, 1]))
    assert not is_member(GroupElement.diagonal([GaussRat(GaussInt(1), 2), 1, 1, 2]))
    with pytest.raises(ValueError):
        GroupElement.diagonal([2, 1, 1, 1]).inverse()


def test_stabilizes_infinity():
    assert stabilizes_infinity(GENERATORS["T1"])
    assert not stabilizes_infinity(GENERATORS["R"])


def test_json_roundtrip_and_errors():
    g = GENERATORS["T1"] @ GENERATORS["M2"]
    assert GroupElement.from_json(g.to_json()) == g
    with pytest.raises(MatrixParseError, match=r"rows\[1\]\[2\]"):
        rows = [[0] * 4 for _ in range(4)]
        rows[1][2] = {"num": "x"}
        GroupElement.from_json({"rows": rows})
    with pytest.raises(MatrixParseError, match="rows"):
        GroupElement.from_json({"cols": []})
