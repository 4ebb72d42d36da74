import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gauss_rats, rats
from gausspicard.exact_arith import UNITS, GaussInt, GaussRat
from gausspicard.generators import R, STABILIZER_GENERATORS, T2, random_word
from gausspicard.heisenberg import dilation, rotation, translation
from gausspicard.langlands import LanglandsParams, NotInStabilizer, decompose, recompose
from gausspicard.u2_words import enumerate_u2

I = GaussInt(0, 1)
U2_LIST = sorted(enumerate_u2(), key=str)


@given(
    st.tuples(gauss_rats, gauss_rats),
    rats,
    st.sampled_from([Fraction(1), Fraction(2), Fraction(1, 3)]),
    st.sampled_from(U2_LIST),
    st.sampled_from(UNITS),
)
def test_roundtrip_parameters(tau, t, r, u, lam):
    params = LanglandsParams(tau, t, r, tuple(tuple(GaussRat(x) for x in row) for row in u), GaussRat(lam))
    p = recompose(params)
    assert decompose(p) == params


def test_t2():
    params = decompose(T2)
    assert params.t == 2 and params.r == 1 and params.tau == (0, 0)


def test_product_of_factors():
    p = translation((GaussInt(1, 1), 0), 4) @ dilation(2) @ rotation([[0, 1], [I, 0]])
    params = decompose(p)
    assert params.r == 2 and params.t == 4


def test_random_stabilizer_words():
    rng = random.Random(5)
    for _ in range(100):
        p = random_word(rng, STABILIZER_GENERATORS).evaluate()
        params = decompose(p)
        assert recompose(params) == p
        assert params.r == 1 and params.scalar_unit.to_gauss_int().is_unit()
        assert params.t.denominator == 1 and params.t % 2 == 0


def test_errors():
    with pytest.raises(NotInStabilizer):
        decompose(R)
    with pytest.raises(ValueError, match="rational square"):
        decompose(rotation([[1, 0], [0, 1]]).scale(GaussRat(GaussInt(1, 1))), verify=False)
    with pytest.raises(NotInStabilizer, match="Hermitian"):
        decompose(rotation([[1, 0], [0, 1]]).scale(GaussRat(GaussInt(1, 1))))


def test_json():
    params = decompose(translation((GaussInt(1, 1), 0), 4))
    assert LanglandsParams.from_json(params.to_json()) == params
