from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gauss_rats, rats
from gausspicard.exact_arith import GaussInt, GaussRat
from gausspicard.form import hermitian_product, is_member
from gausspicard.heisenberg import (
    HeisPoint,
    MapsToInfinity,
    boundary_action,
    dilation,
    heis_inverse,
    heis_mul,
    inversion,
    psi,
    rotation,
    translation,
)

points = st.builds(HeisPoint, st.tuples(gauss_rats, gauss_rats), rats)
I = GaussInt(0, 1)


def test_group_law_example():
    p = HeisPoint((1, 0), 0)
    q = HeisPoint((I, 0), 0)
    assert heis_mul(p, q) == HeisPoint((GaussInt(1, 1), 0), -2)


@given(points, points, points)
def test_associative(p, q, r):
    assert heis_mul(heis_mul(p, q), r) == heis_mul(p, heis_mul(q, r))


@given(points)
def test_inverse(p):
    e = HeisPoint((0, 0), 0)
    assert heis_mul(p, heis_inverse(p)) == e
    assert heis_mul(heis_inverse(p), p) == e


@given(points)
def test_psi_is_null(p):
    v = psi(p)
    assert hermitian_product(v, v) == 0


@given(points, points)
def test_translation_acts_by_group_law(p, q):
    assert boundary_action(translation(p.xi, p.nu), q) == heis_mul(p, q)


@given(points, points)
def test_translation_composition(p, q):
    assert translation(p.xi, p.nu) @ translation(q.xi, q.nu) == translation(*_astuple(heis_mul(p, q)))


def _astuple(p):
    return p.xi, p.nu


def test_inversion_on_vertical_axis():
    assert boundary_action(inversion(), HeisPoint((0, 0), 2)) == HeisPoint((0, 0), -2)
    with pytest.raises(MapsToInfinity):
        boundary_action(inversion(), HeisPoint((0, 0), 0))


@given(points, st.sampled_from([1, 2, 3]))
def test_dilation(p, r):
    q = boundary_action(dilation(Fraction(r)), p)
    assert q == HeisPoint((p.xi[0] * r, p.xi[1] * r), p.nu * r * r)


def test_rotation_and_membership():
    u = [[0, I], [1, 0]]
    m = rotation(u)
    assert is_member(m)
    assert boundary_action(m, HeisPoint((1, 0), 3)) == HeisPoint((0, 1), 3)
    with pytest.raises(ValueError):
        rotation([[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        dilation(0)


def test_translation_integrality():
    assert is_member(translation((1, 1), 0))
    assert not is_member(translation((1, 0), 0))
    assert is_member(translation((GaussInt(1, 1), 0), 0))
    assert translation((0, 0), 2)[0, 3] == GaussRat(I)
