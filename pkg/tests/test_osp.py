from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from nsfusion import osp

HALF = Fraction(1, 2)
SPINS = [Fraction(k, 2) for k in range(6)]


def test_action_examples():
    top = osp.OspVector.basis_vector(HALF, HALF)
    assert osp.act("h", top) == top
    bottom = osp.OspVector.basis_vector(HALF, -HALF)
    assert osp.act("x", bottom) == top
    assert osp.act("phi", top) == osp.OspVector.basis_vector(HALF, Fraction(0)).scale(-1)


@pytest.mark.parametrize("j", SPINS)
def test_relations_hold(j):
    assert osp.verify_relations(j) == []


def test_wrong_branch_breaks_relations():
    assert osp.verify_relations(HALF, flip_branch=True)


def test_tensor_act_examples():
    v = osp.OspTensorVector.basis_vector(HALF, HALF, HALF, HALF)
    assert osp.tensor_act("h", v).entries == {(HALF, HALF): 2}
    # chi kills the top vector of each factor
    assert osp.tensor_act("chi", v).is_zero()
    w = osp.OspTensorVector.basis_vector(HALF, HALF, Fraction(0), Fraction(0))
    image = osp.tensor_act("chi", w)
    assert len(image.entries) == 2
    # the Koszul sign makes the two terms differ in sign
    a, b = image.entries.values()
    assert a == -b


@pytest.mark.parametrize("g", ["x", "y", "h"])
def test_even_generators_have_no_sign(g):
    w = osp.OspTensorVector.basis_vector(HALF, HALF, Fraction(0), Fraction(0))
    left = osp.act(g, osp.OspVector.basis_vector(HALF, Fraction(0)))
    image = osp.tensor_act(g, w)
    for i1, c in left.entries.items():
        assert image.entries.get((i1, Fraction(0))) == c


def test_decompose_examples():
    assert osp.tensor_decompose(HALF, HALF) == [0, HALF, 1]
    assert osp.tensor_decompose(1, HALF) == [HALF, 1, Fraction(3, 2)]
    assert osp.tensor_decompose(Fraction(3, 2), 0) == [Fraction(3, 2)]
    assert osp.grothendieck_product(0, 0) == [0]
    assert osp.grothendieck_product(Fraction(3, 2), 1) == [HALF, 1, Fraction(3, 2), 2, Fraction(5, 2)]


@given(st.sampled_from(SPINS), st.sampled_from(SPINS))
def test_decomposition_matches_closed_form(j1, j2):
    found = osp.tensor_decompose(j1, j2)
    assert found == osp.grothendieck_product(j1, j2)
    assert sum(4 * k + 1 for k in found) == (4 * j1 + 1) * (4 * j2 + 1)


@given(st.sampled_from(SPINS), st.sampled_from(SPINS))
def test_h_spectrum_symmetric(j1, j2):
    spectrum = osp.h_spectrum(j1, j2)
    assert sorted(spectrum) == sorted(-e for e in spectrum)
    assert all(e.denominator == 1 for e in spectrum)


def test_basis_and_parity():
    assert osp.basis(Fraction(1)) == [1, HALF, 0, -HALF, -1]
    assert osp.parity(Fraction(1), Fraction(1)) == 0
    assert osp.parity(Fraction(1), HALF) == 1
    with pytest.raises(ValueError):
        osp.as_halfint(Fraction(1, 3))
