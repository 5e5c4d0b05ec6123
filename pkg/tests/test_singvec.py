from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nsfusion.ns import Mode, apply_mode, h_1q, singular_verify, word_element
from nsfusion.singvec import (
    C_DEGENERATE,
    bsa_coefficient,
    bsa_validate,
    bsa_vector,
    odd_compositions,
    singular_vector,
)

HALF = Fraction(1, 2)
ODD = [1, 3, 5, 7, 9]


def test_compositions_examples():
    assert odd_compositions(1) == [(1,)]
    assert sorted(odd_compositions(3)) == [(1, 1, 1), (3,)]
    assert sorted(odd_compositions(5)) == sorted([(1, 1, 3), (1, 3, 1), (3, 1, 1), (5,), (1, 1, 1, 1, 1)])


def _odd_length_count(q):
    # number of compositions of q into odd parts with an odd number of parts
    table = {0: {0: 1}}
    for n in range(1, q + 1):
        table[n] = {}
        for k in range(1, n + 1, 2):
            for parity, count in table[n - k].items():
                key = 1 - parity
                table[n][key] = table[n].get(key, 0) + count
    return table[q].get(1, 0)


@pytest.mark.parametrize("q", ODD)
def test_composition_count(q):
    # for odd q every odd-part composition has odd length
    assert len(odd_compositions(q)) == _odd_length_count(q)
    assert all(len(c) % 2 for c in odd_compositions(q))


def test_bsa_coefficient_examples():
    assert bsa_coefficient((1,)) == 1
    assert bsa_coefficient((3,)) == -2
    assert bsa_coefficient((1, 1, 1)) == 1


def test_bsa_vector_q3():
    h = h_1q(3)
    expected = word_element(C_DEGENERATE, h, [Mode.G(-HALF), Mode.L(-1)]).scale(6) - word_element(
        C_DEGENERATE, h, [Mode.G(-3 * HALF)]
    ).scale(2)
    assert bsa_vector(3) == expected
    assert bsa_vector(1) == word_element(C_DEGENERATE, h_1q(1), [Mode.G(-HALF)])


@pytest.mark.parametrize("q", ODD)
def test_bsa_vector_homogeneous_odd(q):
    v = bsa_vector(q)
    assert v.is_homogeneous() and v.level == Fraction(q, 2)
    assert v.parities() == {1}


def test_bsa_validate_reports():
    r1 = bsa_validate(1)
    assert r1["proportional"] and r1["ratio"] == "1"
    r3 = bsa_validate(3)
    assert not r3["proportional"]
    assert r3["residual"]["G(1/2)"] == ["8 * L(-1) ;"]


def test_singular_vector_small():
    h = h_1q(3)
    assert singular_vector(3) == word_element(C_DEGENERATE, h, [Mode.G(-HALF), Mode.L(-1)]) - word_element(
        C_DEGENERATE, h, [Mode.G(-3 * HALF)]
    )
    assert singular_vector(5).h == 2


@given(st.sampled_from(ODD))
def test_singular_vector_properties(q):
    v = singular_vector(q)
    assert singular_verify(v)
    assert v.weight == h_1q(q + 2)
    assert v.normalized() == v


def test_even_q_rejected():
    with pytest.raises(ValueError):
        singular_vector(4)
