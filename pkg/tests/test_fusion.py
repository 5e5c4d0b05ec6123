from fractions import Fraction

import pytest

from nsfusion.fusion import (
    FusionElement,
    cayley_table,
    generator_product,
    multiply,
    to_osp,
    verify_isomorphism,
    verify_ring_axioms,
)
from nsfusion.zhu import fusion_parity

b = FusionElement.generator
ODD = [1, 3, 5, 7, 9]


def test_products():
    assert b(3) * b(3) == FusionElement({1: 1, 3: 1, 5: 1})
    assert b(5) * b(3) == FusionElement({3: 1, 5: 1, 7: 1})
    for m in ODD:
        assert b(1) * b(m) == b(m)
    assert (b(3) * b(3)) * b(5) == b(3) * (b(3) * b(5))


def test_to_osp():
    assert to_osp(1) == 0
    assert to_osp(3) == Fraction(1, 2)
    assert to_osp(7) == Fraction(3, 2)
    with pytest.raises(ValueError):
        to_osp(2)


def test_element_validation():
    with pytest.raises(ValueError):
        FusionElement({2: 1})
    with pytest.raises(ValueError):
        FusionElement({3: -1})
    assert str(FusionElement({5: 2, 1: 1})) == "b(1) + 2*b(5)"


def test_isomorphism_small_and_mutation():
    assert verify_isomorphism(3)

    def mutated(q, r):
        out = generator_product(q, r)
        if (q, r) == (3, 3):
            out = FusionElement({1: 1, 3: 1})
        return out

    assert not verify_isomorphism(3, mutated)

    def lopsided(q, r):
        out = generator_product(q, r)
        if (q, r) == (5, 3):
            out = FusionElement({3: 1, 7: 1})
        return out

    assert not verify_ring_axioms(5, lopsided)


@pytest.mark.parametrize("q", ODD)
@pytest.mark.parametrize("r", ODD)
def test_summand_count_and_parity(q, r):
    prod = generator_product(q, r)
    assert sum(prod.values()) == min(q, r)
    if q >= r:
        labels = [fusion_parity(q, r, s) for s in sorted(prod, reverse=True)]
        assert labels == [("even", "odd")[i % 2] for i in range(len(labels))]


def test_cayley_table_contains_example():
    table = cayley_table(5)
    entry = next(p for p in table["products"] if (p["q"], p["r"]) == (3, 3))
    assert entry["text"] == "b(1) + b(3) + b(5)"


def test_multiply_bilinear():
    a = FusionElement({1: 1, 3: 2})
    c = FusionElement({3: 1})
    assert multiply(a, c) == FusionElement({3: 1}) + FusionElement({1: 2, 3: 2, 5: 2})
