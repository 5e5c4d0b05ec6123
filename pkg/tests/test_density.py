from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nsfusion.density import (
    DensityCoefficient,
    ZERO,
    apply_generator,
    apply_word,
    closed_form_C,
    closed_form_report,
    matches_zhu,
    project,
    seed,
)
from nsfusion.ns import Mode, h_1q
from nsfusion.scalar import Polynomial, proportional

HALF = Fraction(1, 2)
H = Polynomial.variable("h")
ODD = [1, 3, 5, 7, 9]
PAIRS = [(q, r) for q in ODD for r in ODD]


def test_generator_examples():
    q, r = 3, 5
    s = H - h_1q(q) - h_1q(r)
    e = apply_generator(Mode.G(-HALF), seed(q, r))
    assert e.body.is_zero() and e.soul == -s
    e = apply_generator(Mode.L(-1), seed(q, r))
    assert e.body == -s and e.soul.is_zero()
    zero = DensityCoefficient(Fraction(0), ZERO, ZERO, h_1q(r), h_1q(q))
    for m in (Mode.L(-2), Mode.G(-3 * HALF)):
        out = apply_generator(m, zero)
        assert out.body.is_zero() and out.soul.is_zero()


def test_project_examples():
    for r in ODD:
        c1, c2 = project(1, r)
        assert proportional(c1, H - h_1q(r)) and c2 == Polynomial.constant(1, "h")
    c1, c2 = project(3, 3)
    assert proportional(c1, H * (H - 2)) and proportional(c2, H - HALF)
    c1, c2 = project(3, 5)
    assert proportional(c1, (H - HALF) * (H - Fraction(9, 2))) and proportional(c2, H - 2)


@pytest.mark.parametrize("q,r", PAIRS)
def test_matches_zhu(q, r):
    assert matches_zhu(q, r)
    c1, c2 = project(q, r)
    assert c1.degree + c2.degree == q


def test_closed_form_examples():
    for r in ODD:
        assert closed_form_C(1, r)["swapped"][1] == Polynomial.constant(1, "h")
    assert closed_form_C(5, 1)["printed"][1] == Polynomial.constant(1, "h")
    # j = 1/2: one factor with k = 0
    assert closed_form_C(3, 3)["swapped"][1] == H + HALF - h_1q(3)
    report = closed_form_report(3, 3)
    assert report["closed_form_orientation"] in {"printed", "swapped"}
    assert "swapped/unshifted/bound" in report["closed_form_matches"]


words = st.lists(
    st.one_of(st.integers(1, 3).map(lambda n: Mode.L(-n)), st.integers(0, 2).map(lambda n: Mode.G(-n - HALF))),
    min_size=1,
    max_size=4,
)


@settings(max_examples=50, deadline=None)
@given(words, words, st.fractions(-5, 5, max_denominator=6), st.fractions(-5, 5, max_denominator=6))
def test_linearity(w1, w2, a, b):
    start = seed(3, 5, odd=True)
    d1 = apply_word(tuple(w1), start)
    d2 = apply_word(tuple(w2), start)
    if d1.depth != d2.depth:
        return
    combined = d1.scale(a) + d2.scale(b)
    assert combined.body == d1.body * a + d2.body * b
    assert combined.soul == d1.soul * a + d2.soul * b
