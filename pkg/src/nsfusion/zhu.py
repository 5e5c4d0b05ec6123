"""Zhu bimodule reduction for M(3/2, h_{1,q}) tensored with the top level of
L(3/2, h_{1,r}), and the fusion rules read off from it.

Every PBW word applied to the highest-weight vector reduces to
``P0(x)[v] + P1(x)[G(-1/2)v]``; the right action ``y`` is the scalar
``h_{1,r}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ns import HALF, Mode, VermaElement, Word, apply_mode, h_1q
from .scalar import Polynomial, Scalar, poly_eval
from .singvec import singular_vector

X = Polynomial.variable("x")
ONE = Polynomial.constant(1, "x")
ZERO = Polynomial([], "x")
G_HALF = Mode("G", -HALF)


class ImpurityError(RuntimeError):
    pass


class AmbiguousParity(RuntimeError):
    pass


class RootAuditFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class BimoduleElement:
    q_label: int
    y_value: Fraction
    even_part: Polynomial = ZERO
    odd_part: Polynomial = ZERO

    def __add__(self, other: BimoduleElement) -> BimoduleElement:
        return BimoduleElement(
            self.q_label, self.y_value, self.even_part + other.even_part, self.odd_part + other.odd_part
        )

    def scale(self, a: Scalar) -> BimoduleElement:
        return BimoduleElement(self.q_label, self.y_value, self.even_part * a, self.odd_part * a)


def _level(word: Word) -> Fraction:
    return -sum((m.index for m in word), Fraction(0))


@lru_cache(maxsize=None)
def _reduce(word: Word, hq: Fraction, y: Fraction) -> tuple[Polynomial, Polynomial]:
    if not word:
        return ONE, ZERO
    first, rest = word[0], word[1:]
    if first.kind == "L":
        n = -first.index
        factor = Polynomial([n * y + hq + _level(rest), -1], "x")
        p0, p1 = _reduce(rest, hq, y)
        return factor * p0, factor * p1
    if first != G_HALF:
        # G(-n-1/2) and G(-1/2) agree modulo O(M)
        return _reduce((G_HALF,) + rest, hq, y)
    if not rest:
        return ZERO, ONE
    second, tail = rest[0], rest[1:]
    if second.kind == "G":
        # [G(-1/2)G(-m-1/2)u] = ((2m+1)y - x + wt(u))[u]
        factor = Polynomial([2 * (-second.index) * y + hq + _level(tail), -1], "x")
        p0, p1 = _reduce(tail, hq, y)
        return factor * p0, factor * p1
    # G(-1/2)L(-n) = L(-n)G(-1/2) + (n-1)/2 G(-n-1/2)
    n = -second.index
    a0, a1 = _reduce((second, G_HALF) + tail, hq, y)
    b0, b1 = _reduce((Mode("G", -n - HALF),) + tail, hq, y)
    k = (n - 1) / 2
    return a0 + b0 * k, a1 + b1 * k


def zhu_reduce(word: Word, q_label: int, y_value: Fraction) -> BimoduleElement:
    """Class of ``word . v_{1,q}``; ``word`` is any sequence of negative modes."""
    p0, p1 = _reduce(tuple(word), h_1q(q_label), Fraction(y_value))
    return BimoduleElement(q_label, Fraction(y_value), p0, p1)


def reduce_element(v: VermaElement, q_label: int, y_value: Fraction) -> BimoduleElement:
    total = BimoduleElement(q_label, Fraction(y_value))
    for w, a in v.terms.items():
        total = total + zhu_reduce(w.modes, q_label, y_value).scale(a)
    return total


@lru_cache(maxsize=None)
def q_polynomials(q: int, r: int) -> tuple[Polynomial, Polynomial]:
    """``(Q1, Q2)``: odd-class image of the singular vector and even-class image
    of ``G(-1/2)`` applied to it, with ``y = h_{1,r}``."""
    sing = singular_vector(q)
    y = h_1q(r)
    first = reduce_element(sing, q, y)
    if not first.even_part.is_zero():
        raise ImpurityError(f"q={q}, r={r}: singular vector reduces with an even component {first.even_part}")
    second = reduce_element(apply_mode(G_HALF, sing), q, y)
    if not second.odd_part.is_zero():
        raise ImpurityError(f"q={q}, r={r}: G(-1/2) v_sing reduces with an odd component {second.odd_part}")
    return first.odd_part, second.even_part


def candidate_labels(q: int, r: int) -> list[int]:
    bound = q + r + 1
    return [s for s in range(-bound, bound + 1) if s % 2]


def root_labels(poly: Polynomial, q: int, r: int) -> set[Fraction]:
    """Roots of ``poly`` among the weights ``h_{1,s}``, after checking that no
    root lies outside that candidate set."""
    if poly.is_zero():
        raise RootAuditFailure("zero polynomial has every root")
    roots: set[Fraction] = set()
    rest = poly
    for h in sorted({h_1q(s) for s in candidate_labels(q, r)}):
        while rest.degree > 0:
            quotient, rem = rest.divmod_linear(h)
            if rem:
                break
            roots.add(h)
            rest = quotient
    if rest.degree > 0:
        raise RootAuditFailure(f"{poly} has roots outside the candidate weights (cofactor {rest})")
    return roots


def expected_even_labels(q: int, r: int) -> list[int]:
    """``q+r-1, q+r-5, ..., q-r+1``."""
    return list(range(q + r - 1, q - r, -4))


def expected_odd_labels(q: int, r: int) -> list[int]:
    """``q+r-3, q+r-7, ..., q-r+3``."""
    return list(range(q + r - 3, q - r + 2, -4))


def _vanishes(poly: Polynomial, s: int) -> bool:
    return not poly_eval(poly, h_1q(s))


def verma_fusion_dim(q: int, r: int, s: int) -> int:
    q1, q2 = q_polynomials(q, r)
    return int(_vanishes(q1, s) or _vanishes(q2, s))


def irreducible_fusion_dim(q: int, r: int, s: int) -> int:
    return verma_fusion_dim(q, r, s) & verma_fusion_dim(r, q, s)


def fusion_parity(q: int, r: int, s: int) -> str:
    """``"even"``, ``"odd"`` or ``"zero"`` for the intertwiners of type (s; q, r), ``q >= r``."""
    if q < r:
        raise ValueError(f"fusion_parity needs q >= r, got q={q}, r={r}")
    if not irreducible_fusion_dim(q, r, s):
        return "zero"
    q1, q2 = q_polynomials(q, r)
    even, odd = _vanishes(q2, s), _vanishes(q1, s)
    if even and odd:
        raise AmbiguousParity(f"both Q1 and Q2 vanish at h_(1,{s}) for q={q}, r={r}")
    return "even" if even else "odd"


def fusion_table_entry(q: int, r: int) -> dict[str, object]:
    """JSON record for one pair; parity is taken with the larger label first."""
    hi, lo = max(q, r), min(q, r)
    entries = []
    for s in range(1, q + r + 2, 2):
        dim = irreducible_fusion_dim(q, r, s)
        entries.append({"s": s, "dim": dim, "parity": fusion_parity(hi, lo, s) if dim else None})
    return {"q": q, "r": r, "entries": entries}
