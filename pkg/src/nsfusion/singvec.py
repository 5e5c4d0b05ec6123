"""Singular vectors of M(3/2, h_{1,q}): the Benoit-Saint-Aubin coefficient formula
and the Gram-kernel vector it is checked against.

The kernel vector is the authoritative one; downstream modules consume
:func:`singular_vector`.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

from .ns import HALF, Mode, VermaElement, apply_mode, gram_kernel, h_1q, word_element
from .scalar import format_scalar

C_DEGENERATE = Fraction(3, 2)


class KernelDimensionUnexpected(RuntimeError):
    pass


def _check_odd(q: int) -> None:
    if q < 1 or q % 2 == 0:
        raise ValueError(f"q must be an odd positive integer, got {q}")


def odd_compositions(q: int) -> list[tuple[int, ...]]:
    """Ordered sequences of odd positive integers summing to ``q``, lexicographic."""
    if q == 0:
        return [()]
    out = []
    for k in range(1, q + 1, 2):
        out.extend((k,) + rest for rest in odd_compositions(q - k))
    return sorted(out)


def bsa_coefficient(comp: tuple[int, ...]) -> Fraction:
    q, n = sum(comp), len(comp)
    sign = -1 if ((q - n) // 2) % 2 else 1
    value = Fraction(sign * prod(comb(k - 1, (k - 1) // 2) for k in comp))
    for j in range(1, (n - 1) // 2 + 1):
        sigma = sum(comp[: 2 * j])
        rho = sum(comp[2 * j - 1 :])
        value *= Fraction(4, sigma * rho)
    return value


def permutation_weight(comp: tuple[int, ...]) -> int:
    """Number of permutations in S_N that fix the sequence ``comp``."""
    return prod(factorial(m) for m in Counter(comp).values())


def bsa_vector(q: int) -> VermaElement:
    """Literal transcription: every sigma in S_N contributes, so a composition
    is weighted by the size of its stabilizer."""
    _check_odd(q)
    h = h_1q(q)
    total = VermaElement(C_DEGENERATE, h)
    for comp in odd_compositions(q):
        modes = [Mode.G(-Fraction(k, 2)) for k in comp]
        term = word_element(C_DEGENERATE, h, modes)
        total = total + term.scale(permutation_weight(comp) * bsa_coefficient(comp))
    return total


@lru_cache(maxsize=None)
def singular_vector(q: int) -> VermaElement:
    """Normalized generator of the level-q/2 Gram kernel of M(3/2, h_{1,q})."""
    _check_odd(q)
    if q == 1:
        return word_element(C_DEGENERATE, h_1q(1), [Mode.G(-HALF)])
    kern = gram_kernel(C_DEGENERATE, h_1q(q), Fraction(q, 2))
    if len(kern) != 1:
        raise KernelDimensionUnexpected(f"q={q}: kernel dimension {len(kern)}, expected 1")
    vec = kern[0]
    if not vec.singular:
        raise KernelDimensionUnexpected(f"q={q}: kernel vector is not annihilated by G(1/2), G(3/2)")
    return vec.element


def ratio(a: VermaElement, b: VermaElement) -> Fraction | None:
    """``lambda`` with ``a == lambda * b`` if one exists and is nonzero."""
    if a.is_zero() or b.is_zero() or set(a.terms) != set(b.terms):
        return None
    word = next(iter(b.terms))
    lam = a.terms[word] / b.terms[word]
    return lam if a == b.scale(lam) else None


def bsa_validate(q: int) -> dict[str, object]:
    bsa = bsa_vector(q)
    sing = singular_vector(q)
    lam = ratio(bsa, sing)
    report: dict[str, object] = {
        "q": q,
        "proportional": lam is not None,
        "ratio": format_scalar(lam) if lam is not None else None,
        "bsa_terms": bsa.lines(),
        "kernel_terms": sing.lines(),
    }
    if lam is None:
        report["residual"] = {
            f"G({r})": apply_mode(Mode.G(r), bsa).lines() for r in (HALF, 3 * HALF)
        }
    return report
