"""Matrix-coefficient projection through super-differential operators.

The pairing ``<w3', Y(w1, (x, phi)) w2>`` starts as ``c1 x^s + c2 phi x^(s-1/2)``
with ``s = h - h_{1,q} - h_{1,r}``. Each negative mode of the singular vector
acting on ``w2`` becomes a differential operator in ``x`` and ``phi``; the
result after the whole word is read off as ``C1`` (soul of the even seed) and
``C2`` (body of the odd seed), both polynomials in ``h``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ns import HALF, Mode, h_1q
from .scalar import Polynomial, proportional
from .singvec import singular_vector
from .zhu import q_polynomials

H = Polynomial.variable("h")
ONE = Polynomial.constant(1, "h")
ZERO = Polynomial([], "h")


class DepthMismatch(RuntimeError):
    pass


@dataclass(frozen=True)
class DensityCoefficient:
    """``body * x^(s-depth) + soul * phi x^(s-depth-1/2)``."""

    depth: Fraction
    body: Polynomial
    soul: Polynomial
    h1: Fraction
    hq: Fraction

    @property
    def exponent(self) -> Polynomial:
        """Symbolic ``s - depth`` as a polynomial in h."""
        return H - (self.hq + self.h1 + self.depth)

    def __add__(self, other: DensityCoefficient) -> DensityCoefficient:
        if self.depth != other.depth:
            raise DepthMismatch(f"cannot add depth {self.depth} and {other.depth}")
        return DensityCoefficient(self.depth, self.body + other.body, self.soul + other.soul, self.h1, self.hq)

    def scale(self, a: Fraction) -> DensityCoefficient:
        return DensityCoefficient(self.depth, self.body * a, self.soul * a, self.h1, self.hq)


def seed(q: int, r: int, *, odd: bool = False) -> DensityCoefficient:
    body, soul = (ZERO, ONE) if odd else (ONE, ZERO)
    return DensityCoefficient(Fraction(0), body, soul, h_1q(r), h_1q(q))


def apply_generator(m: Mode, e: DensityCoefficient) -> DensityCoefficient:
    """Action of one negative mode.

    ``L(-m) -> -(x^(1-m) d/dx + (1-m) x^(-m) (h1 + phi d/dphi / 2))`` and
    ``G(-n-1/2) -> x^(-n) (d/dphi - phi d/dx) + 2n x^(-n-1) h1 phi``.
    """
    if m.index >= 0:
        raise ValueError(f"apply_generator needs a negative mode, got {m}")
    body_exp = e.exponent
    soul_exp = body_exp - HALF
    if m.kind == "L":
        n = -m.index
        body = body_exp + (1 - n) * e.h1
        soul = soul_exp + (1 - n) * (e.h1 + HALF)
        return DensityCoefficient(e.depth + n, -(body * e.body), -(soul * e.soul), e.h1, e.hq)
    n = -m.index - HALF
    soul = -((body_exp - 2 * n * e.h1) * e.body)
    return DensityCoefficient(e.depth + n + HALF, e.soul, soul, e.h1, e.hq)


def apply_word(modes: tuple[Mode, ...], e: DensityCoefficient) -> DensityCoefficient:
    """Leftmost mode outermost."""
    for m in reversed(modes):
        e = apply_generator(m, e)
    return e


def _run(q: int, r: int, odd: bool) -> DensityCoefficient:
    total = None
    for word, coeff in singular_vector(q).terms.items():
        out = apply_word(word.modes, seed(q, r, odd=odd)).scale(coeff)
        total = out if total is None else total + out
    assert total is not None
    if total.depth != Fraction(q, 2):
        raise DepthMismatch(f"q={q}: accumulated depth {total.depth}, expected {Fraction(q, 2)}")
    return total


@lru_cache(maxsize=None)
def project(q: int, r: int) -> tuple[Polynomial, Polynomial]:
    """``(C1, C2)`` for the singular vector of M(3/2, h_{1,q}) against weight h_{1,r}."""
    even = _run(q, r, odd=False)
    odd = _run(q, r, odd=True)
    if not even.body.is_zero() or not odd.soul.is_zero():
        raise DepthMismatch(f"q={q}, r={r}: projection did not flip parity")
    return even.soul, odd.body


STEPS = ("bound", "lattice")


def _closed_form(label: int, spin_label: int, shift: Fraction, step: str) -> tuple[Polynomial, Polynomial]:
    j = Fraction(spin_label - 1, 4)
    c1 = ONE
    k = -j
    while k <= j:
        c1 = c1 * (H - h_1q(label + int(4 * k)))
        k += 1
    c2 = ONE
    # "bound": k runs up from the lower bound; "lattice": k stays in j + Z
    k = -j + HALF if step == "bound" else -j + 1
    while k <= j - HALF:
        c2 = c2 * (H + shift - h_1q(label + int(4 * k)))
        k += 1
    return c1, c2


def closed_form_C(
    q: int, r: int, *, shift: Fraction = HALF, step: str = "bound"
) -> dict[str, tuple[Polynomial, Polynomial]]:
    """Product formulas for both index orientations.

    ``printed`` takes ``j = (r-1)/4`` with factors ``h_{1,q+4k}``; ``swapped``
    exchanges the roles of q and r. ``shift`` is the constant added to ``h``
    in the second product and ``step`` picks how k walks its range there.
    """
    if step not in STEPS:
        raise ValueError(f"step must be one of {STEPS}, got {step!r}")
    return {
        "printed": _closed_form(q, r, shift, step),
        "swapped": _closed_form(r, q, shift, step),
    }


def closed_form_report(q: int, r: int) -> dict[str, object]:
    c1, c2 = project(q, r)
    detail: dict[str, dict[str, bool]] = {}
    for step in STEPS:
        for shift_name, shift in (("shifted", HALF), ("unshifted", Fraction(0))):
            for orient, (k1, k2) in closed_form_C(q, r, shift=shift, step=step).items():
                detail[f"{orient}/{shift_name}/{step}"] = {"C1": proportional(c1, k1), "C2": proportional(c2, k2)}
    # literal reading first: printed before swapped, shifted before unshifted, bound before lattice
    matches = [key for key, checks in detail.items() if all(checks.values())]
    orientation, shift_used, step_used = matches[0].split("/") if matches else ("neither", None, None)
    return {
        "closed_form_orientation": orientation,
        "closed_form_shift": shift_used,
        "closed_form_step": step_used,
        "closed_form_matches": matches,
        "closed_form_detail": detail,
    }


def matches_zhu(q: int, r: int) -> bool:
    """C1 is proportional to Q2 and C2 to Q1 once x is renamed to h."""
    q1, q2 = q_polynomials(q, r)
    c1, c2 = project(q, r)
    return proportional(c1, q2.with_var("h")) and proportional(c2, q1.with_var("h"))


def density_report(q: int, r: int) -> dict[str, object]:
    c1, c2 = project(q, r)
    report: dict[str, object] = {"q": q, "r": r, "C1": str(c1), "C2": str(c2), "matches_zhu": matches_zhu(q, r)}
    report.update(closed_form_report(q, r))
    return report
