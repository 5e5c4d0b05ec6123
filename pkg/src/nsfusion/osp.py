"""Finite-dimensional osp(1|2) modules V(j), their tensor products, and the
Grothendieck ring.

Basis of V(j): ``v_i`` for ``i = j, j-1/2, ..., -j``. ``v_i`` is even iff
``i - j`` is an integer, so the top vector is even and ``phi``, ``chi`` flip
parity. Weights and spins are Fractions with denominator 1 or 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .linalg import kernel
from .scalar import RadicalNumber, Scalar, simplify

GENERATORS = ("x", "y", "h", "phi", "chi")
ODD = frozenset({"phi", "chi"})
HALF = Fraction(1, 2)


class DecompositionMismatch(RuntimeError):
    pass


def as_halfint(value: int | Fraction | str) -> Fraction:
    v = Fraction(value)
    if v.denominator not in (1, 2):
        raise ValueError(f"{value} is not a half-integer")
    return v


def _is_int(q: Fraction) -> bool:
    return q.denominator == 1


def _sqrt(q: Fraction) -> Scalar:
    return simplify(RadicalNumber.sqrt(q))


def basis(j: Fraction) -> list[Fraction]:
    j = as_halfint(j)
    if j < 0:
        raise ValueError(f"spin must be nonnegative, got {j}")
    return [j - Fraction(k, 2) for k in range(int(4 * j) + 1)]


def parity(j: Fraction, i: Fraction) -> int:
    return 0 if _is_int(i - j) else 1


def dimension(j: Fraction) -> int:
    return int(4 * as_halfint(j)) + 1


def action_coefficient(g: str, j: Fraction, i: Fraction, *, flip_branch: bool = False) -> tuple[Fraction, Scalar] | None:
    """Image of ``v_i`` under ``g`` as ``(target_index, coefficient)``.

    ``[a][b]`` in the sl2 part is the product of integer parts, which gives the
    spin-(j-1/2) factors on the odd sub-multiplet. ``flip_branch`` swaps the
    odd-generator branches; it exists only for mutation tests.
    """
    fl = math.floor
    if g == "x":
        target, c = i + 1, Fraction(fl(j - i) * fl(j + i + 1))
    elif g == "y":
        target, c = i - 1, Fraction(fl(j + i) * fl(j - i + 1))
    elif g == "h":
        return i, 2 * i
    elif g in ODD:
        integral = _is_int(i - j) != flip_branch
        if g == "phi":
            target = i - HALF
            c = j + i if integral else j - i + HALF
            sign = -1 if integral else 1
        else:
            target = i + HALF
            c = j - i if integral else j + i + HALF
            sign = -1
        if abs(target) > j or c <= 0:
            return None
        return target, simplify(sign * _sqrt(c))
    else:
        raise ValueError(f"unknown generator {g!r}")
    if abs(target) > j or c <= 0:
        return None
    return target, _sqrt(c)


@dataclass(frozen=True)
class OspVector:
    j: Fraction
    entries: Mapping[Fraction, Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        idx = set(basis(self.j))
        clean = {}
        for i, c in self.entries.items():
            i = Fraction(i)
            if i not in idx:
                raise ValueError(f"index {i} outside V({self.j})")
            c = simplify(c)
            if c:
                clean[i] = c
        object.__setattr__(self, "entries", dict(sorted(clean.items(), reverse=True)))

    @classmethod
    def basis_vector(cls, j: Fraction, i: Fraction) -> OspVector:
        return cls(as_halfint(j), {Fraction(i): Fraction(1)})

    def __add__(self, other: OspVector) -> OspVector:
        out = dict(self.entries)
        for i, c in other.entries.items():
            out[i] = out.get(i, 0) + c
        return OspVector(self.j, out)

    def scale(self, a: Scalar) -> OspVector:
        return OspVector(self.j, {i: a * c for i, c in self.entries.items()})

    def __sub__(self, other: OspVector) -> OspVector:
        return self + other.scale(-1)

    def is_zero(self) -> bool:
        return not self.entries


def act(g: str, v: OspVector, *, flip_branch: bool = False) -> OspVector:
    out: dict[Fraction, Scalar] = {}
    for i, c in v.entries.items():
        img = action_coefficient(g, v.j, i, flip_branch=flip_branch)
        if img is None:
            continue
        t, a = img
        out[t] = out.get(t, 0) + a * c
    return OspVector(v.j, out)


# Relations actually satisfied by the module actions above.
# Each entry: (a, b, {generator: coefficient}) meaning [a, b} = sum coeff * g,
# with the anticommutator used when both a and b are odd.
RELATIONS: tuple[tuple[str, str, dict[str, int]], ...] = (
    ("h", "x", {"x": 2}),
    ("h", "y", {"y": -2}),
    ("x", "y", {"h": 1}),
    ("x", "phi", {"chi": -1}),
    ("y", "chi", {"phi": -1}),
    ("x", "chi", {}),
    ("y", "phi", {}),
    ("h", "phi", {"phi": -1}),
    ("h", "chi", {"chi": 1}),
    ("chi", "phi", {"h": 1}),
    ("chi", "chi", {"x": 2}),
    ("phi", "phi", {"y": -2}),
)


def _relation_name(a: str, b: str, rhs: Mapping[str, int]) -> str:
    bra = "{%s,%s}" % (a, b) if a in ODD and b in ODD else f"[{a},{b}]"
    terms = " + ".join(f"{c}*{g}" for g, c in rhs.items()) or "0"
    return f"{bra} = {terms}"


def verify_relations(j: Fraction | int, *, flip_branch: bool = False) -> list[str]:
    """Names of the relations violated on some basis vector of V(j)."""
    j = as_halfint(j)
    violations = []
    for a, b, rhs in RELATIONS:
        sign = 1 if (a in ODD and b in ODD) else -1
        for i in basis(j):
            v = OspVector.basis_vector(j, i)
            lhs = act(a, act(b, v, flip_branch=flip_branch), flip_branch=flip_branch)
            lhs = lhs + act(b, act(a, v, flip_branch=flip_branch), flip_branch=flip_branch).scale(sign)
            expected = OspVector(j, {})
            for g, c in rhs.items():
                expected = expected + act(g, v, flip_branch=flip_branch).scale(c)
            if not (lhs - expected).is_zero():
                violations.append(f"{_relation_name(a, b, rhs)} fails on v_{i}")
                break
    return violations


@dataclass(frozen=True)
class OspTensorVector:
    j1: Fraction
    j2: Fraction
    entries: Mapping[tuple[Fraction, Fraction], Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        b1, b2 = set(basis(self.j1)), set(basis(self.j2))
        clean = {}
        for (i1, i2), c in self.entries.items():
            i1, i2 = Fraction(i1), Fraction(i2)
            if i1 not in b1 or i2 not in b2:
                raise ValueError(f"index ({i1}, {i2}) outside V({self.j1}) x V({self.j2})")
            c = simplify(c)
            if c:
                clean[(i1, i2)] = c
        object.__setattr__(self, "entries", dict(sorted(clean.items(), reverse=True)))

    @classmethod
    def basis_vector(cls, j1: Fraction, j2: Fraction, i1: Fraction, i2: Fraction) -> OspTensorVector:
        return cls(as_halfint(j1), as_halfint(j2), {(Fraction(i1), Fraction(i2)): Fraction(1)})

    def parity_of(self, i1: Fraction, i2: Fraction) -> int:
        return (parity(self.j1, i1) + parity(self.j2, i2)) % 2

    def is_zero(self) -> bool:
        return not self.entries


def tensor_act(g: str, v: OspTensorVector) -> OspTensorVector:
    """Koszul rule: ``g(u (x) w) = g(u) (x) w + (-1)^{|g||u|} u (x) g(w)``."""
    g_odd = g in ODD
    out: dict[tuple[Fraction, Fraction], Scalar] = {}
    for (i1, i2), c in v.entries.items():
        img = action_coefficient(g, v.j1, i1)
        if img is not None:
            t, a = img
            out[(t, i2)] = out.get((t, i2), 0) + a * c
        img = action_coefficient(g, v.j2, i2)
        if img is not None:
            t, a = img
            sign = -1 if (g_odd and parity(v.j1, i1)) else 1
            out[(i1, t)] = out.get((i1, t), 0) + sign * a * c
    return OspTensorVector(v.j1, v.j2, out)


def weight_space(j1: Fraction, j2: Fraction, weight: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Basis pairs ``(i1, i2)`` with ``i1 + i2 == weight`` (h-eigenvalue ``2*weight``)."""
    return [(i1, weight - i1) for i1 in basis(j1) if abs(weight - i1) <= j2]


def highest_weight_vectors(j1: Fraction, j2: Fraction, weight: Fraction) -> list[OspTensorVector]:
    """Joint kernel of ``x`` and ``chi`` on one weight space of V(j1) (x) V(j2)."""
    j1, j2 = as_halfint(j1), as_halfint(j2)
    cols = weight_space(j1, j2, weight)
    if not cols:
        return []
    images = {g: [tensor_act(g, OspTensorVector.basis_vector(j1, j2, *c)) for c in cols] for g in ("x", "chi")}
    rows: list[list[Scalar]] = []
    for g, imgs in images.items():
        targets = sorted({k for im in imgs for k in im.entries}, reverse=True)
        for t in targets:
            rows.append([im.entries.get(t, Fraction(0)) for im in imgs])
    if not rows:
        null = [[Fraction(int(a == b)) for a in range(len(cols))] for b in range(len(cols))]
    else:
        null = kernel(rows, len(cols))
    return [OspTensorVector(j1, j2, dict(zip(cols, vec))) for vec in null]


def tensor_decompose(j1: Fraction | int, j2: Fraction | int) -> list[Fraction]:
    """Irreducible constituents of V(j1) (x) V(j2) from highest-weight vectors."""
    j1, j2 = as_halfint(j1), as_halfint(j2)
    top = j1 + j2
    found: list[Fraction] = []
    for k in range(int(4 * top) + 1):
        w = top - Fraction(k, 2)
        for vec in highest_weight_vectors(j1, j2, w):
            h_image = tensor_act("h", vec)
            if h_image.entries != OspTensorVector(j1, j2, {key: 2 * w * c for key, c in vec.entries.items()}).entries:
                raise DecompositionMismatch(f"kernel vector at weight {w} is not an h-eigenvector")
            found.append(w)
    total = sum(dimension(k) for k in found)
    if total != dimension(j1) * dimension(j2):
        raise DecompositionMismatch(
            f"V({j1}) x V({j2}): highest weights {[str(k) for k in found]} "
            f"account for dimension {total}, expected {dimension(j1) * dimension(j2)}"
        )
    return sorted(found)


def grothendieck_product(j1: Fraction | int, j2: Fraction | int) -> list[Fraction]:
    j1, j2 = as_halfint(j1), as_halfint(j2)
    lo, hi = abs(j1 - j2), j1 + j2
    return [lo + Fraction(k, 2) for k in range(int(2 * (hi - lo)) + 1)]


def h_spectrum(j1: Fraction, j2: Fraction) -> list[Fraction]:
    """Eigenvalues of h on the tensor product, with multiplicity."""
    out = []
    for i1 in basis(j1):
        for i2 in basis(j2):
            v = OspTensorVector.basis_vector(j1, j2, i1, i2)
            img = tensor_act("h", v)
            out.append(img.entries.get((i1, i2), Fraction(0)))
    return sorted(out)


def format_halfints(values: Iterable[Fraction]) -> list[str]:
    return [str(v) for v in values]
