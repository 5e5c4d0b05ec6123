"""The fusion ring on generators b(m), m odd, and its comparison with the
osp(1|2) Grothendieck ring under ``b(m) -> V((m-1)/4)``."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Mapping

from . import osp
from .zhu import fusion_parity, irreducible_fusion_dim

StructureConstants = Callable[[int, int], "FusionElement"]


class FusionElement(Counter):
    """Formal nonnegative combination of generators ``b(m)``."""

    def __init__(self, data: Mapping[int, int] | Iterable[int] | None = None) -> None:
        super().__init__(data or {})
        for m, k in list(self.items()):
            if m < 1 or m % 2 == 0:
                raise ValueError(f"generator label must be odd and positive, got {m}")
            if k < 0:
                raise ValueError(f"negative multiplicity {k} for b({m})")
            if k == 0:
                del self[m]

    @classmethod
    def generator(cls, m: int) -> FusionElement:
        return cls({m: 1})

    def __mul__(self, other: FusionElement) -> FusionElement:  # type: ignore[override]
        return multiply(self, other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Mapping):
            return {k: v for k, v in self.items() if v} == {k: v for k, v in other.items() if v}
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        if not self:
            return "0"
        return " + ".join(f"b({m})" if k == 1 else f"{k}*b({m})" for m, k in sorted(self.items()))


def generator_product(q: int, r: int) -> FusionElement:
    return FusionElement({s: irreducible_fusion_dim(q, r, s) for s in range(1, q + r + 2, 2)})


def multiply(a: Mapping[int, int], b: Mapping[int, int], table: StructureConstants = generator_product) -> FusionElement:
    out: Counter = Counter()
    for (q, m), (r, n) in product(sorted(a.items()), sorted(b.items())):
        for s, k in table(q, r).items():
            out[s] += m * n * k
    return FusionElement(out)


def to_osp(m: int) -> Fraction:
    if m < 1 or m % 2 == 0:
        raise ValueError(f"generator label must be odd and positive, got {m}")
    return Fraction(m - 1, 4)


def _labels(bound: int) -> list[int]:
    return list(range(1, bound + 1, 2))


def verify_isomorphism(bound: int, table: StructureConstants = generator_product) -> bool:
    """Images of all generator products up to ``bound`` agree with the osp(1|2)
    tensor rule; the osp side is itself cross-checked by explicit decomposition
    whenever both spins are at most 5/2."""
    for q, r in product(_labels(bound), repeat=2):
        j1, j2 = to_osp(q), to_osp(r)
        expected = osp.grothendieck_product(j1, j2)
        if 2 * j1 <= 5 and 2 * j2 <= 5 and osp.tensor_decompose(j1, j2) != expected:
            return False
        image = sorted(to_osp(s) for s, k in table(q, r).items() for _ in range(k))
        if image != expected:
            return False
    return True


def verify_ring_axioms(bound: int, table: StructureConstants = generator_product) -> bool:
    labels = _labels(bound)
    gens = {m: FusionElement.generator(m) for m in labels}
    one = gens[1]
    for m in labels:
        if multiply(one, gens[m], table) != gens[m] or multiply(gens[m], one, table) != gens[m]:
            return False
    for q, r in product(labels, repeat=2):
        if table(q, r) != table(r, q):
            return False
    for a, b, c in product(labels, repeat=3):
        left = multiply(multiply(gens[a], gens[b], table), gens[c], table)
        right = multiply(gens[a], multiply(gens[b], gens[c], table), table)
        if left != right:
            return False
    return True


def parity_labels(q: int, r: int) -> dict[int, str]:
    """Even/odd label of each summand of ``b(q) x b(r)``, larger label first."""
    hi, lo = max(q, r), min(q, r)
    return {s: fusion_parity(hi, lo, s) for s in sorted(generator_product(q, r))}


def cayley_table(bound: int) -> dict[str, object]:
    labels = _labels(bound)
    return {
        "max": bound,
        "products": [
            {"q": q, "r": r, "product": {str(s): k for s, k in sorted(generator_product(q, r).items())}, "text": str(generator_product(q, r))}
            for q, r in product(labels, repeat=2)
        ],
    }


def cayley_text(bound: int) -> str:
    labels = _labels(bound)
    cells = {(q, r): str(generator_product(q, r)) for q, r in product(labels, repeat=2)}
    width = max(len(c) for c in cells.values())
    head = " " * 6 + " | ".join(f"b({r})".ljust(width) for r in labels)
    rows = [head]
    for q in labels:
        rows.append(f"b({q})".ljust(6) + " | ".join(cells[(q, r)].ljust(width) for r in labels))
    return "\n".join(row.rstrip() for row in rows)
