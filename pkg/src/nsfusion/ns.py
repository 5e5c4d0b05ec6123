"""Neveu-Schwarz Verma modules: PBW words, normal-ordered mode action, the
Shapovalov form, Gram kernels and the reducibility curves.

Normal order is ``G(-r1)...G(-rk) L(-n1)...L(-nl)`` with ``r1 > ... > rk`` and
``n1 >= ... >= nl``. Inside the engine a word is a tuple of :class:`Mode`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple

from .linalg import kernel
from .scalar import RadicalNumber, Scalar, UnsupportedInversion, format_scalar, simplify

HALF = Fraction(1, 2)


class NonHomogeneous(ValueError):
    pass


class UnrepresentableRoot(ValueError):
    pass


class Mode(NamedTuple):
    kind: str  # "L" or "G"
    index: Fraction

    @classmethod
    def L(cls, n: int | Fraction) -> Mode:
        n = Fraction(n)
        if n.denominator != 1:
            raise ValueError(f"L index must be an integer, got {n}")
        return cls("L", n)

    @classmethod
    def G(cls, r: int | Fraction) -> Mode:
        r = Fraction(r)
        if r.denominator != 2:
            raise ValueError(f"G index must be a half-odd integer, got {r}")
        return cls("G", r)

    @property
    def odd(self) -> bool:
        return self.kind == "G"

    def adjoint(self) -> Mode:
        return Mode(self.kind, -self.index)

    def __str__(self) -> str:
        return f"{self.kind}({self.index})"


Word = tuple[Mode, ...]


@dataclass(frozen=True, order=False)
class PBWWord:
    """``G(-g[0])...G(-g[k-1]) L(-l[0])...L(-l[m-1])`` with positive entries."""

    g: tuple[Fraction, ...] = ()
    l: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        g = tuple(Fraction(r) for r in self.g)
        l = tuple(int(n) for n in self.l)
        if any(r.denominator != 2 or r <= 0 for r in g):
            raise ValueError(f"G part must be positive half-odd integers: {g}")
        if any(a <= b for a, b in zip(g, g[1:])):
            raise ValueError(f"G part must be strictly decreasing: {g}")
        if any(n <= 0 for n in l) or any(a < b for a, b in zip(l, l[1:])):
            raise ValueError(f"L part must be weakly decreasing positive integers: {l}")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "l", l)

    @classmethod
    def from_modes(cls, modes: Word) -> PBWWord:
        g = tuple(-m.index for m in modes if m.kind == "G")
        l = tuple(int(-m.index) for m in modes if m.kind == "L")
        return cls(g, l)

    @property
    def modes(self) -> Word:
        return tuple(Mode("G", -r) for r in self.g) + tuple(Mode("L", Fraction(-n)) for n in self.l)

    @property
    def level(self) -> Fraction:
        return sum(self.g, Fraction(0)) + sum(self.l)

    @property
    def parity(self) -> int:
        return len(self.g) % 2

    def sort_key(self) -> tuple:
        return (self.g, self.l)

    def __str__(self) -> str:
        if not self.g and not self.l:
            return "vac"
        return "".join(f"G(-{r})" for r in self.g) + "".join(f"L(-{n})" for n in self.l)


def _word_level(word: Word) -> Fraction:
    return -sum((m.index for m in word), Fraction(0))


def _distinct_half_odd(total: Fraction, below: Fraction) -> Iterator[tuple[Fraction, ...]]:
    """Strictly decreasing tuples of positive half-odd integers < ``below`` summing to ``total``."""
    if total == 0:
        yield ()
        return
    r = min(below - 1, total)
    if r.denominator == 1:
        r -= HALF
    while r > 0:
        for rest in _distinct_half_odd(total - r, r):
            yield (r,) + rest
        r -= 1


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def pbw_basis(level: Fraction | int) -> list[PBWWord]:
    """All PBW words at ``level``, ordered by descending ``(G part, L part)``."""
    level = Fraction(level)
    if level < 0 or level.denominator not in (1, 2):
        raise ValueError(f"level must be a nonnegative half-integer, got {level}")
    words = []
    g_level = level
    while g_level >= 0:
        rest = level - g_level
        if rest.denominator == 1:
            for g in _distinct_half_odd(g_level, g_level + 1):
                for l in _partitions(int(rest), int(rest)):
                    words.append(PBWWord(g, l))
        g_level -= HALF
    return sorted(set(words), key=PBWWord.sort_key, reverse=True)


def _bracket(x: Mode, y: Mode, c: Scalar) -> tuple[list[tuple[Mode, Scalar]], Scalar]:
    """Super bracket ``[x, y}`` as (mode terms, central scalar)."""
    m, n = x.index, y.index
    central: Scalar = Fraction(0)
    if x.kind == "L" and y.kind == "L":
        terms = [(Mode("L", m + n), m - n)]
        if m + n == 0:
            central = c * Fraction(m ** 3 - m, 12)
    elif x.kind == "L":
        terms = [(Mode("G", m + n), m / 2 - n)]
    elif y.kind == "L":
        terms = [(Mode("G", m + n), -(n / 2 - m))]
    else:
        terms = [(Mode("L", m + n), Fraction(2))]
        if m + n == 0:
            central = c * (m * m - Fraction(1, 4)) / 3
    return [(md, a) for md, a in terms if a], simplify(central)


def _in_order(x: Mode, y: Mode) -> bool:
    """Can creation mode ``x`` be prepended to a word starting with ``y``?"""
    if x.kind == "G":
        return y.kind == "L" or x.index < y.index
    return y.kind == "L" and x.index <= y.index


def _accumulate(out: dict[Word, Scalar], terms: Mapping[Word, Scalar], scale: Scalar) -> None:
    if not scale:
        return
    for w, a in terms.items():
        s = out.get(w, 0) + a * scale
        if s:
            out[w] = s
        else:
            out.pop(w, None)


class VermaModule:
    """Normal-ordering engine for M(c, h) with memoized single-mode action."""

    def __init__(self, c: Scalar, h: Scalar) -> None:
        self.c = simplify(c)
        self.h = simplify(h)
        self._cache: dict[tuple[Mode, Word], dict[Word, Scalar]] = {}

    def apply(self, x: Mode, word: Word) -> dict[Word, Scalar]:
        key = (x, word)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._apply(x, word)
            self._cache[key] = hit
        return hit

    def apply_to(self, x: Mode, terms: Mapping[Word, Scalar]) -> dict[Word, Scalar]:
        out: dict[Word, Scalar] = {}
        for w, a in terms.items():
            _accumulate(out, self.apply(x, w), a)
        return {w: simplify(a) for w, a in out.items()}

    def _apply(self, x: Mode, word: Word) -> dict[Word, Scalar]:
        if x.kind == "L" and x.index == 0:
            wt = simplify(self.h + _word_level(word))
            return {word: wt} if wt else {}
        if not word:
            return {(x,): Fraction(1)} if x.index < 0 else {}
        y, rest = word[0], word[1:]
        if x.index < 0:
            if _in_order(x, y):
                return {(x,) + word: Fraction(1)}
            if x.kind == "G" and y.kind == "G" and x.index == y.index:
                # G(-r)G(-r) = L(-2r)
                return dict(self.apply(Mode("L", 2 * x.index), rest))
        out: dict[Word, Scalar] = {}
        sign = -1 if (x.odd and y.odd) else 1
        _accumulate(out, self.apply_to(y, self.apply(x, rest)), sign)
        terms, central = _bracket(x, y, self.c)
        for mode, a in terms:
            _accumulate(out, self.apply(mode, rest), a)
        if central:
            _accumulate(out, {rest: Fraction(1)}, central)
        return out

    def apply_word(self, modes: Iterable[Mode], terms: Mapping[Word, Scalar]) -> dict[Word, Scalar]:
        """Apply an operator product ``m1 m2 ... mk`` (rightmost acts first)."""
        out = dict(terms)
        for m in reversed(tuple(modes)):
            out = self.apply_to(m, out)
        return out


@lru_cache(maxsize=64)
def verma_module(c: Scalar, h: Scalar) -> VermaModule:
    return VermaModule(c, h)


class VermaElement:
    """A finite combination of PBW words applied to the highest-weight vector of M(c, h)."""

    __slots__ = ("c", "h", "terms")

    def __init__(self, c: Scalar, h: Scalar, terms: Mapping[PBWWord, Scalar] | None = None) -> None:
        self.c = simplify(c)
        self.h = simplify(h)
        clean = {}
        for w, a in (terms or {}).items():
            a = simplify(a)
            if a:
                clean[w] = a
        self.terms: dict[PBWWord, Scalar] = dict(sorted(clean.items(), key=lambda kv: kv[0].sort_key(), reverse=True))

    @classmethod
    def vacuum(cls, c: Scalar, h: Scalar) -> VermaElement:
        return cls(c, h, {PBWWord(): Fraction(1)})

    @classmethod
    def _from_raw(cls, c: Scalar, h: Scalar, raw: Mapping[Word, Scalar]) -> VermaElement:
        return cls(c, h, {PBWWord.from_modes(w): a for w, a in raw.items()})

    def _raw(self) -> dict[Word, Scalar]:
        return {w.modes: a for w, a in self.terms.items()}

    @property
    def module(self) -> VermaModule:
        return verma_module(self.c, self.h)

    def is_zero(self) -> bool:
        return not self.terms

    def levels(self) -> set[Fraction]:
        return {w.level for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.levels()) <= 1

    @property
    def level(self) -> Fraction:
        lv = self.levels()
        if len(lv) > 1:
            raise NonHomogeneous(f"element mixes levels {sorted(lv)}")
        return lv.pop() if lv else Fraction(0)

    @property
    def weight(self) -> Scalar:
        return simplify(self.h + self.level)

    def parities(self) -> set[int]:
        return {w.parity for w in self.terms}

    def coefficient(self, word: PBWWord) -> Scalar:
        return self.terms.get(word, Fraction(0))

    def _check(self, other: VermaElement) -> None:
        if (self.c, self.h) != (other.c, other.h):
            raise ValueError("elements live in different Verma modules")

    def __add__(self, other: VermaElement) -> VermaElement:
        self._check(other)
        out = dict(self.terms)
        for w, a in other.terms.items():
            out[w] = out.get(w, 0) + a
        return VermaElement(self.c, self.h, out)

    def scale(self, a: Scalar) -> VermaElement:
        return VermaElement(self.c, self.h, {w: a * b for w, b in self.terms.items()})

    def __sub__(self, other: VermaElement) -> VermaElement:
        return self + other.scale(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VermaElement):
            return NotImplemented
        return (self.c, self.h, self.terms) == (other.c, other.h, other.terms)

    def __hash__(self) -> int:
        return hash((self.c, self.h, tuple(self.terms.items())))

    def normalized(self) -> VermaElement:
        """Scale so the last word in canonical order has coefficient 1."""
        if not self.terms:
            return self
        last = list(self.terms.values())[-1]
        return self.scale(1 / last)

    def lines(self) -> list[str]:
        return [f"{format_scalar(a)} * {w} ;" for w, a in self.terms.items()]

    def __str__(self) -> str:
        return "\n".join(self.lines()) if self.terms else "0 ;"

    def __repr__(self) -> str:
        body = " + ".join(f"({format_scalar(a)})*{w}" for w, a in self.terms.items()) or "0"
        return f"VermaElement(c={format_scalar(self.c)}, h={format_scalar(self.h)}: {body})"


def apply_mode(m: Mode, v: VermaElement) -> VermaElement:
    return VermaElement._from_raw(v.c, v.h, v.module.apply_to(m, v._raw()))


def apply_modes(modes: Iterable[Mode], v: VermaElement) -> VermaElement:
    """Apply the operator product ``modes[0] modes[1] ...`` (rightmost first)."""
    return VermaElement._from_raw(v.c, v.h, v.module.apply_word(modes, v._raw()))


def word_element(c: Scalar, h: Scalar, modes: Iterable[Mode]) -> VermaElement:
    """Normal form of an arbitrary mode product applied to the vacuum."""
    return apply_modes(modes, VermaElement.vacuum(c, h))


def shapovalov_matrix(c: Scalar, h: Scalar, level: Fraction | int) -> list[list[Scalar]]:
    module = verma_module(simplify(c), simplify(h))
    words = pbw_basis(level)
    # <u, w> = vacuum coefficient of u^dagger w; u^dagger applies u's adjoint modes left to right
    rows = []
    for u in words:
        row = []
        adj = tuple(m.adjoint() for m in reversed(u.modes))
        for w in words:
            res = module.apply_word(adj, {w.modes: Fraction(1)})
            row.append(simplify(res.get((), Fraction(0))))
        rows.append(row)
    return rows


def singular_verify(v: VermaElement) -> bool:
    """Annihilation by G(1/2) and G(3/2), which generate the positive part."""
    if not v.is_homogeneous():
        raise NonHomogeneous(f"element mixes levels {sorted(v.levels())}")
    return all(apply_mode(Mode.G(r), v).is_zero() for r in (HALF, 3 * HALF))


@dataclass(frozen=True)
class KernelVector:
    element: VermaElement
    singular: bool


def gram_kernel(c: Scalar, h: Scalar, level: Fraction | int) -> list[KernelVector]:
    """Null space of the Shapovalov form at ``level``.

    Each vector is flagged by whether it is itself singular; kernel vectors that
    are descendants of lower singular vectors are not.
    """
    c, h = simplify(c), simplify(h)
    words = pbw_basis(level)
    out = []
    for vec in kernel(shapovalov_matrix(c, h, level), len(words)):
        elem = VermaElement(c, h, dict(zip(words, vec)))
        if all(isinstance(a, Fraction) for a in elem.terms.values()):
            elem = elem.normalized()
        out.append(KernelVector(elem, singular_verify(elem)))
    return out


# reducibility curves


def central_charge_of(t: Scalar) -> Scalar:
    return simplify(Fraction(15, 2) + 3 * t + 3 * _invert(t))


def _invert(t: Scalar) -> Scalar:
    if isinstance(t, RadicalNumber):
        return simplify(t.inverse())
    return 1 / Fraction(t)


def curve_weight(p: int, q: int, t: Scalar) -> Scalar:
    return simplify(Fraction(1 - p * p, 8) * _invert(t) + Fraction(1 - p * q, 4) + Fraction(1 - q * q, 8) * t)


def h_1q(q: int) -> Fraction:
    """``h_{1,q}(-1) = (q-1)^2/8``; symmetric under ``q -> 2-q``."""
    return Fraction((q - 1) ** 2, 8)


@dataclass(frozen=True)
class CurvePoint:
    p: int
    q: int
    t: Scalar
    h: Scalar

    def as_dict(self) -> dict[str, object]:
        return {"p": self.p, "q": self.q, "t": format_scalar(self.t), "h": format_scalar(self.h)}


def curve_parameters(c: Scalar) -> list[Scalar]:
    """Roots of ``3t^2 + (15/2 - c)t + 3 = 0``, deduplicated."""
    b = simplify(Fraction(15, 2) - c)
    disc = simplify(b * b - 36)
    if isinstance(disc, RadicalNumber):
        raise UnrepresentableRoot(f"discriminant {format_scalar(disc)} is irrational; its square root is outside the scalar ring")
    if disc < 0:
        raise UnrepresentableRoot(f"discriminant {disc} is negative; t is not real")
    root = simplify(RadicalNumber.sqrt(disc))
    roots = []
    for sgn in (1, -1):
        t = simplify((-b + sgn * root) / 6)
        if t not in roots:
            roots.append(t)
    return roots


def reducibility_locus(c: Scalar, max_level: Fraction | int) -> list[CurvePoint]:
    c = simplify(c)
    max_level = Fraction(max_level)
    points: list[CurvePoint] = []
    seen = set()
    for t in curve_parameters(c):
        if central_charge_of(t) != c:
            raise AssertionError("curve parameter does not reproduce the central charge")
        for p in range(1, int(2 * max_level) + 1):
            for q in range(1, int(2 * max_level) // p + 1):
                if (p - q) % 2 or Fraction(p * q, 2) > max_level:
                    continue
                h = curve_weight(p, q, t)
                key = (h, p * q)
                if key in seen:
                    continue
                seen.add(key)
                points.append(CurvePoint(p, q, t, h))
    return points


__all__ = [
    "CurvePoint",
    "KernelVector",
    "Mode",
    "NonHomogeneous",
    "PBWWord",
    "UnrepresentableRoot",
    "UnsupportedInversion",
    "VermaElement",
    "VermaModule",
    "apply_mode",
    "apply_modes",
    "gram_kernel",
    "h_1q",
    "pbw_basis",
    "reducibility_locus",
    "shapovalov_matrix",
    "singular_verify",
    "word_element",
]
