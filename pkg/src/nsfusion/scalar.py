"""Exact scalars: rationals, the radical ring Q[sqrt(n)], and tagged polynomials.

Rationals are plain :class:`fractions.Fraction`. A :class:`RadicalNumber` is a
finite sum ``sum c_n * sqrt(n)`` over square-free ``n``; square roots of
distinct square-free integers are linearly independent over Q, so structural
equality is exact equality.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction
Scalar = Union[int, Fraction, "RadicalNumber"]


class UnsupportedInversion(ArithmeticError):
    """Raised when inverting an element that does not lie in a quadratic field."""


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n == k*k*m`` and ``m`` square-free."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    k, m = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            m *= p
        p += 1
    return k, m * n


class RadicalNumber:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction] | None = None) -> None:
        clean: dict[int, Fraction] = {}
        for n, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            k, m = squarefree_split(n)
            clean[m] = clean.get(m, Fraction(0)) + c * k
            if not clean[m]:
                del clean[m]
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> RadicalNumber:
        # terms already square-free keyed and zero-free
        obj = cls.__new__(cls)
        obj._terms = dict(sorted(terms.items()))
        obj._hash = None
        return obj

    @classmethod
    def sqrt(cls, value: int | Fraction) -> RadicalNumber:
        """Exact square root of a nonnegative rational."""
        value = Fraction(value)
        if value < 0:
            raise ValueError(f"square root of negative number {value}")
        if not value:
            return cls()
        # sqrt(a/b) = sqrt(a*b)/b
        return cls({value.numerator * value.denominator: Fraction(1, value.denominator)})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_rational(self) -> bool:
        return all(n == 1 for n in self._terms)

    def rational_part(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.rational_part()

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic

    def __add__(self, other: Scalar) -> RadicalNumber:
        other = as_radical(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for n, c in other._terms.items():
            s = out.get(n, 0) + c
            if s:
                out[n] = s
            else:
                out.pop(n, None)
        return RadicalNumber._raw(out)

    __radd__ = __add__

    def __neg__(self) -> RadicalNumber:
        return RadicalNumber._raw({n: -c for n, c in self._terms.items()})

    def __pos__(self) -> RadicalNumber:
        return self

    def __sub__(self, other: Scalar) -> RadicalNumber:
        other = as_radical(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> RadicalNumber:
        return (-self) + other

    def __mul__(self, other: Scalar) -> RadicalNumber:
        if isinstance(other, (int, Fraction)):
            if not other:
                return RadicalNumber._raw({})
            return RadicalNumber._raw({n: c * other for n, c in self._terms.items()})
        other = as_radical(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for m, a in self._terms.items():
            for n, b in other._terms.items():
                # m, n square-free: sqrt(m*n) = g*sqrt((m/g)*(n/g))
                g = math.gcd(m, n)
                key = (m // g) * (n // g)
                s = out.get(key, 0) + a * b * g
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return RadicalNumber._raw(out)

    __rmul__ = __mul__

    def conjugate(self) -> RadicalNumber:
        """Galois conjugate ``a + b sqrt(n) -> a - b sqrt(n)`` (quadratic support only)."""
        self._check_quadratic()
        return RadicalNumber._raw({n: (c if n == 1 else -c) for n, c in self._terms.items()})

    def _check_quadratic(self) -> None:
        if len([n for n in self._terms if n != 1]) > 1:
            raise UnsupportedInversion(f"{self} does not lie in a quadratic field")

    def inverse(self) -> RadicalNumber:
        if not self._terms:
            raise ZeroDivisionError("inverse of zero RadicalNumber")
        self._check_quadratic()
        conj = self.conjugate()
        norm = (self * conj).to_fraction()
        return conj * (1 / norm)

    def __truediv__(self, other: Scalar) -> RadicalNumber:
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = as_radical(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> RadicalNumber:
        return as_radical(other) * self.inverse()

    def __pow__(self, k: int) -> RadicalNumber:
        if k < 0:
            return self.inverse() ** (-k)
        out = RadicalNumber({1: 1})
        for _ in range(k):
            out = out * self
        return out

    # comparison

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_part() == other
        if isinstance(other, RadicalNumber):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational_part())
            else:
                self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def sort_key(self) -> tuple:
        return tuple((n, c) for n, c in self._terms.items())

    def __float__(self) -> float:
        # display/diagnostics only; never used by the exact core
        return float(sum(float(c) * math.sqrt(n) for n, c in self._terms.items()))

    def __repr__(self) -> str:
        return f"RadicalNumber({self})"

    def __str__(self) -> str:
        return format_radical(self)


def as_radical(x: object) -> RadicalNumber:
    if isinstance(x, RadicalNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return RadicalNumber._raw({1: Fraction(x)} if x else {})
    return NotImplemented  # type: ignore[return-value]


def simplify(x: Scalar) -> Scalar:
    """Collapse a rational RadicalNumber to a Fraction; leave everything else alone."""
    if isinstance(x, RadicalNumber) and x.is_rational():
        return x.rational_part()
    if isinstance(x, int):
        return Fraction(x)
    return x


def radical_invert(a: Scalar) -> Scalar:
    if isinstance(a, RadicalNumber):
        return simplify(a.inverse())
    if not a:
        raise ZeroDivisionError("division by zero")
    return 1 / Fraction(a)


def is_zero(x: Scalar) -> bool:
    return not x


def format_rational(q: Fraction | int) -> str:
    return str(Fraction(q))


def format_radical(x: Scalar) -> str:
    if not isinstance(x, RadicalNumber):
        return format_rational(x)
    if not x._terms:
        return "0"
    parts = []
    for n, c in x._terms.items():
        parts.append(format_rational(c) if n == 1 else f"{format_rational(c)}*sqrt({n})")
    return " + ".join(parts)


def format_scalar(x: Scalar) -> str:
    return format_radical(x)


# operator, then an optional sign of its own so that "a + -b" (the canonical rendering) reads back
_TERM = re.compile(r"\s*([+-])?\s*([+-])?\s*([0-9]+(?:/[0-9]+)?)?\s*(\*?\s*sqrt\(\s*([0-9]+(?:/[0-9]+)?)\s*\))?\s*")


def parse_scalar(text: str) -> Scalar:
    """Parse an exact scalar such as ``"3/2"``, ``"-7"`` or ``"15/2-3*sqrt(5)"``.

    Floats are rejected.
    """
    s = text.strip()
    if not s or "." in s or "e" in s.lower().replace("sqrt", ""):
        raise ValueError(f"not an exact scalar: {text!r}")
    pos = 0
    total: Scalar = Fraction(0)
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        sign, inner, coeff, root, radicand = m.groups()
        if inner is not None and sign is None:
            raise ValueError(f"misplaced sign in {text!r}")
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r}")
        if coeff is None and root is None:
            raise ValueError(f"empty term in {text!r}")
        if coeff is not None and root is not None and not root.lstrip().startswith("*"):
            raise ValueError(f"missing '*' before sqrt in {text!r}")
        value: Scalar = Fraction(coeff) if coeff is not None else Fraction(1)
        if root is not None:
            value = RadicalNumber.sqrt(Fraction(radicand)) * value
        negative = (sign == "-") != (inner == "-")
        total = total + (-value if negative else value)
        first = False
        pos = m.end()
    return simplify(total)


class Polynomial:
    """Dense univariate polynomial with a variable tag (``x``, ``y`` or ``h``)."""

    __slots__ = ("var", "coeffs")

    VARIABLES = ("x", "y", "h")

    def __init__(self, coeffs: Iterable[Scalar], var: str = "x") -> None:
        if var not in self.VARIABLES:
            raise ValueError(f"unknown polynomial variable {var!r}")
        cs = [simplify(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.var = var
        self.coeffs: tuple[Scalar, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: Scalar, var: str = "x") -> Polynomial:
        return cls([c], var)

    @classmethod
    def variable(cls, var: str = "x") -> Polynomial:
        return cls([0, 1], var)

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar], var: str = "x") -> Polynomial:
        out = cls([1], var)
        for r in roots:
            out = out * cls([-r, 1], var)
        return out

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def _coerce(self, other: object) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.var != self.var:
                raise TypeError(f"cannot mix polynomials in {self.var} and {other.var}")
            return other
        if isinstance(other, (int, Fraction, RadicalNumber)):
            return Polynomial([other], self.var)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> Polynomial:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o.coeffs + (0,) * (n - len(o.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial([-c for c in self.coeffs], self.var)

    def __sub__(self, other: object) -> Polynomial:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> Polynomial:
        return (-self) + other

    def __mul__(self, other: object) -> Polynomial:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Polynomial([], self.var)
        out: list[Scalar] = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out, self.var)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, RadicalNumber)):
            return self.coeffs == Polynomial([other], self.var).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.var, self.coeffs))

    def __call__(self, value: Scalar) -> Scalar:
        return poly_eval(self, value)

    def with_var(self, var: str) -> Polynomial:
        """Rename the variable; used when identifying x with h across modules."""
        return Polynomial(self.coeffs, var)

    def divmod_linear(self, root: Scalar) -> tuple[Polynomial, Scalar]:
        """Synthetic division by ``(var - root)``: returns quotient and remainder."""
        if not self.coeffs:
            return self, Fraction(0)
        acc: Scalar = Fraction(0)
        quotient: list[Scalar] = []
        for c in reversed(self.coeffs):
            acc = acc * root + c
            quotient.append(acc)
        rem = quotient.pop()
        return Polynomial(reversed(quotient), self.var), simplify(rem)

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        lead = self.leading()
        return Polynomial([c / lead for c in self.coeffs], self.var)

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        return format_polynomial(self)


def poly_eval(p: Polynomial, v: Scalar) -> Scalar:
    acc: Scalar = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * v + c
    return simplify(acc)


def proportional(p: Polynomial, q: Polynomial) -> bool:
    """True iff ``p = lambda * q`` for a nonzero scalar ``lambda`` (same variable)."""
    if p.var != q.var:
        raise TypeError(f"cannot compare polynomials in {p.var} and {q.var}")
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    return p.monic() == q.monic()


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        cs = format_scalar(c)
        if isinstance(c, RadicalNumber) and len(c.terms) > 1:
            cs = f"({cs})"
        if k == 0:
            parts.append(cs)
        elif k == 1:
            parts.append(f"{cs}*{p.var}")
        else:
            parts.append(f"{cs}*{p.var}^{k}")
    return " + ".join(parts)
