"""Fraction-free exact elimination.

The generic path uses only ring operations and zero tests, so it works over
multiquadratic RadicalNumber entries (where general inversion is unavailable).
Purely rational matrices go through ordinary Gauss-Jordan instead: without
content reduction the fraction-free entries grow too fast past ~20 columns.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalar import Scalar, simplify

Matrix = list[list[Scalar]]


def echelon(rows: Sequence[Sequence[Scalar]]) -> tuple[Matrix, list[int]]:
    """Row echelon form by cross-multiplication; returns ``(rows, pivot_columns)``."""
    m = [[simplify(a) for a in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        for i in range(r + 1, len(m)):
            a = m[i][col]
            if not a:
                continue
            m[i] = [simplify(p * x - a * y) for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(echelon(rows)[1])


def kernel(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> list[list[Scalar]]:
    """Basis of the right null space, one vector per free column.

    Back substitution rescales the partial solution by each pivot instead of
    dividing by it.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    if all(isinstance(a, (int, Fraction)) for row in rows for a in row):
        return rational_kernel(rows, ncols)
    return fraction_free_kernel(rows, ncols)


def fraction_free_kernel(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[list[Scalar]]:
    ech, pivots = echelon(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec: list[Scalar] = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, pc in reversed(list(zip(ech, pivots))):
            s = Fraction(0)
            for c in range(pc + 1, ncols):
                if row[c] and vec[c]:
                    s = s + row[c] * vec[c]
            s = simplify(s)
            if not s:
                continue
            p = row[pc]
            vec = [simplify(p * v) for v in vec]
            vec[pc] = simplify(-s)
        basis.append(vec)
    return basis


def rational_kernel(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[list[Scalar]]:
    # undivided cross-multiplication blows up coefficients over Q; reduce to RREF instead
    m = [[Fraction(a) for a in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    basis = []
    for f in (c for c in range(ncols) if c not in set(pivots)):
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, pc in zip(m, pivots):
            vec[pc] = -row[f]
        basis.append(vec)
    return basis


def determinant(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant by Gaussian elimination with field division.

    Only for Fraction (or quadratic) entries; used by tests and diagnostics.
    """
    m = [[simplify(a) for a in row] for row in rows]
    n = len(m)
    det: Scalar = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        for i in range(col + 1, n):
            a = m[i][col]
            if a:
                f = a / p
                m[i] = [simplify(x - f * y) for x, y in zip(m[i], m[col])]
    return simplify(det)


def mat_vec(rows: Sequence[Sequence[Scalar]], vec: Sequence[Scalar]) -> list[Scalar]:
    out = []
    for row in rows:
        s: Scalar = Fraction(0)
        for a, b in zip(row, vec):
            if a and b:
                s = s + a * b
        out.append(simplify(s))
    return out
