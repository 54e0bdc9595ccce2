"""Exact linear algebra over Q (Fractions) and Z (Bareiss)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd


def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(v)


def rref(rows, ncols=None):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    M = [[as_fraction(v) for v in row] for row in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows) -> int:
    rows = [r for r in rows]
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows, n: int) -> list[list[Fraction]]:
    """Basis of ``{x : rows * x = 0}`` in Q^n."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = rref(rows, n)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * n
        x[fcol] = Fraction(1)
        for r, pc in enumerate(piv):
            x[pc] = -R[r][fcol]
        basis.append(x)
    return basis


@dataclass
class LinearSolution:
    """Outcome of :func:`solve_linear`.

    ``kind`` is ``"unique"``, ``"family"`` or ``"infeasible"``.  For a family
    the solution set is ``particular + span(directions)``.
    """

    kind: str
    particular: list[Fraction] | None = None
    directions: list[list[Fraction]] = field(default_factory=list)


def solve_linear(A, b) -> LinearSolution:
    n = len(A[0]) if A else 0
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, piv = rref(aug, n + 1)
    if n in piv:
        return LinearSolution("infeasible")
    x = [Fraction(0)] * n
    for r, pc in enumerate(piv):
        x[pc] = R[r][n]
    dirs = nullspace(A, n) if len(piv) < n else []
    return LinearSolution("unique" if not dirs else "family", x, dirs)


def det_bareiss(M) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def primitive(form, orient: bool = True) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers.

    With ``orient`` the first nonzero entry is made positive; otherwise the
    direction is kept (only positive scaling is applied).
    """
    fr = [as_fraction(v) for v in form]
    den = 1
    for v in fr:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints)
    ints = [v // g for v in ints]
    if orient:
        lead = next(v for v in ints if v != 0)
        if lead < 0:
            ints = [-v for v in ints]
    return tuple(ints)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))
