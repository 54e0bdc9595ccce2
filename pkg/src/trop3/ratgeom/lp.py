"""Exact two-phase simplex over the rationals.

Everything here works with ``gmpy2.mpq``; callers convert at the boundary.
The pivoting rule is Dantzig's (most negative reduced cost) and falls back
to Bland's rule after a run of degenerate pivots, which rules out cycling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_DEGENERATE_SWITCH = 8


def to_mpq(v) -> mpq:
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    return mpq(v)


def to_fraction(q) -> Fraction:
    q = mpq(q)
    return Fraction(int(q.numerator), int(q.denominator))


@dataclass
class LPResult:
    status: str
    x: list | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


class _Tableau:
    def __init__(self, rows, basis, cost):
        self.rows = rows        # each row: coefficients + [rhs]
        self.basis = basis      # basic column of each row
        self.cost = cost        # reduced costs + [-objective]

    def pivot(self, r: int, c: int) -> None:
        rows = self.rows
        prow = rows[r]
        piv = prow[c]
        if piv != ONE:
            inv = ONE / piv
            prow = [v * inv if v else v for v in prow]
            rows[r] = prow
        nz = [k for k, v in enumerate(prow) if v]
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for k in nz:
                    row[k] -= f * prow[k]
        f = self.cost[c]
        if f:
            cost = self.cost
            for k in nz:
                cost[k] -= f * prow[k]
        self.basis[r] = c

    def run(self, allowed: int, max_iter: int = 100000) -> str:
        """Minimize over columns ``0..allowed-1``; returns a status string."""
        degenerate = 0
        for _ in range(max_iter):
            cost = self.cost
            if degenerate >= _DEGENERATE_SWITCH:
                c = next((j for j in range(allowed) if cost[j] < 0), -1)
            else:
                c, best = -1, ZERO
                for j in range(allowed):
                    v = cost[j]
                    if v < best:
                        c, best = j, v
            if c < 0:
                return OPTIMAL
            r, ratio = -1, None
            for i, row in enumerate(self.rows):
                a = row[c]
                if a > 0:
                    q = row[-1] / a
                    if ratio is None or q < ratio or (q == ratio and self.basis[i] < self.basis[r]):
                        r, ratio = i, q
            if r < 0:
                return UNBOUNDED
            degenerate = degenerate + 1 if ratio == 0 else 0
            self.pivot(r, c)
        raise RuntimeError("simplex iteration limit reached")


def _phase_one(A, b, n):
    """Set up and solve the auxiliary problem for ``A x = b, x >= 0``.

    Returns a tableau restricted to the ``n`` structural columns with a
    feasible basis, or None when infeasible.
    """
    m = len(A)
    rows = []
    for i in range(m):
        row = [to_mpq(v) for v in A[i]]
        rhs = to_mpq(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [ZERO] * m
        art[i] = ONE
        rows.append(row + art + [rhs])
    cost = [ZERO] * (n + m + 1)
    for row in rows:
        for k in range(n):
            if row[k]:
                cost[k] -= row[k]
        cost[-1] -= row[-1]
    tab = _Tableau(rows, [n + i for i in range(m)], cost)
    tab.run(n + m)
    if tab.cost[-1] != 0:
        return None
    # drive artificial variables out of the basis
    keep = []
    for i in range(len(tab.rows)):
        if tab.basis[i] >= n:
            row = tab.rows[i]
            c = next((k for k in range(n) if row[k]), -1)
            if c < 0:
                continue
            tab.pivot(i, c)
        keep.append(i)
    rows = [tab.rows[i][:n] + [tab.rows[i][-1]] for i in keep]
    basis = [tab.basis[i] for i in keep]
    return _Tableau(rows, basis, None)


def simplex_standard(c, A, b):
    """Minimize ``c x`` subject to ``A x = b``, ``x >= 0``.

    Returns ``(status, x, value)`` with mpq entries.
    """
    n = len(c)
    tab = _phase_one(A, b, n)
    if tab is None:
        return INFEASIBLE, None, None
    cvec = [to_mpq(v) for v in c]
    cost = cvec + [ZERO]
    for i, row in enumerate(tab.rows):
        cb = cvec[tab.basis[i]]
        if cb:
            for k, v in enumerate(row):
                if v:
                    cost[k] -= cb * v
    tab.cost = cost
    status = tab.run(n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [ZERO] * n
    for i, row in enumerate(tab.rows):
        x[tab.basis[i]] = row[-1]
    return OPTIMAL, x, -tab.cost[-1]


def feasible_standard(A, b, n):
    """Feasibility of ``A x = b, x >= 0``; returns x or None."""
    tab = _phase_one(A, b, n)
    if tab is None:
        return None
    x = [ZERO] * n
    for i, row in enumerate(tab.rows):
        x[tab.basis[i]] = row[-1]
    return x


def linprog(c, A_ge=(), b_ge=(), A_eq=(), b_eq=(), nonneg=False) -> LPResult:
    """Minimize ``c x`` subject to ``A_ge x >= b_ge`` and ``A_eq x = b_eq``.

    ``nonneg`` is either a bool for all variables or a per-variable list;
    variables that are not nonnegative are free.
    """
    n = len(c)
    if isinstance(nonneg, bool):
        nonneg = [nonneg] * n
    # column layout: one column per nonneg var, two per free var, then slacks
    cols = []
    for j in range(n):
        cols.append((j, 1))
        if not nonneg[j]:
            cols.append((j, -1))
    nstruct = len(cols)
    nslack = len(A_ge)
    ntot = nstruct + nslack
    A, b = [], []
    for r, (row, rhs) in enumerate(zip(A_ge, b_ge)):
        row = [to_mpq(v) for v in row]
        full = [row[j] * s for j, s in cols] + [ZERO] * nslack
        full[nstruct + r] = -ONE
        A.append(full)
        b.append(to_mpq(rhs))
    for row, rhs in zip(A_eq, b_eq):
        row = [to_mpq(v) for v in row]
        A.append([row[j] * s for j, s in cols] + [ZERO] * nslack)
        b.append(to_mpq(rhs))
    cvec = [to_mpq(c[j]) * s for j, s in cols] + [ZERO] * nslack
    if not A:
        # no constraints: bounded iff the objective cannot decrease
        if any(v < 0 for v in cvec):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, [Fraction(0)] * n, Fraction(0))
    status, xs, val = simplex_standard(cvec, A, b)
    if status != OPTIMAL:
        return LPResult(status)
    x = [ZERO] * n
    for k, (j, s) in enumerate(cols):
        if xs[k]:
            x[j] += s * xs[k]
    return LPResult(OPTIMAL, [to_fraction(v) for v in x], to_fraction(val))


def in_cone(v, gens, lin=()) -> bool:
    """Is ``v`` in ``cone(gens) + span(lin)``?  Exact Farkas test."""
    dim = len(v)
    columns = [list(g) for g in gens]
    for h in lin:
        columns.append(list(h))
        columns.append([-x for x in h])
    if not columns:
        return all(x == 0 for x in v)
    A = [[to_mpq(col[i]) for col in columns] for i in range(dim)]
    return feasible_standard(A, [to_mpq(x) for x in v], len(columns)) is not None
