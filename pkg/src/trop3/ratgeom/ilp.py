"""Minimum-sum integer points of cones by exact LP branch-and-bound."""

from __future__ import annotations

import math
from fractions import Fraction

from .lp import INFEASIBLE, OPTIMAL, UNBOUNDED, linprog


class IntegerProgramError(ValueError):
    pass


def min_sum_integer_point(K, max_nodes: int = 100000):
    """Integer vector ``c >= 0`` minimizing ``sum(c)`` with every inequality
    of ``K`` evaluating to at least 1 and every equation to 0.

    Depth-first branch-and-bound on the exact LP relaxation; since the
    objective is integral, a node is pruned once ``ceil(bound) >= best``.
    Raises :class:`IntegerProgramError` when the relaxation is infeasible or
    unbounded.
    """
    n = K.dim
    base_ge = [list(a) for a in K.inequalities]
    base_rhs = [1] * len(base_ge)
    eqs = [list(e) for e in K.equations]
    obj = [1] * n

    def solve(bounds):
        A = list(base_ge)
        b = list(base_rhs)
        for j, (lo, hi) in bounds.items():
            if lo is not None:
                A.append([int(k == j) for k in range(n)])
                b.append(lo)
            if hi is not None:
                A.append([-int(k == j) for k in range(n)])
                b.append(-hi)
        return linprog(obj, A_ge=A, b_ge=b, A_eq=eqs, b_eq=[0] * len(eqs), nonneg=True)

    root = solve({})
    if root.status == INFEASIBLE:
        raise IntegerProgramError("infeasible: no point with all inequalities >= 1")
    if root.status == UNBOUNDED:
        raise IntegerProgramError("unbounded relaxation")
    best, best_x = None, None
    stack = [({}, root)]
    nodes = 0
    while stack:
        bounds, res = stack.pop()
        nodes += 1
        if nodes > max_nodes:
            raise IntegerProgramError("node limit reached")
        if res.status != OPTIMAL:
            continue
        if best is not None and math.ceil(res.value) >= best:
            continue
        frac = [(j, v) for j, v in enumerate(res.x) if v.denominator != 1]
        if not frac:
            best, best_x = int(res.value), [int(v) for v in res.x]
            continue
        # branch on the most fractional coordinate
        j, v = max(frac, key=lambda t: min(t[1] - math.floor(t[1]), math.ceil(t[1]) - t[1]))
        lo, hi = bounds.get(j, (None, None))
        children = []
        down = dict(bounds)
        down[j] = (lo, math.floor(v))
        up = dict(bounds)
        up[j] = (math.ceil(v), hi)
        for child in (up, down):
            r = solve(child)
            if r.status == OPTIMAL and (best is None or math.ceil(r.value) < best):
                children.append((child, r))
        # explore the child with the smaller bound first
        children.sort(key=lambda cr: -cr[1].value)
        stack.extend(children)
    if best_x is None:
        raise IntegerProgramError("infeasible integer program")
    return best_x


def lp_bound(K) -> Fraction:
    """Optimal value of the LP relaxation of :func:`min_sum_integer_point`."""
    res = linprog([1] * K.dim, A_ge=[list(a) for a in K.inequalities],
                  b_ge=[1] * len(K.inequalities), A_eq=[list(e) for e in K.equations],
                  b_eq=[0] * len(K.equations), nonneg=True)
    if res.status != OPTIMAL:
        raise IntegerProgramError(res.status)
    return res.value
