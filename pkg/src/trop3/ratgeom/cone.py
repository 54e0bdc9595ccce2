"""Polyhedral cones given by integer inequalities and equations.

A :class:`RationalCone` is ``{x : a.x >= 0 for a in inequalities,
e.x = 0 for e in equations}``.  All decisions are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import dot, primitive, rank, rref
from .lp import INFEASIBLE, in_cone, linprog


@dataclass(frozen=True)
class RationalCone:
    inequalities: tuple[tuple[int, ...], ...]
    equations: tuple[tuple[int, ...], ...] = ()
    dim: int = 0
    irredundant: bool = field(default=False, compare=False)

    @classmethod
    def from_forms(cls, inequalities, equations=(), dim=None) -> "RationalCone":
        ineqs = [primitive(a, orient=False) for a in inequalities]
        eqs = [primitive(e) for e in equations]
        if dim is None:
            dim = len(ineqs[0]) if ineqs else len(eqs[0])
        ineqs = [a for a in ineqs if any(a)]
        eqs = [e for e in eqs if any(e)]
        return cls(tuple(ineqs), tuple(eqs), dim)

    def contains(self, x, strict: bool = False) -> bool:
        if any(dot(e, x) != 0 for e in self.equations):
            return False
        if strict:
            return all(dot(a, x) > 0 for a in self.inequalities)
        return all(dot(a, x) >= 0 for a in self.inequalities)

    def intersect(self, other: "RationalCone") -> "RationalCone":
        return RationalCone(self.inequalities + other.inequalities,
                            self.equations + other.equations, self.dim)


def reduce_equations(eqs, dim: int) -> tuple[tuple[int, ...], ...]:
    """An independent, primitive basis for the span of ``eqs``."""
    eqs = [e for e in eqs if any(e)]
    if not eqs:
        return ()
    R, _ = rref(eqs, dim)
    return tuple(primitive(r) for r in R)


def _full_dimensional(ineqs, eqs, dim) -> bool:
    if not ineqs:
        return True
    res = linprog([0] * dim, A_ge=ineqs, b_ge=[1] * len(ineqs),
                  A_eq=eqs, b_eq=[0] * len(eqs))
    return res.status != INFEASIBLE


def implicit_equalities(K: RationalCone) -> list[int]:
    """Indices of inequalities of ``K`` that hold with equality on all of K."""
    ineqs, eqs = list(K.inequalities), list(K.equations)
    if _full_dimensional(ineqs, eqs, K.dim):
        return []
    out = []
    for i, a in enumerate(ineqs):
        others = ineqs[:i] + ineqs[i + 1:]
        if in_cone([-v for v in a], others, eqs):
            out.append(i)
    return out


def canonical_equations(K: RationalCone) -> tuple[tuple[int, ...], ...]:
    """Basis of the linear span of the cone's affine hull constraints."""
    imp = implicit_equalities(K)
    return reduce_equations(list(K.equations) + [K.inequalities[i] for i in imp], K.dim)


def remove_redundant(K: RationalCone) -> RationalCone:
    """Minimal H-representation: implicit equalities become equations and
    every remaining inequality is irredundant (certified by an LP)."""
    imp = set(implicit_equalities(K))
    eqs = reduce_equations(list(K.equations) + [K.inequalities[i] for i in imp], K.dim)
    seen = set()
    cand = []
    for i, a in enumerate(K.inequalities):
        if i in imp or a in seen:
            continue
        seen.add(a)
        cand.append(a)
    keep = list(cand)
    idx = 0
    while idx < len(keep):
        a = keep[idx]
        others = keep[:idx] + keep[idx + 1:]
        if in_cone(a, others, eqs):
            keep.pop(idx)
        else:
            idx += 1
    return RationalCone(tuple(keep), eqs, K.dim, irredundant=True)


def cone_dim(K: RationalCone) -> int:
    return K.dim - rank(list(canonical_equations(K)))


def lineality_dim(K: RationalCone) -> int:
    return K.dim - rank(list(K.equations) + list(K.inequalities))


def interior_point(K: RationalCone, objective=None):
    """A point where every inequality is at least 1 (so strictly positive)
    and every equation holds, or None if no such point exists.

    ``objective`` optionally selects a point minimizing that linear function
    (it must be bounded below on the feasible region).
    """
    ineqs, eqs = list(K.inequalities), list(K.equations)
    c = list(objective) if objective is not None else [0] * K.dim
    res = linprog(c, A_ge=ineqs, b_ge=[1] * len(ineqs), A_eq=eqs, b_eq=[0] * len(eqs))
    if res.status == INFEASIBLE:
        return None
    if res.x is None:
        res = linprog([0] * K.dim, A_ge=ineqs, b_ge=[1] * len(ineqs),
                      A_eq=eqs, b_eq=[0] * len(eqs))
    return res.x


def fm_project(K: RationalCone, drop, reduce_steps: bool = True) -> RationalCone:
    """Project ``K`` onto the coordinates not listed in ``drop``.

    Equations involving a dropped variable are used for substitution first;
    the rest is Fourier-Motzkin elimination with LP-based redundancy removal
    after every step.  With ``reduce_steps`` false the final redundancy
    removal is skipped when no elimination step was needed.
    """
    drop = sorted(set(drop))
    if not drop:
        return K
    ineqs = [list(map(Fraction, a)) for a in K.inequalities]
    eqs = [list(map(Fraction, e)) for e in K.equations]
    remaining = list(drop)
    # substitution through equations
    changed = True
    while changed:
        changed = False
        for v in list(remaining):
            e = next((e for e in eqs if e[v] != 0), None)
            if e is None:
                continue
            eqs.remove(e)
            piv = e[v]
            ineqs = [[a[k] - a[v] / piv * e[k] for k in range(K.dim)] for a in ineqs]
            eqs = [[f[k] - f[v] / piv * e[k] for k in range(K.dim)] for f in eqs]
            remaining.remove(v)
            changed = True
    work = RationalCone.from_forms(ineqs, eqs, K.dim) if (ineqs or eqs) else RationalCone((), (), K.dim)
    for v in remaining:
        pos = [a for a in work.inequalities if a[v] > 0]
        neg = [a for a in work.inequalities if a[v] < 0]
        new = [a for a in work.inequalities if a[v] == 0]
        for p in pos:
            for q in neg:
                comb = [p[k] * (-q[v]) + q[k] * p[v] for k in range(K.dim)]
                new.append(comb)
        work = RationalCone.from_forms(new, work.equations, K.dim) if (new or work.equations) \
            else RationalCone((), (), K.dim)
        work = remove_redundant(work)
    keep = [k for k in range(K.dim) if k not in set(drop)]
    ineqs = [[a[k] for k in keep] for a in work.inequalities]
    eqs = [[e[k] for k in keep] for e in work.equations]
    out = RationalCone.from_forms(ineqs, eqs, len(keep)) if (ineqs or eqs) \
        else RationalCone((), (), len(keep))
    if not reduce_steps and not remaining:
        return RationalCone(out.inequalities, reduce_equations(out.equations, len(keep)), len(keep))
    return remove_redundant(out)


def random_interior_points(K: RationalCone, n: int, rng, anchors: int = 4):
    """``n`` points with every inequality strictly positive.

    A few anchor points minimize random positive combinations of the
    inequalities (each kept at least 1); samples are random convex
    combinations of anchors plus a random element of the lineality space.
    """
    from .linalg import nullspace
    ineqs = list(K.inequalities)
    base = []
    for _ in range(anchors):
        w = [rng.randint(1, 5) for _ in ineqs]
        obj = [sum(wi * a[k] for wi, a in zip(w, ineqs)) for k in range(K.dim)]
        x = interior_point(K, objective=obj)
        if x is None:
            return []
        base.append(x)
    lin = nullspace(list(K.inequalities) + list(K.equations), K.dim)
    out = []
    for _ in range(n):
        lam = [Fraction(rng.randint(1, 9)) for _ in base]
        s = sum(lam)
        x = [sum(l * b[k] for l, b in zip(lam, base)) / s for k in range(K.dim)]
        for v in lin:
            c = rng.randint(-5, 5)
            x = [xi + c * vi for xi, vi in zip(x, v)]
        out.append(x)
    return out
