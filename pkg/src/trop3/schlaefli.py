"""Visibility cones, Schlaefli walls and the Schlaefli fan of a triangulation.

The visibility cone of an occurrence is computed in an extended space: the
20 coefficients, the coordinates of the line vertex ``Q1`` (with x_0 = 0),
the bounded-edge length ``t`` and one position parameter for each tetrahedron
whose dual vertex lies on the line.  Prescribing the surface cell at both line
vertices and at those dual vertices gives linear equations and inequalities;
projecting the auxiliary variables away and intersecting with the secondary
cone yields the visibility cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .incidence import line_on_surface
from .lattice import EXPONENTS, N_POINTS, OMEGA
from .lines import line_from_vertices, pluecker_from_vertices
from .motifs import Occurrence, motif, occurrences
from .ratgeom.cone import RationalCone, fm_project, interior_point, remove_redundant
from .ratgeom.linalg import dot, primitive
from .ratgeom.lp import INFEASIBLE, OPTIMAL, linprog
from .surface import secondary_cone
from .triangulation import Triangulation

GLOBAL = "global"
PARTIAL = "partial"
HARDLY = "hardly"


class VisibilityError(ValueError):
    pass


def form_string(form) -> str:
    """Render an integer form as e.g. ``-c2+c9+c11-c15+c17-c18``."""
    parts = []
    for i, a in enumerate(form):
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        parts.append(f"{sign}{'' if mag == 1 else mag}c{i}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else (s or "0")


@dataclass
class VisibilityCone:
    occurrence: Occurrence
    cone: RationalCone
    classification: str
    walls: list[tuple[int, ...]] = field(default_factory=list)
    equations: list[tuple[int, ...]] = field(default_factory=list)

    def contains(self, C) -> bool:
        return self.cone.contains(C)

    def to_json(self):
        return {
            **self.occurrence.to_json(),
            "classification": self.classification,
            "walls": [{"coefficients": list(w), "form": form_string(w)} for w in self.walls],
            "equations": [{"coefficients": list(e), "form": form_string(e)} for e in self.equations],
        }


# ---------------------------------------------------------------------------
# constraint generation


class _Space:
    """Variables: C_0..C_19, y1, y2, y3 (Q1), t, then one s per placement."""

    def __init__(self, n_place: int):
        self.n = N_POINTS + 4 + n_place

    def unit(self, k):
        v = [Fraction(0)] * self.n
        v[k] = Fraction(1)
        return v

    def zero(self):
        return [Fraction(0)] * self.n

    @property
    def t(self):
        return N_POINTS + 3

    def s(self, m):
        return N_POINTS + 4 + m


def _add(u, v, c=1):
    return [a + c * b for a, b in zip(u, v)]


def _point_q1(sp):
    return [sp.zero()] + [sp.unit(N_POINTS + f) for f in range(3)]


def _shift(sp, X, var, direction):
    """X + var * direction (direction an integer 4-vector)."""
    return [_add(X[f], sp.unit(var), direction[f]) for f in range(4)]


def _form_at(sp, p, X):
    row = sp.unit(p)
    for f in range(4):
        if EXPONENTS[p][f]:
            row = _add(row, X[f], EXPONENTS[p][f])
    return row


def _cell_rows(sp, X, cell, others: bool):
    """Equalities among the forms of ``cell`` at X and, if ``others``, the
    inequalities form_r - form_cell >= 0 for points outside the cell."""
    cell = sorted(set(cell))
    p0 = cell[0]
    f0 = _form_at(sp, p0, X)
    eqs = [_add(_form_at(sp, p, X), f0, -1) for p in cell[1:]]
    ineqs = []
    if others:
        for r in range(N_POINTS):
            if r not in cell:
                ineqs.append(_add(_form_at(sp, r, X), f0, -1))
    return eqs, ineqs


def occurrence_system(occ: Occurrence):
    """Inequalities and equations in the extended space for one occurrence."""
    m = motif(occ.motif)
    phi = occ.assignment(m)
    exits = occ.exits
    sp = _Space(len(m.placements))
    Q1 = _point_q1(sp)
    k, l = exits[2], exits[3]
    edge_dir = [OMEGA[k][f] + OMEGA[l][f] for f in range(4)]
    Q2 = _shift(sp, Q1, sp.t, edge_dir)
    eqs, ineqs = [], []
    for X, cell in ((Q1, m.q1_cell), (Q2, m.q2_cell)):
        e, i = _cell_rows(sp, X, [phi[v] for v in cell], True)
        eqs += e
        ineqs += i
    ineqs.append(sp.unit(sp.t))
    for idx, pl in enumerate(m.placements):
        var = sp.s(idx)
        if pl.where == "edge":
            X = _shift(sp, Q1, var, edge_dir)
            ineqs.append(_add(sp.unit(sp.t), sp.unit(var), -1))
        else:
            slot = "ijkl".index(pl.where)
            base = Q1 if slot < 2 else Q2
            X = _shift(sp, base, var, OMEGA[exits[slot]])
        ineqs.append(sp.unit(var))
        e, _ = _cell_rows(sp, X, [phi[v] for v in pl.tetra], False)
        eqs += e
    return sp, ineqs, eqs


def _same_direction(a, b) -> bool:
    return primitive(a, orient=False) == primitive(b, orient=False)


def visibility_cone(T: Triangulation, occ: Occurrence, seccone: RationalCone | None = None
                    ) -> VisibilityCone:
    """Visibility cone of an occurrence, classified as global, partial or hardly."""
    if seccone is None:
        seccone = remove_redundant(secondary_cone(T))
    sp, ineqs, eqs = occurrence_system(occ)
    big = RationalCone.from_forms(ineqs, eqs, sp.n)
    proj = fm_project(big, range(N_POINTS, sp.n), reduce_steps=False)
    K = RationalCone(proj.inequalities + seccone.inequalities,
                     proj.equations + seccone.equations, N_POINTS)
    R = remove_redundant(K)
    if R.equations and interior_point(RationalCone(R.inequalities, R.equations, N_POINTS)) is None:
        raise VisibilityError(f"visibility cone of {occ} is empty")
    walls = [a for a in R.inequalities
             if not any(_same_direction(a, b) for b in seccone.inequalities)]
    if R.equations:
        cls = HARDLY
    elif walls:
        cls = PARTIAL
    else:
        cls = GLOBAL
    return VisibilityCone(occ, R, cls, walls, list(R.equations))


def classify_all(T: Triangulation, occs=None):
    """Visibility cones of all occurrences, split into (global, partial, hardly)."""
    seccone = remove_redundant(secondary_cone(T))
    occs = occurrences(T) if occs is None else occs
    cones = [visibility_cone(T, o, seccone) for o in occs]
    return ([v for v in cones if v.classification == GLOBAL],
            [v for v in cones if v.classification == PARTIAL],
            [v for v in cones if v.classification == HARDLY])


def wall_arrangement(partial) -> list[tuple[int, ...]]:
    """Distinct walls (up to sign and scaling) of the partially visible cones."""
    out = []
    for v in partial:
        for w in v.walls:
            w = primitive(w)
            if w not in out:
                out.append(w)
    return sorted(out, reverse=True)


# ---------------------------------------------------------------------------
# realizing lines (oracle support)


def realize_line(occ: Occurrence, C):
    """A tropical line with the combinatorics of ``occ`` on the surface of C,
    found by solving the extended system at fixed coefficients, or None.

    For families the edge length is chosen in the middle of its feasible
    range (or one beyond its lower end if unbounded).
    """
    sp, ineqs, eqs = occurrence_system(occ)
    naux = sp.n - N_POINTS
    C = [Fraction(c) for c in C]

    def fix(rows):
        A, b = [], []
        for r in rows:
            A.append(r[N_POINTS:])
            b.append(-dot(r[:N_POINTS], C))
        return A, b

    A_ge, b_ge = fix(ineqs)
    A_eq, b_eq = fix(eqs)
    tvec = [0] * naux
    tvec[3] = 1
    lo = linprog(tvec, A_ge, b_ge, A_eq, b_eq)
    if lo.status == INFEASIBLE:
        return None
    hi = linprog([-v for v in tvec], A_ge, b_ge, A_eq, b_eq)
    if hi.status == OPTIMAL:
        tval = (lo.value - hi.value) / 2
    else:
        tval = lo.value + 1
    res = linprog([0] * naux, A_ge, b_ge, A_eq + [tvec], b_eq + [tval])
    if res.status == INFEASIBLE:
        return None
    q1 = (Fraction(0),) + tuple(res.x[:3])
    exits = occ.exits
    p1, p2 = tuple(sorted(exits[:2])), tuple(sorted(exits[2:]))
    line = line_from_vertices(p1, p2, q1, tval)
    if 0 not in p1:
        line = line_from_vertices(p2, p1, line.q2, tval)
    return line


def oracle_check(occ: Occurrence, C) -> bool:
    """Does the line-containment test confirm a realized line of ``occ`` on the surface of C?"""
    line = realize_line(occ, C)
    if line is None or line.length == 0:
        return False
    P = pluecker_from_vertices(line.q1, line.q2)
    return line_on_surface(P, C).contained


# ---------------------------------------------------------------------------
# Schlaefli fan


@dataclass
class SchlaefliCell:
    signs: tuple[int, ...]
    point: tuple[Fraction, ...]
    visible: list[int]


def _cell_point(seccone, walls, signs):
    forms = list(seccone.inequalities) + [tuple(s * a for a in w) for s, w in zip(signs, walls)]
    return interior_point(RationalCone(tuple(forms), seccone.equations, N_POINTS))


def schlaefli_fan(T: Triangulation, cones=None) -> tuple[list[tuple[int, ...]], list[SchlaefliCell]]:
    """Full-dimensional cells of the secondary cone cut by the wall arrangement.

    Sign vectors are enumerated depth first; a prefix is extended only while
    the open region it describes is nonempty.  ``visible`` lists indices into
    the list of cones (all occurrences) whose closed cone contains the cell's
    sample point.
    """
    seccone = remove_redundant(secondary_cone(T))
    if cones is None:
        g, p, h = classify_all(T)
        cones = g + p + h
    walls = wall_arrangement([c for c in cones if c.classification == PARTIAL])
    cells = []
    stack = [()]
    while stack:
        prefix = stack.pop()
        if len(prefix) == len(walls):
            x = _cell_point(seccone, walls, prefix)
            vis = [n for n, c in enumerate(cones) if c.contains(x)]
            cells.append(SchlaefliCell(prefix, tuple(x), vis))
            continue
        for s in (-1, 1):
            nxt = prefix + (s,)
            if _cell_point(seccone, walls[:len(nxt)], nxt) is not None:
                stack.append(nxt)
    cells.sort(key=lambda c: c.signs)
    return walls, cells


def visible_motifs(T: Triangulation, C, cones=None, seccone=None) -> list[int]:
    """Indices (into ``cones``) of occurrences visible on the surface of C."""
    seccone = seccone or secondary_cone(T)
    if not seccone.contains(C, strict=True):
        raise VisibilityError("C is not in the open secondary cone of T")
    if cones is None:
        g, p, h = classify_all(T)
        cones = g + p + h
    return [n for n, c in enumerate(cones) if c.contains(C)]


def is_generic(T: Triangulation, C, cones=None, seccone=None):
    """(generic?, walls vanishing at C, hardly visible occurrences containing C)."""
    seccone = seccone or secondary_cone(T)
    if not seccone.contains(C, strict=True):
        raise VisibilityError("C is not in the open secondary cone of T")
    if cones is None:
        g, p, h = classify_all(T)
        cones = g + p + h
    walls = wall_arrangement([c for c in cones if c.classification == PARTIAL])
    on_walls = [w for w in walls if dot(w, C) == 0]
    hardly = [n for n, c in enumerate(cones) if c.classification == HARDLY and c.contains(C)]
    return (not on_walls and not hardly), on_walls, hardly
