"""The ten motifs for lines on smooth tropical cubics and their occurrences.

A motif is a labelled simplicial complex (vertices ``A, B, ...``) with four
exit slots ``i, j, k, l``.  An occurrence in a triangulation ``T`` maps the
labels to lattice points and the slots bijectively to the facets so that
every cell lands on a face of ``T`` of the same dimension and every side
condition holds.

Besides the combinatorial data each definition carries a *line template*:
which cell of ``T`` is dual to the surface cell holding each line vertex,
and where the dual vertices of the remaining tetrahedra sit on the line.
Vertex ``Q1`` carries the rays of slots ``i, j`` and ``Q2`` those of
``k, l``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .lattice import EXPONENTS, N_POINTS, Permutation
from .triangulation import Triangulation

SLOTS = "ijkl"


@dataclass(frozen=True, order=True)
class Constraint:
    """``plane``: every vertex of ``verts`` has sum of x over the facets of
    ``slots`` equal to ``value``.  ``tetra_exit``: the image of ``verts`` has
    an edge in the facet of the single slot.  ``neq``: the two labels map to
    different points."""

    kind: str
    verts: tuple[str, ...]
    slots: tuple[int, ...] = ()
    value: int = 0

    def relabel(self, vmap, smap) -> "Constraint":
        return Constraint(self.kind, tuple(sorted(vmap[v] for v in self.verts)),
                          tuple(sorted(smap[s] for s in self.slots)), self.value)

    def holds(self, phi, exits) -> bool:
        if self.kind == "plane":
            facets = [exits[s] for s in self.slots]
            return all(sum(EXPONENTS[phi[v]][f] for f in facets) == self.value for v in self.verts)
        if self.kind == "tetra_exit":
            f = exits[self.slots[0]]
            return sum(1 for v in set(phi[v] for v in self.verts) if EXPONENTS[v][f] == 0) >= 2
        if self.kind == "neq":
            a, b = self.verts
            return phi[a] != phi[b]
        raise ValueError(self.kind)


def _slots(s: str) -> tuple[int, ...]:
    return tuple(sorted(SLOTS.index(c) for c in s))


def plane(edge: str, slots: str, value: int) -> Constraint:
    return Constraint("plane", tuple(sorted(edge)), _slots(slots), value)


def facet(edge: str, slot: str) -> Constraint:
    return plane(edge, slot, 0)


def tetra_exit(tetra: str, slot: str) -> Constraint:
    return Constraint("tetra_exit", tuple(sorted(tetra)), _slots(slot))


def neq(a: str, b: str) -> Constraint:
    return Constraint("neq", tuple(sorted(a + b)))


@dataclass(frozen=True)
class Placement:
    """Dual vertex of ``tetra`` lying on the line: on the ray of ``slot``
    (from Q1 for slots i, j and from Q2 for k, l) or on the bounded edge."""

    tetra: str
    where: str            # "edge" or a slot letter


@dataclass(frozen=True)
class MotifDefinition:
    name: str
    labels: str
    cells: tuple[str, ...]
    constraints: frozenset
    family: bool
    expected_order: int
    generators: tuple[str, ...]
    q1_cell: str
    q2_cell: str
    placements: tuple[Placement, ...] = ()
    symmetries: tuple = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return len(self.labels)


def _def(name, labels, cells, constraints, order, generators, q1, q2, placements=(), family=False):
    return dict(name=name, labels=labels, cells=tuple(cells), constraints=frozenset(constraints),
                family=family, expected_order=order, generators=tuple(generators),
                q1_cell=q1, q2_cell=q2, placements=tuple(Placement(*p) for p in placements))


_RAW = [
    _def("3A", "ABCDEF", ["ABD", "ACD", "CDEF"],
         [facet("AB", "i"), facet("BD", "j"), facet("AC", "k"), facet("EF", "l"),
          plane("AD", "ij", 1), plane("CD", "l", 1), neq("A", "E"), neq("A", "F"), neq("B", "C")],
         2, ["(E F)"], "ABD", "ACD", [("CDEF", "l")]),
    _def("3B", "ABCDEF", ["ABC", "BCDE", "DEF"],
         [facet("AB", "i"), facet("AC", "j"), facet("DF", "k"), facet("EF", "l"),
          plane("BC", "ij", 1), plane("DE", "kl", 1),
          neq("A", "D"), neq("A", "E"), neq("F", "B"), neq("F", "C"), neq("A", "F")],
         8, ["(B C)(i j)", "(A F)(B D)(C E)(i k)(j l)"], "ABC", "DEF", [("BCDE", "edge")]),
    _def("3C", "ABCDEFG", ["ABC", "BCDE", "DEFG"],
         [facet("AB", "i"), facet("AC", "j"), facet("DE", "k"), facet("FG", "l"),
          plane("BC", "ij", 1), plane("DE", "l", 1), neq("A", "D"), neq("A", "E")],
         8, ["(B C)(i j)", "(D E)", "(F G)"], "ABC", "DE", [("BCDE", "edge"), ("DEFG", "l")]),
    _def("3D", "ABCDEFG", ["ABCD", "CDE", "DEFG"],
         [facet("CE", "i"), facet("AB", "j"), facet("DE", "k"), facet("FG", "l"),
          plane("CD", "j", 1), plane("DE", "l", 1), neq("E", "A"), neq("E", "B")],
         4, ["(A B)", "(F G)"], "CDE", "DE", [("ABCD", "j"), ("DEFG", "l")]),
    _def("3E", "ABCDEFG", ["ABC", "BCDE", "BCFG"],
         [facet("AB", "i"), facet("AC", "j"), facet("DE", "k"), facet("FG", "l"),
          plane("BC", "k", 1), plane("BC", "l", 1)],
         16, ["(B C)(i j)", "(D E)", "(B C)(D F)(E G)(i j)(k l)"], "ABC", "BC",
         [("BCDE", "k"), ("BCFG", "l")]),
    _def("3F", "ABCDEFGH", ["ABCD", "CDEF", "EFGH"],
         [facet("CD", "i"), facet("AB", "j"), facet("EF", "k"), facet("GH", "l"),
          plane("CD", "j", 1), plane("EF", "l", 1)],
         32, ["(A B)", "(C D)", "(E F)", "(G H)", "(A H)(B G)(C F)(D E)(i k)(j l)"], "CD", "EF",
         [("ABCD", "j"), ("CDEF", "edge"), ("EFGH", "l")]),
    _def("3G", "ABCDEF", ["ABCD", "CDEF"],
         [facet("CD", "k"), facet("EF", "l"), tetra_exit("ABCD", "i"), tetra_exit("ABCD", "j"),
          plane("CD", "l", 1)],
         8, ["(A B)", "(C D)", "(E F)"], "ABCD", "CD", [("CDEF", "l")]),
    _def("3H", "ABCDE", ["ABCD", "CDE"],
         [facet("CE", "k"), facet("DE", "l"), tetra_exit("ABCD", "i"), tetra_exit("ABCD", "j"),
          plane("CD", "kl", 1), neq("E", "A"), neq("E", "B")],
         4, ["(A B)", "(C D)(k l)"], "ABCD", "CDE"),
    _def("3I", "ABCD", ["ABCD"],
         [facet("CD", "k"), facet("CD", "l"), tetra_exit("ABCD", "i"), tetra_exit("ABCD", "j")],
         4, ["(A B)", "(C D)"], "ABCD", "CD", family=True),
    _def("3J", "ABCDE", ["ABCD", "ABCE", "ADE"],
         [facet("BC", "i"), facet("BC", "j"), facet("DE", "k"), facet("DE", "l"),
          plane("AD", "j", 1), plane("AE", "i", 1)],
         4, ["(B C)", "(D E)(i j)"], "ADE", "DE", [("ABCD", "j"), ("ABCE", "i")], family=True),
]


def _cell_key(cells, vmap):
    return frozenset(frozenset(vmap[v] for v in c) for c in cells)


def symmetry_group(d: dict) -> tuple:
    """All (vertex map, slot map) pairs preserving cells and constraints."""
    labels = d["labels"]
    cells = _cell_key(d["cells"], {v: v for v in labels})
    cons = d["constraints"]
    out = []
    for perm in permutations(labels):
        vmap = dict(zip(labels, perm))
        if _cell_key(d["cells"], vmap) != cells:
            continue
        for sperm in permutations(range(4)):
            smap = dict(enumerate(sperm))
            if frozenset(c.relabel(vmap, smap) for c in cons) == cons:
                out.append((vmap, smap))
    return tuple(out)


class CatalogError(RuntimeError):
    pass


_CATALOG = None


def catalog() -> list[MotifDefinition]:
    """The ten motif definitions; symmetry groups are computed and checked
    against the expected orders of their action on the vertex labels."""
    global _CATALOG
    if _CATALOG is None:
        out = []
        for d in _RAW:
            syms = symmetry_group(d)
            vertex_part = {tuple(vm[v] for v in d["labels"]) for vm, _ in syms}
            if len(vertex_part) != d["expected_order"]:
                raise CatalogError(f"{d['name']}: symmetry order {len(vertex_part)}, "
                                   f"expected {d['expected_order']}")
            out.append(MotifDefinition(**d, symmetries=syms))
        _CATALOG = out
    return _CATALOG


def motif(name: str) -> MotifDefinition:
    for m in catalog():
        if m.name == name:
            return m
    raise KeyError(f"unknown motif {name}")


# ---------------------------------------------------------------------------
# occurrences


@dataclass(frozen=True, order=True)
class Occurrence:
    motif: str
    points: tuple[int, ...]
    exits: tuple[int, ...]

    def assignment(self, m: MotifDefinition | None = None) -> dict[str, int]:
        m = m or motif(self.motif)
        return dict(zip(m.labels, self.points))

    def to_json(self):
        return {"motif": self.motif, "points": list(self.points), "exits": list(self.exits)}

    def image_cells(self) -> list[tuple[int, ...]]:
        m = motif(self.motif)
        phi = self.assignment(m)
        return [tuple(sorted(phi[v] for v in c)) for c in m.cells]


def canonical(m: MotifDefinition, points, exits) -> Occurrence:
    """Lex-least (points, exits) among the images under the symmetry group."""
    phi = dict(zip(m.labels, points))
    best = None
    for vmap, smap in m.symmetries:
        # relabelled occurrence: label vmap[v] carries phi[v], slot smap[s] carries exits[s]
        new_phi = {vmap[v]: phi[v] for v in m.labels}
        new_ex = [None] * 4
        for s in range(4):
            new_ex[smap[s]] = exits[s]
        cand = (tuple(new_phi[v] for v in m.labels), tuple(new_ex))
        if best is None or cand < best:
            best = cand
    return Occurrence(m.name, *best)


class _Faces:
    def __init__(self, T: Triangulation):
        self.faces = set()
        for f in T.facets:
            for k in range(1, 5):
                for c in combinations(f, k):
                    self.faces.add(frozenset(c))
        self.by_size = {k: sorted(tuple(sorted(c)) for c in self.faces if len(c) == k)
                        for k in range(1, 5)}

    def is_face(self, pts) -> bool:
        return frozenset(pts) in self.faces


def _cells_ok(m, phi, faces, labels_done) -> bool:
    """Assigned parts of cells are faces (injectively); fully assigned cells
    have pairwise distinct images, since their dual cells are distinct."""
    full = [frozenset(phi[v] for v in c) for c in m.cells if all(v in labels_done for v in c)]
    if len(set(full)) != len(full):
        return False
    for c in m.cells:
        assigned = [phi[v] for v in c if v in labels_done]
        if not assigned:
            continue
        if len(set(assigned)) != len(assigned) or not faces.is_face(assigned):
            return False
    return True


def _constraints_by_labels(m):
    return [(set(c.verts), c) for c in m.constraints]


def occurrences_naive(T: Triangulation, name: str) -> list[Occurrence]:
    """Maps of the labels (in order) to all 20 points, pruned only by the
    requirement that every partially assigned cell be a face of T; each
    complete simplicial map is tested against all 24 exit bijections."""
    m = motif(name)
    faces = _Faces(T)
    labels = m.labels
    found = set()
    phi = {}

    def rec(idx):
        if idx == len(labels):
            for exits in permutations(range(4)):
                if all(c.holds(phi, exits) for c in m.constraints):
                    found.add(canonical(m, tuple(phi[v] for v in labels), exits))
            return
        v = labels[idx]
        done = set(labels[:idx + 1])
        for p in range(N_POINTS):
            phi[v] = p
            if _cells_ok(m, phi, faces, done):
                rec(idx + 1)
        del phi[v]

    rec(0)
    return sorted(found)


def _search_order(m: MotifDefinition) -> list[str]:
    """Seed with the largest cell, then follow cells that share labels."""
    cells = sorted(m.cells, key=lambda c: -len(c))
    order = list(cells[0])
    while len(order) < m.n:
        best = max((c for c in m.cells if set(c) - set(order)),
                   key=lambda c: (len(set(c) & set(order)), len(c)))
        order += [v for v in best if v not in order]
    return order


def occurrences_of(T: Triangulation, name: str, faces: _Faces | None = None) -> list[Occurrence]:
    """Feature-guided search for one motif.

    For each exit bijection, the seed cell (the motif's sided, split or
    centred tetrahedron, or its dangling triangle) is matched against faces
    of T; remaining labels are added through cells sharing assigned labels,
    and every constraint is checked as soon as its labels are assigned.
    """
    m = motif(name)
    faces = faces or _Faces(T)
    order = _search_order(m)
    cons = _constraints_by_labels(m)
    # constraints that become checkable after each step of the order
    ready = []
    seen = set()
    for idx in range(len(order)):
        have = set(order[:idx + 1])
        ready.append([c for vs, c in cons if vs <= have and c not in seen])
        seen.update(ready[-1])
    cells_at = []
    for idx in range(len(order)):
        have = set(order[:idx + 1])
        cells_at.append([c for c in m.cells if order[idx] in c])
    found = set()

    def candidates(idx, phi):
        v = order[idx]
        # points forming a face with the assigned part of the most constrained cell
        best = max(cells_at[idx], key=lambda c: sum(1 for w in c if w in phi))
        assigned = [phi[w] for w in best if w in phi]
        if not assigned:
            return range(N_POINTS)
        out = set()
        for f in faces.by_size[len(assigned) + 1]:
            if set(assigned) <= set(f):
                out.update(set(f) - set(assigned))
        return sorted(out)

    for exits in permutations(range(4)):
        phi = {}

        def rec(idx):
            if idx == len(order):
                found.add(canonical(m, tuple(phi[v] for v in m.labels), exits))
                return
            v = order[idx]
            done = set(order[:idx + 1])
            for p in candidates(idx, phi):
                phi[v] = p
                if all(c.holds(phi, exits) for c in ready[idx]) and _cells_ok(m, phi, faces, done):
                    rec(idx + 1)
            phi.pop(v, None)

        rec(0)
    return sorted(found)


def occurrences(T: Triangulation) -> list[Occurrence]:
    """All occurrences of all ten motifs, one per symmetry class, sorted by
    motif name and then lexicographically."""
    faces = _Faces(T)
    out = []
    for m in catalog():
        out.extend(occurrences_of(T, m.name, faces))
    return out


def counts(occs) -> dict[str, int]:
    c = Counter(o.motif for o in occs)
    return {m.name: c.get(m.name, 0) for m in catalog()}


def permute_occurrence(p: Permutation, occ: Occurrence) -> Occurrence:
    m = motif(occ.motif)
    return canonical(m, tuple(p.act_on_point(v) for v in occ.points), tuple(p[f] for f in occ.exits))


def is_occurrence(T: Triangulation, occ: Occurrence) -> bool:
    m = motif(occ.motif)
    if sorted(occ.exits) != [0, 1, 2, 3] or len(occ.points) != m.n:
        return False
    phi = occ.assignment(m)
    return _cells_ok(m, phi, _Faces(T), set(m.labels)) and \
        all(c.holds(phi, occ.exits) for c in m.constraints)


# ---------------------------------------------------------------------------
# features


@dataclass
class FeatureIndex:
    sided: list            # (tetra, facet f, edge on F_f, opposite edge on {x_f = 1})
    split: list            # (tetra, (edge, facet), (opposite edge, other facet))
    centered: list         # (tetra, (edge, facet pair), (opposite edge, complementary pair))
    dangling: list         # (triangle, (edge, facet), (edge, other facet))

    def labeled_sided_count(self) -> int:
        """Labelled choices (C, D, E, F) of a sided tetrahedron with EF on the
        facet and CD on the parallel plane x = 1."""
        return 4 * len(self.sided)


def _on(pts, f, value=0, facets=None):
    fs = facets if facets is not None else (f,)
    return all(sum(EXPONENTS[p][g] for g in fs) == value for p in pts)


def features(T: Triangulation) -> FeatureIndex:
    sided, split, centered = [], [], []
    for t in T.facets:
        pairs = []
        for e in combinations(t, 2):
            opp = tuple(v for v in t if v not in e)
            if e < opp:
                pairs.append((e, opp))
        for e1, e2 in pairs:
            for a, b in ((e1, e2), (e2, e1)):
                for f in range(4):
                    if _on(a, f) and _on(b, f, 1):
                        sided.append((t, f, a, b))
            for f in range(4):
                for g in range(4):
                    if f != g and _on(e1, f) and _on(e2, g) and (e1, f) < (e2, g):
                        split.append((t, (e1, f), (e2, g)))
            for fs in ((0, 1), (0, 2), (0, 3)):
                rest = tuple(x for x in range(4) if x not in fs)
                for p1, p2 in ((fs, rest), (rest, fs)):
                    if _on(e1, None, 1, p1) and _on(e2, None, 1, p2):
                        centered.append((t, (e1, p1), (e2, p2)))
    tris = sorted({c for t in T.facets for c in combinations(t, 3)})
    dangling = []
    for tri in tris:
        edges = list(combinations(tri, 2))
        for x, y in combinations(edges, 2):
            for f in range(4):
                for g in range(4):
                    if f != g and _on(x, f) and _on(y, g):
                        dangling.append((tri, (x, f), (y, g)))
    return FeatureIndex(sided, split, centered, dangling)
