"""Unimodular triangulations of 3*Delta_3 as combinatorial objects."""

from __future__ import annotations

import hashlib
import json
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .lattice import EXPONENTS, N_POINTS, S4, Permutation
from .ratgeom.linalg import det_bareiss, solve_linear
from .ratgeom.lp import INFEASIBLE, linprog


class TriangulationError(ValueError):
    """Raised when a facet list does not describe a unimodular triangulation."""


@dataclass(frozen=True)
class Triangulation:
    facets: tuple[tuple[int, int, int, int], ...]

    def __iter__(self):
        return iter(self.facets)

    def __len__(self):
        return len(self.facets)

    def to_text(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, f)) + "}" for f in self.facets) + "}"


def _normalize(facets) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(int(v) for v in f)) for f in facets))


def parse_facets(text: str) -> list[tuple[int, ...]]:
    """Parse ``{{0,1,4,10},{...}}`` or a JSON array of arrays."""
    s = text.strip()
    if not s:
        raise ValueError("empty facet list")
    if s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed JSON facet list: {exc}") from None
        if not isinstance(data, list) or not all(isinstance(f, list) for f in data):
            raise ValueError("JSON facet list must be an array of arrays")
        try:
            return [tuple(int(v) for v in f) for f in data]
        except (TypeError, ValueError):
            raise ValueError("facet entries must be integers") from None
    if not re.fullmatch(r"\{\s*(\{[\s\d,]*\}\s*,?\s*)*\}", s):
        raise ValueError("malformed brace expression")
    out = []
    for inner in re.findall(r"\{([^{}]*)\}", s):
        parts = [p.strip() for p in inner.split(",")]
        if any(not p.isdigit() for p in parts):
            raise ValueError(f"malformed facet {{{inner}}}")
        out.append(tuple(int(p) for p in parts))
    return out


def _volume(points, coords) -> int:
    base = coords[points[0]]
    rows = [[c - b for c, b in zip(coords[p], base)] for p in points[1:]]
    return det_bareiss(rows)


_COORDS3 = [e[1:] for e in EXPONENTS]


def _opposite_sides(tri, a, b) -> bool:
    """Are points a and b strictly on opposite sides of the plane through tri?"""
    sa = _volume(list(tri) + [a], _COORDS3)
    sb = _volume(list(tri) + [b], _COORDS3)
    return sa * sb < 0


def _on_common_facet(points) -> bool:
    return any(all(EXPONENTS[p][f] == 0 for p in points) for f in range(4))


def validate(facets) -> Triangulation:
    """Check that ``facets`` is a unimodular triangulation of 3*Delta_3.

    Every triangle of a tetrahedron must either lie on the boundary and
    belong to exactly one tetrahedron, or be interior and belong to exactly
    two tetrahedra lying on opposite sides of it.  With total normalized
    volume 27 this forces a proper triangulation.
    """
    facets = list(facets)
    if len(facets) != 27:
        raise TriangulationError(f"expected 27 facets, got {len(facets)}")
    norm = []
    for f in facets:
        f = tuple(sorted(int(v) for v in f))
        if len(f) != 4 or len(set(f)) != 4:
            raise TriangulationError(f"facet {f} does not have four distinct vertices")
        if any(not 0 <= v < N_POINTS for v in f):
            raise TriangulationError(f"facet {f} has a label outside 0..19")
        vol = abs(_volume(f, _COORDS3))
        if vol == 0:
            raise TriangulationError(f"degenerate facet {f}")
        if vol != 1:
            raise TriangulationError(f"non-unimodular facet {f} (volume {vol})")
        norm.append(f)
    if len(set(norm)) != 27:
        raise TriangulationError("repeated facet")
    tris = defaultdict(list)
    for f in norm:
        for t in combinations(f, 3):
            tris[t].append([v for v in f if v not in t][0])
    for t, apexes in tris.items():
        if _on_common_facet(t):
            if len(apexes) != 1:
                raise TriangulationError(f"boundary triangle {t} lies in {len(apexes)} facets")
        else:
            if len(apexes) != 2:
                raise TriangulationError(f"interior triangle {t} lies in {len(apexes)} facets "
                                         "(overlap or gap)")
            if not _opposite_sides(t, *apexes):
                raise TriangulationError(f"facets overlap across triangle {t}")
    return Triangulation(_normalize(norm))


def _faces(T, k):
    out = set()
    for f in T.facets:
        out.update(combinations(f, k))
    return out


def f_vector(T: Triangulation) -> tuple[int, int, int, int]:
    return tuple(len(_faces(T, k)) for k in (1, 2, 3, 4))


def boundary_triangles(T: Triangulation) -> list[tuple[int, int, int]]:
    return sorted(t for t in _faces(T, 3) if _on_common_facet(t))


def boundary_f_vector(T: Triangulation) -> tuple[int, int, int]:
    tris = boundary_triangles(T)
    edges = {e for t in tris for e in combinations(t, 2)}
    verts = {v for t in tris for v in t}
    return len(verts), len(edges), len(tris)


def interior_triangles(T: Triangulation) -> dict[tuple[int, int, int], tuple[int, int]]:
    """Interior triangle -> its two apexes (in increasing order)."""
    apex = defaultdict(list)
    for f in T.facets:
        for t in combinations(f, 3):
            apex[t].append([v for v in f if v not in t][0])
    return {t: tuple(sorted(a)) for t, a in apex.items() if not _on_common_facet(t)}


def gkz(T: Triangulation) -> tuple[int, ...]:
    g = [0] * N_POINTS
    for f in T.facets:
        for v in f:
            g[v] += 1
    return tuple(g)


def link(T: Triangulation, edge) -> list[tuple[int, int]]:
    a, b = edge
    return sorted(tuple(v for v in f if v not in (a, b))
                  for f in T.facets if a in f and b in f)


def _cycle_order(edges) -> list[int]:
    adj = defaultdict(list)
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    if any(len(n) != 2 for n in adj.values()):
        raise TriangulationError("link is not a closed cycle")
    start = min(adj)
    cycle = [start, min(adj[start])]
    while True:
        prev, cur = cycle[-2], cycle[-1]
        nxt = [w for w in adj[cur] if w != prev][0]
        if nxt == start:
            break
        cycle.append(nxt)
    if len(cycle) != len(adj):
        raise TriangulationError("link is not a single cycle")
    return cycle


def interior_edges(T: Triangulation) -> list[tuple[tuple[int, int], list[int]]]:
    """Interior edges with their link cycles, starting at the smallest vertex
    and continuing towards its smaller neighbour."""
    out = []
    for e in sorted(_faces(T, 2)):
        if _on_common_facet(e):
            continue
        out.append((e, _cycle_order(link(T, e))))
    return out


def b_vector(T: Triangulation) -> tuple[int, ...]:
    lengths = Counter(len(c) for _, c in interior_edges(T))
    top = max(lengths) if lengths else 3
    return tuple(lengths.get(j, 0) for j in range(3, top + 1))


def permute(T: Triangulation, p: Permutation) -> Triangulation:
    return Triangulation(_normalize([[p.act_on_point(v) for v in f] for f in T.facets]))


def orbit(T: Triangulation) -> tuple[int, Triangulation]:
    """Orbit size under S4 and the representative with lex-min GKZ vector
    (ties broken by the lexicographic facet list)."""
    images = {permute(T, p) for p in S4}
    rep = min(images, key=lambda U: (gkz(U), U.facets))
    return len(images), rep


def altshuler(facets) -> int:
    """max(|det(J J^T)|, |det(J^T J)|) for the vertex-facet incidence matrix J."""
    facets = [tuple(f) for f in (facets.facets if isinstance(facets, Triangulation) else facets)]
    verts = sorted({v for f in facets for v in f})
    J = [[int(v in f) for f in facets] for v in verts]
    m, n = len(verts), len(facets)
    JJt = [[sum(J[a][k] * J[b][k] for k in range(n)) for b in range(m)] for a in range(m)]
    JtJ = [[sum(J[k][a] * J[k][b] for k in range(m)) for b in range(n)] for a in range(n)]
    return max(abs(det_bareiss(JJt)), abs(det_bareiss(JtJ)))


# ---------------------------------------------------------------------------
# canonical labeling


def _refine(colors, facets, verts):
    """Colour refinement on the vertex-facet incidence structure."""
    inc = {v: [f for f in facets if v in f] for v in verts}
    while True:
        fcol = {f: tuple(sorted(colors[v] for v in f)) for f in facets}
        sig = {v: (colors[v], tuple(sorted(fcol[f] for f in inc[v]))) for v in verts}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in verts}
        if len(set(new.values())) == len(set(colors.values())):
            return new
        colors = new


def _certificate(colors, facets):
    return tuple(sorted(tuple(sorted(colors[v] for v in f)) for f in facets))


def canonical_form(facets) -> tuple[tuple[int, ...], ...]:
    """Canonical facet list of the abstract complex: the least relabelled
    facet list over all leaves of an individualization-refinement search."""
    facets = [tuple(f) for f in (facets.facets if isinstance(facets, Triangulation) else facets)]
    verts = sorted({v for f in facets for v in f})
    best = None
    start = _refine({v: 0 for v in verts}, facets, verts)
    stack = [start]
    while stack:
        colors = stack.pop()
        counts = Counter(colors.values())
        if len(counts) == len(verts):
            cert = _certificate(colors, facets)
            if best is None or cert < best:
                best = cert
            continue
        target = min(c for c, k in counts.items() if k > 1)
        for v in verts:
            if colors[v] != target:
                continue
            # v goes strictly before the rest of its old cell
            ind ={w: (2 * c + (0 if w == v else 1)) if c == target else 2 * c for w, c in colors.items()}
            stack.append(_refine(ind, facets, verts))
    return best


def canonical_key(facets) -> int:
    """64-bit hash of :func:`canonical_form`."""
    cert = canonical_form(facets)
    digest = hashlib.sha256(repr(cert).encode()).digest()
    return int.from_bytes(digest[:8], "big")


# ---------------------------------------------------------------------------
# 3*Delta_2 census

DELTA2_POINTS: tuple[tuple[int, int, int], ...] = tuple(
    (a, b, 3 - a - b) for a in range(3, -1, -1) for b in range(3 - a, -1, -1)
)


def _area2(p, q, r) -> int:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _separated(t1, t2, pts) -> bool:
    """Do the two triangles have disjoint interiors (separating-axis test)?"""
    for a, b in ((t1, t2), (t2, t1)):
        for i in range(3):
            p, q = pts[a[i]], pts[a[(i + 1) % 3]]
            r = pts[a[(i + 2) % 3]]
            side = _area2(p, q, r)
            if all(_area2(p, q, pts[v]) * side <= 0 for v in b):
                return True
    return False


def _fold_forms(tris, pts):
    """Regularity inequalities: for each interior edge shared by triangles
    with apexes a and b, height(b) exceeds the interpolation over (edge, a)."""
    apex = defaultdict(list)
    for t in tris:
        for e in combinations(t, 2):
            apex[e].append([v for v in t if v not in e][0])
    forms = []
    for e, ap in apex.items():
        if len(ap) != 2:
            continue
        a, b = ap
        cell = list(e) + [a]
        # barycentric coordinates of b in the triangle cell
        A = [[pts[c][0] for c in cell], [pts[c][1] for c in cell], [1, 1, 1]]
        sol = solve_linear(A, [pts[b][0], pts[b][1], 1]).particular
        form = [Fraction(0)] * len(pts)
        form[b] += 1
        for c, lam in zip(cell, sol):
            form[c] -= lam
        forms.append(form)
    return forms


def enumerate_3delta2():
    """All unimodular triangulations of the 10 lattice points of 3*Delta_2.

    Returns ``(triangulations, regular_flags, orbits)`` where orbits is a list
    of index lists under the S3 action permuting coordinates.
    """
    import networkx as nx

    pts = [p[:2] for p in DELTA2_POINTS]
    unit = [t for t in combinations(range(10), 3) if abs(_area2(*(pts[v] for v in t))) == 1]
    G = nx.Graph()
    G.add_nodes_from(range(len(unit)))
    for x, y in combinations(range(len(unit)), 2):
        if _separated(unit[x], unit[y], pts):
            G.add_edge(x, y)
    tris = sorted(tuple(sorted(unit[i] for i in c)) for c in nx.find_cliques(G) if len(c) == 9)
    regular = []
    for t in tris:
        forms = _fold_forms(t, pts)
        res = linprog([0] * 10, A_ge=forms, b_ge=[1] * len(forms))
        regular.append(res.status != INFEASIBLE)
    index = {p: i for i, p in enumerate(DELTA2_POINTS)}
    lookup = {t: n for n, t in enumerate(tris)}
    seen, orbits = set(), []
    for n, t in enumerate(tris):
        if n in seen:
            continue
        orb = set()
        for perm in permutations(range(3)):
            img = tuple(sorted(tuple(sorted(index[tuple(DELTA2_POINTS[v][perm[c]] for c in range(3))]
                                            for v in tri)) for tri in t))
            orb.add(lookup[img])
        seen |= orb
        orbits.append(sorted(orb))
    return tris, regular, orbits
