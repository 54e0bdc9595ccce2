"""Tropical cubic polynomials on 3*Delta_3 and their dual subdivisions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .lattice import EXPONENTS, N_POINTS
from .parsing import parse_heights  # noqa: F401  (re-exported)
from .ratgeom.cone import RationalCone
from .ratgeom.linalg import det_bareiss, solve_linear
from .triangulation import Triangulation, interior_triangles, validate, TriangulationError


@dataclass(frozen=True)
class Subdivision:
    cells: tuple[tuple[int, ...], ...]

    def is_triangulation(self) -> bool:
        return all(len(c) == 4 for c in self.cells)


def _as_heights(C):
    if len(C) != N_POINTS:
        raise ValueError(f"expected 20 heights, got {len(C)}")
    return [Fraction(c) for c in C]


def evaluate(C, x):
    """Minimum of ``C_i + <exponent_i, x>`` and the set of minimizing indices."""
    C = _as_heights(C)
    vals = [C[i] + sum(e * Fraction(xi) for e, xi in zip(EXPONENTS[i], x)) for i in range(N_POINTS)]
    m = min(vals)
    return m, frozenset(i for i, v in enumerate(vals) if v == m)


def _det3(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _adjugate4(M):
    adj = [[0] * 4 for _ in range(4)]
    for r in range(4):
        rows = [M[i] for i in range(4) if i != r]
        for c in range(4):
            minor = [[row[j] for j in range(4) if j != c] for row in rows]
            adj[c][r] = (-1) ** (r + c) * _det3(*minor)
    return adj


_QUAD_WEIGHTS = None


def _quad_weights():
    """For each affinely independent quadruple: (quad, D, W) with D > 0 and
    ``W[e][p] / D`` the affine coordinates of point e in the quadruple."""
    global _QUAD_WEIGHTS
    if _QUAD_WEIGHTS is None:
        out = []
        for quad in combinations(range(N_POINTS), 4):
            # columns are the points (x1, x2, x3, 1)
            M = [[EXPONENTS[p][f] for p in quad] for f in (1, 2, 3)] + [[1, 1, 1, 1]]
            adj = _adjugate4(M)
            D = sum(M[0][c] * adj[c][0] for c in range(4))
            if D == 0:
                continue
            if D < 0:
                D, adj = -D, [[-v for v in row] for row in adj]
            W = []
            for e in range(N_POINTS):
                y = (EXPONENTS[e][1], EXPONENTS[e][2], EXPONENTS[e][3], 1)
                W.append(tuple(sum(adj[r][k] * y[k] for k in range(4)) for r in range(4)))
            out.append((quad, D, tuple(W)))
        _QUAD_WEIGHTS = out
    return _QUAD_WEIGHTS


def _integer_heights(C):
    den = 1
    for c in C:
        den = den * c.denominator // gcd(den, c.denominator)
    return [int(c * den) for c in C]


def dual_subdivision(C) -> Subdivision:
    """Maximal cells of the regular subdivision induced by the heights ``C``.

    Every affinely independent quadruple is tested: when the interpolating
    affine function stays weakly below all heights, the points where it
    touches form a lower cell.
    """
    H = _integer_heights(_as_heights(C))
    cells = set()
    for quad, D, W in _quad_weights():
        hq = [H[p] for p in quad]
        touch = []
        for e in range(N_POINTS):
            w = W[e]
            val = w[0] * hq[0] + w[1] * hq[1] + w[2] * hq[2] + w[3] * hq[3]
            target = D * H[e]
            if val > target:
                break
            if val == target:
                touch.append(e)
        else:
            cells.add(frozenset(touch))
    return Subdivision(tuple(sorted(tuple(sorted(c)) for c in cells)))


def is_smooth(C) -> bool:
    sub = dual_subdivision(C)
    if not sub.is_triangulation():
        return False
    try:
        validate(sub.cells)
    except TriangulationError:
        return False
    return True


def triangulation_of(C) -> Triangulation:
    """The unimodular triangulation induced by ``C``; raises if not smooth."""
    return validate(dual_subdivision(C).cells)


def barycentric(cell, b) -> list[Fraction]:
    """Affine coordinates of point ``b`` with respect to the 4 points of ``cell``."""
    sol = solve_linear([[EXPONENTS[p][f] for p in cell] for f in range(4)], list(EXPONENTS[b]))
    return sol.particular


def fold_form(tri, a, b) -> tuple[Fraction, ...]:
    """Form ``C_b - l(b)`` where l interpolates the heights on ``tri + {a}``."""
    cell = list(tri) + [a]
    lam = barycentric(cell, b)
    form = [Fraction(0)] * N_POINTS
    form[b] += 1
    for p, w in zip(cell, lam):
        form[p] -= w
    return tuple(form)


def secondary_cone(T: Triangulation) -> RationalCone:
    """One inequality per interior triangle (36 for unimodular T)."""
    forms = []
    for tri, (a, b) in sorted(interior_triangles(T).items()):
        forms.append(fold_form(tri, a, b))
    return RationalCone.from_forms(forms, (), N_POINTS)


def vertex_of_tetra(C, tetra) -> tuple[Fraction, ...]:
    """Point (with x_0 = 0) where the four monomial forms of ``tetra`` agree."""
    C = _as_heights(C)
    tetra = list(tetra)
    # unknowns x1, x2, x3, v with C_p + e_p.x = v
    A = [[EXPONENTS[p][1], EXPONENTS[p][2], EXPONENTS[p][3], -1] for p in tetra]
    b = [-C[p] for p in tetra]
    sol = solve_linear(A, b)
    if sol.kind != "unique":
        raise ValueError(f"{tuple(tetra)} is not a full-dimensional cell")
    x = (Fraction(0),) + tuple(sol.particular[:3])
    _, mins = evaluate(C, x)
    if not set(tetra) <= mins:
        raise ValueError(f"{tuple(tetra)} is not a cell of the subdivision induced by C")
    return x


def unimodular_volume(quad) -> int:
    base = EXPONENTS[quad[0]]
    return abs(det_bareiss([[EXPONENTS[p][f] - base[f] for f in (1, 2, 3)] for p in quad[1:]]))
