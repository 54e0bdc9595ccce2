"""The 20 lattice points of the triple tetrahedron 3*Delta_3.

Point ``i`` is the exponent vector of the ``i``-th monomial of a cubic in
``(w, x, y, z)``; coordinate ``f`` of an exponent is ``x_f``. The facet
``F_f`` of 3*Delta_3 is ``{x_f = 0}``.
"""

from __future__ import annotations

from itertools import permutations

N_POINTS = 20

EXPONENTS: tuple[tuple[int, int, int, int], ...] = (
    (3, 0, 0, 0), (2, 0, 0, 1), (1, 0, 0, 2), (0, 0, 0, 3),
    (2, 0, 1, 0), (1, 0, 1, 1), (0, 0, 1, 2), (1, 0, 2, 0),
    (0, 0, 2, 1), (0, 0, 3, 0), (2, 1, 0, 0), (1, 1, 0, 1),
    (0, 1, 0, 2), (1, 1, 1, 0), (0, 1, 1, 1), (0, 1, 2, 0),
    (1, 2, 0, 0), (0, 2, 0, 1), (0, 2, 1, 0), (0, 3, 0, 0),
)

INDEX: dict[tuple[int, int, int, int], int] = {e: i for i, e in enumerate(EXPONENTS)}

# corner point with x_f = 3
CORNERS = (0, 19, 9, 3)

# Ray directions in R^4 / R1, represented with x_0 = 0.
OMEGA: tuple[tuple[int, int, int, int], ...] = (
    (0, -1, -1, -1),
    (0, 1, 0, 0),
    (0, 0, 1, 0),
    (0, 0, 0, 1),
)

MONOMIAL_NAMES = ("w", "x", "y", "z")


def index_to_exponent(i: int) -> tuple[int, int, int, int]:
    if not 0 <= i < N_POINTS:
        raise ValueError(f"point index out of range: {i}")
    return EXPONENTS[i]


def exponent_to_index(x) -> int:
    try:
        return INDEX[tuple(x)]
    except KeyError:
        raise ValueError(f"not a lattice point of 3*Delta_3: {x}") from None


class Permutation(tuple):
    """A bijection of the coordinate set {0, 1, 2, 3}.

    ``p[f]`` is the image of coordinate ``f``.  Acting on an exponent moves
    the entry at position ``f`` to position ``p[f]``.
    """

    def __new__(cls, images=(0, 1, 2, 3)):
        images = tuple(int(v) for v in images)
        if sorted(images) != [0, 1, 2, 3]:
            raise ValueError(f"not a permutation of 0..3: {images}")
        return super().__new__(cls, images)

    @classmethod
    def transposition(cls, a: int, b: int) -> "Permutation":
        images = [0, 1, 2, 3]
        images[a], images[b] = b, a
        return cls(images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(f) = self(other(f))
        return Permutation(self[other[f]] for f in range(4))

    def inverse(self) -> "Permutation":
        inv = [0] * 4
        for f, g in enumerate(self):
            inv[g] = f
        return Permutation(inv)

    def act_on_vector(self, v):
        out = [None] * 4
        for f in range(4):
            out[self[f]] = v[f]
        return tuple(out)

    def act_on_point(self, i: int) -> int:
        return _POINT_ACTION[self][i]


IDENTITY = Permutation()
S4: tuple[Permutation, ...] = tuple(Permutation(p) for p in permutations(range(4)))

_POINT_ACTION: dict[Permutation, tuple[int, ...]] = {
    p: tuple(INDEX[p.act_on_vector(EXPONENTS[i])] for i in range(N_POINTS)) for p in S4
}


def apply_permutation(p: Permutation, i: int) -> int:
    return p.act_on_point(i)


def on_facet(i: int, f: int) -> bool:
    return EXPONENTS[i][f] == 0


def on_plane_sum(coords, c: int, i: int) -> bool:
    """True iff ``sum(x_m for m in coords) == c`` at point ``i``."""
    x = EXPONENTS[i]
    return sum(x[m] for m in coords) == c


def lineality_vectors() -> list[tuple[int, ...]]:
    """Height vectors that are affine-linear on 3*Delta_3 (the functions x_f)."""
    return [tuple(EXPONENTS[i][f] for i in range(N_POINTS)) for f in range(4)]


def points_on_facet(f: int) -> list[int]:
    return [i for i in range(N_POINTS) if EXPONENTS[i][f] == 0]
