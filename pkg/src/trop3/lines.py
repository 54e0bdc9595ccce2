"""Tropical lines in R^4/R1 via tropical Pluecker vectors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import OMEGA, Permutation

PAIRS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_INDEX = {p: n for n, p in enumerate(PAIRS)}

# labeled types ij|kl, listed with the pair containing 0 first
TYPES: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = (
    ((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)),
)
DEGENERATE = "degenerate"


class LineError(ValueError):
    pass


def type_name(t) -> str:
    if t == DEGENERATE:
        return t
    (i, j), (k, l) = t
    return f"{i}{j}|{k}{l}"


def _P(P, a, b) -> Fraction:
    if a > b:
        a, b = b, a
    return Fraction(P[PAIR_INDEX[(a, b)]])


def pair_sums(P) -> tuple[Fraction, Fraction, Fraction]:
    """(P01+P23, P02+P13, P03+P12)."""
    return tuple(_P(P, *ij) + _P(P, *kl) for ij, kl in TYPES)


def is_pluecker(P) -> bool:
    if len(P) != 6:
        raise LineError(f"a Pluecker vector has 6 entries, got {len(P)}")
    s = pair_sums(P)
    return sum(1 for v in s if v == min(s)) >= 2


def labeled_type(P):
    """``((i, j), (k, l))`` where P_ij + P_kl is the strict maximum pair sum,
    or ``DEGENERATE`` when all three sums agree."""
    if not is_pluecker(P):
        raise LineError("not a tropical Pluecker vector: the minimum pair sum is attained once")
    s = pair_sums(P)
    if s[0] == s[1] == s[2]:
        return DEGENERATE
    return TYPES[max(range(3), key=lambda n: s[n])]


def permute_pluecker(p: Permutation, P) -> tuple[Fraction, ...]:
    """The Pluecker vector of the line with coordinates permuted by p."""
    out = [None] * 6
    for (a, b), v in zip(PAIRS, P):
        pa, pb = p[a], p[b]
        out[PAIR_INDEX[(min(pa, pb), max(pa, pb))]] = Fraction(v)
    return tuple(out)


def normalize_point(q) -> tuple[Fraction, ...]:
    """Representative with x_0 = 0."""
    return tuple(Fraction(v) - Fraction(q[0]) for v in q)


def display_point(q) -> tuple[Fraction, ...]:
    """Representative with third coordinate 0 (used for printing)."""
    return tuple(Fraction(v) - Fraction(q[2]) for v in q)


def equal_mod_ones(u, v) -> bool:
    return normalize_point(u) == normalize_point(v)


@dataclass(frozen=True)
class LinePair:
    """Vertices of a non-degenerate line of type ij|kl.

    ``q1`` carries the rays in directions ``omega_i`` and ``omega_j``; ``q2``
    those in directions ``omega_k`` and ``omega_l``.  ``length`` is the
    t >= 0 with q2 = q1 + t (omega_k + omega_l).
    """

    pair1: tuple[int, int]
    pair2: tuple[int, int]
    q1: tuple[Fraction, ...]
    q2: tuple[Fraction, ...]
    length: Fraction

    @property
    def type(self):
        return (self.pair1, self.pair2)


def _base_vertices(P):
    """Vertex formulas for type 03|12."""
    P02, P03, P12, P13, P23 = (_P(P, 0, 2), _P(P, 0, 3), _P(P, 1, 2), _P(P, 1, 3), _P(P, 2, 3))
    q03 = (P02 + P03, P02 + P13, P02 + P23, P03 + P23)
    q12 = (P02 + P13, P12 + P13, P12 + P23, P13 + P23)
    return q03, q12


_CONJUGATOR = {
    ((0, 3), (1, 2)): Permutation(),
    ((0, 1), (2, 3)): Permutation.transposition(1, 3),
    ((0, 2), (1, 3)): Permutation.transposition(2, 3),
}


def line_vertices(P) -> LinePair:
    t = labeled_type(P)
    if t == DEGENERATE:
        raise LineError("degenerate line: all three pair sums coincide")
    sigma = _CONJUGATOR[t]
    q03, q12 = _base_vertices(permute_pluecker(sigma, P))
    # sigma maps the actual type onto 03|12; pull the coordinates back
    q1 = normalize_point(tuple(q03[sigma[f]] for f in range(4)))
    q2 = normalize_point(tuple(q12[sigma[f]] for f in range(4)))
    k, l = t[1]
    direction = tuple(a + b for a, b in zip(OMEGA[k], OMEGA[l]))
    length = next((q2[f] - q1[f]) / direction[f] for f in range(4) if direction[f])
    return LinePair(t[0], t[1], q1, q2, length)


def pluecker_from_vertices(u, v) -> tuple[Fraction, ...]:
    """Tropical 2x2 minors P_ab = min(u_a + v_b, u_b + v_a)."""
    u = [Fraction(x) for x in u]
    v = [Fraction(x) for x in v]
    return tuple(min(u[a] + v[b], u[b] + v[a]) for a, b in PAIRS)


def line_from_vertices(pair1, pair2, q1, length) -> LinePair:
    """Line with vertex ``q1`` and edge length ``length`` for type pair1|pair2."""
    k, l = pair2
    q1 = normalize_point(q1)
    q2 = tuple(q1[f] + Fraction(length) * (OMEGA[k][f] + OMEGA[l][f]) for f in range(4))
    return LinePair(tuple(pair1), tuple(pair2), q1, q2, Fraction(length))


def pieces(line: LinePair):
    """The five parametrized pieces as (name, base, direction, upper bound).

    The bounded edge is ``q1 + s (q2 - q1)`` on [0, 1]; the rays are
    ``base + s omega`` on [0, infinity).
    """
    i, j = line.pair1
    k, l = line.pair2
    edge_dir = tuple(b - a for a, b in zip(line.q1, line.q2))
    return [
        ("edge", line.q1, edge_dir, Fraction(1)),
        (f"omega{i}", line.q1, OMEGA[i], None),
        (f"omega{j}", line.q1, OMEGA[j], None),
        (f"omega{k}", line.q2, OMEGA[k], None),
        (f"omega{l}", line.q2, OMEGA[l], None),
    ]
