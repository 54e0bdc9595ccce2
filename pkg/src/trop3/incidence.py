"""Covering subroutine and the line-on-surface decision procedure."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import EXPONENTS, N_POINTS
from .lines import LineError, labeled_type, line_vertices, pieces, DEGENERATE


@dataclass(frozen=True)
class Piece:
    lo: Fraction | None       # None means -infinity
    hi: Fraction | None       # None means +infinity
    block: tuple[int, ...]

    def to_json(self):
        return {"piece": [_num(self.lo), _num(self.hi)], "block": list(self.block)}


@dataclass
class CoveringResult:
    covered: bool
    pieces: list[Piece] = field(default_factory=list)
    witness: Fraction | None = None

    @property
    def breakpoints(self) -> list[Fraction]:
        return [p.hi for p in self.pieces[:-1]]


def _num(x):
    if x is None:
        return None
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def coincidence_partition(ell) -> list[list[int]]:
    """Blocks of indices with identical linear functions ``(alpha, beta)``."""
    groups: dict = {}
    for i, (a, b) in enumerate(ell):
        groups.setdefault((Fraction(a), Fraction(b)), []).append(i)
    return sorted(groups.values())


def _val(f, t):
    return f[0] * t + f[1]


def covering_subroutine(U, ell) -> CoveringResult:
    """Decide whether min(ell(t)) is attained at least twice on the closed
    interval ``U = (lo, hi)`` (``None`` for an infinite end).

    Yes: the ordered pieces of the lower envelope, each with its block of
    coinciding indices (breakpoints belong to both neighbours).  No: a
    rational point of U with a unique minimizer.
    """
    lo, hi = U
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    if lo is not None and hi is not None and lo > hi:
        raise ValueError("empty interval")
    blocks = coincidence_partition(ell)
    funcs = [(Fraction(ell[b[0]][0]), Fraction(ell[b[0]][1])) for b in blocks]

    def minimizers(t):
        vals = [_val(f, t) for f in funcs]
        m = min(vals)
        return [n for n, v in enumerate(vals) if v == m]

    def size(ns):
        return sum(len(blocks[n]) for n in ns)

    if lo is not None and hi is not None and lo == hi:
        ms = minimizers(lo)
        if size(ms) >= 2:
            block = tuple(sorted(i for n in ms for i in blocks[n]))
            return CoveringResult(True, [Piece(lo, hi, block)])
        return CoveringResult(False, witness=lo)

    crossings = [(g[1] - f[1]) / (f[0] - g[0]) for x, f in enumerate(funcs)
                 for g in funcs[x + 1:] if f[0] != g[0]]
    start = lo if lo is not None else (min(crossings + [hi if hi is not None else Fraction(0)]) - 1)
    # the active function just to the right of a point: least slope among minimizers
    cur = start
    active = min(minimizers(cur), key=lambda n: funcs[n][0])
    found = []
    left = lo
    while True:
        fa = funcs[active]
        nxt, nxt_f = None, None
        for n, f in enumerate(funcs):
            if f[0] < fa[0]:
                t = (f[1] - fa[1]) / (fa[0] - f[0])
                if t > cur and (nxt is None or t < nxt):
                    nxt = t
        if nxt is None or (hi is not None and nxt >= hi):
            found.append((left, hi, active))
            break
        found.append((left, nxt, active))
        cur = left = nxt
        active = min(minimizers(cur), key=lambda n: funcs[n][0])

    result = [Piece(a, b, tuple(blocks[n])) for a, b, n in found]
    for p in result:
        if len(p.block) < 2:
            return CoveringResult(False, witness=_witness(p, minimizers, size))
    return CoveringResult(True, result)


def _witness(p: Piece, minimizers, size) -> Fraction:
    if p.lo is not None and size(minimizers(p.lo)) == 1:
        return p.lo
    if p.lo is not None and p.hi is not None:
        return (p.lo + p.hi) / 2
    if p.lo is not None:
        return p.lo + 1
    return p.hi - 1


@dataclass
class IncidenceResult:
    contained: bool
    certificates: list[tuple[str, list[Piece]]] = field(default_factory=list)
    witness: tuple[Fraction, ...] | None = None
    piece: str | None = None

    def to_json(self):
        if self.contained:
            return {"result": "contained",
                    "certificates": [{"name": n, "pieces": [p.to_json() for p in ps]}
                                     for n, ps in self.certificates]}
        return {"result": "witness", "piece": self.piece, "point": [_num(x) for x in self.witness]}


def substitute(C, base, direction) -> list[tuple[Fraction, Fraction]]:
    """The 20 monomial forms along ``base + t * direction``."""
    out = []
    for i in range(N_POINTS):
        e = EXPONENTS[i]
        out.append((sum(Fraction(a) * d for a, d in zip(e, direction)),
                    Fraction(C[i]) + sum(Fraction(a) * Fraction(b) for a, b in zip(e, base))))
    return out


def line_on_surface(P, C) -> IncidenceResult:
    """Is the tropical line with Pluecker vector P contained in the surface
    of the cubic with coefficients C?  Bounded edge first, then the rays."""
    if labeled_type(P) == DEGENERATE:
        raise LineError("degenerate line: containment of degenerate lines is not decided")
    line = line_vertices(P)
    return line_on_surface_vertices(line, C)


def line_on_surface_vertices(line, C) -> IncidenceResult:
    certs = []
    for name, base, direction, upper in pieces(line):
        res = covering_subroutine((0, upper), substitute(C, base, direction))
        if not res.covered:
            point = tuple(Fraction(b) + res.witness * d for b, d in zip(base, direction))
            return IncidenceResult(False, witness=point, piece=name)
        certs.append((name, res.pieces))
    return IncidenceResult(True, certs)
