"""Annotated triangulation records and a JSON-lines store.

Each stored line is one record.  Identifiers are local to the store file and
unrelated to identifiers of any external collection.
"""

from __future__ import annotations

import fcntl
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

from .motifs import counts, occurrences
from .ratgeom.cone import remove_redundant
from .ratgeom.ilp import min_sum_integer_point
from .schlaefli import classify_all
from .surface import secondary_cone
from .triangulation import (Triangulation, altshuler, b_vector, canonical_key, gkz, orbit,
                            parse_facets, validate)

FIELDS = ("id", "facets", "gkz", "b_vector", "orbit_size", "canonical_key", "altshuler",
          "interior_point", "secondary_facet_count", "motifs")


class RecordError(ValueError):
    pass


@dataclass
class TriangulationRecord:
    id: int | None
    facets: tuple[tuple[int, ...], ...]
    gkz: tuple[int, ...] | None = None
    b_vector: tuple[int, ...] | None = None
    orbit_size: int | None = None
    canonical_key: str | None = None
    altshuler: str | None = None
    interior_point: tuple[int, ...] | None = None
    secondary_facet_count: int | None = None
    motifs: dict | None = field(default=None)

    @property
    def complete(self) -> bool:
        return all(getattr(self, f.name) is not None for f in fields(self))

    def to_json(self) -> dict:
        out = {}
        for name in FIELDS:
            v = getattr(self, name)
            if isinstance(v, tuple):
                v = [list(x) if isinstance(x, tuple) else x for x in v]
            out[name] = v
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, d: dict) -> "TriangulationRecord":
        unknown = set(d) - set(FIELDS)
        if unknown:
            raise RecordError(f"unknown record fields: {sorted(unknown)}")
        if "facets" not in d:
            raise RecordError("record without facets")

        def tup(v):
            return None if v is None else tuple(v)

        return cls(
            id=d.get("id"),
            facets=tuple(tuple(f) for f in d["facets"]),
            gkz=tup(d.get("gkz")),
            b_vector=tup(d.get("b_vector")),
            orbit_size=d.get("orbit_size"),
            canonical_key=d.get("canonical_key"),
            altshuler=d.get("altshuler"),
            interior_point=tup(d.get("interior_point")),
            secondary_facet_count=d.get("secondary_facet_count"),
            motifs=d.get("motifs"),
        )

    @classmethod
    def loads(cls, line: str) -> "TriangulationRecord":
        return cls.from_json(json.loads(line))


def _motif_summary(T: Triangulation, visibility: bool) -> dict:
    if visibility:
        g, p, h = classify_all(T)
        occ = [v.to_json() for v in g + p + h]
        occ.sort(key=lambda o: (o["motif"], o["points"], o["exits"]))
        found = [v.occurrence for v in g + p + h]
    else:
        found = occurrences(T)
        occ = [o.to_json() for o in found]
    c = counts(found)
    return {"counts": c, "total": sum(c.values()), "occurrences": occ}


def annotate(record: TriangulationRecord, visibility: bool = True) -> TriangulationRecord:
    """Fill every missing derived field.  Facets are replaced by the
    representative of their symmetry orbit with lex-minimal GKZ vector on the
    first pass; fields already present are kept, so annotating twice is the
    same as annotating once."""
    if record.complete:
        return record
    T = validate(record.facets)
    if record.gkz is None:
        size, rep = orbit(T)
        T = rep
        record = TriangulationRecord(record.id, rep.facets, gkz(rep), orbit_size=size)
    r = record
    if r.orbit_size is None:
        r.orbit_size = orbit(T)[0]
    if r.b_vector is None:
        r.b_vector = b_vector(T)
    if r.altshuler is None:
        r.altshuler = str(altshuler(T))
    if r.canonical_key is None:
        r.canonical_key = f"{canonical_key(T.facets):016x}"
    if r.interior_point is None or r.secondary_facet_count is None:
        K = remove_redundant(secondary_cone(T))
        r.secondary_facet_count = len(K.inequalities)
        r.interior_point = tuple(int(v) for v in min_sum_integer_point(K))
    if r.motifs is None:
        r.motifs = _motif_summary(T, visibility)
    return r


def verify(record: TriangulationRecord) -> list[str]:
    """Names of derived fields that disagree with a fresh recomputation."""
    fresh = annotate(TriangulationRecord(record.id, record.facets),
                     visibility=bool(record.motifs and record.motifs["occurrences"]
                                     and "classification" in record.motifs["occurrences"][0]))
    bad = []
    for name in FIELDS[2:]:
        if name == "interior_point":
            K = remove_redundant(secondary_cone(Triangulation(record.facets)))
            ok = record.interior_point is not None and K.contains(record.interior_point, strict=True)
        else:
            ok = getattr(fresh, name) == getattr(record, name)
        if not ok:
            bad.append(name)
    if tuple(fresh.facets) != tuple(record.facets):
        bad.insert(0, "facets")
    return bad


# ---------------------------------------------------------------------------
# input files


def read_facet_file(path) -> list[TriangulationRecord]:
    """Parse a file with one triangulation per line (brace text, a JSON array
    of facets, or a JSON object with ``facets`` and optionally ``id``).
    Blank lines and lines starting with ``#`` are skipped."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            try:
                if s.startswith("{") and s[1:].lstrip().startswith('"'):
                    d = json.loads(s)
                    rec = TriangulationRecord(d.get("id"), tuple(map(tuple, d["facets"])))
                else:
                    rec = TriangulationRecord(None, tuple(parse_facets(s)))
                validate(rec.facets)
            except (ValueError, KeyError, TypeError) as exc:
                raise RecordError(f"{path}:{lineno}: {exc}") from None
            out.append(rec)
    return out


def _annotate_job(args):
    rec, visibility = args
    return annotate(rec, visibility)


def ingest(path, store: "Store | None" = None, visibility: bool = True,
           workers: int = 1) -> list[TriangulationRecord]:
    """Validate, canonicalize and annotate every triangulation in ``path``;
    append the records to ``store`` if given."""
    recs = read_facet_file(path)
    if workers > 1 and len(recs) > 1:
        with ProcessPoolExecutor(workers) as ex:
            recs = list(ex.map(_annotate_job, [(r, visibility) for r in recs]))
    else:
        recs = [annotate(r, visibility) for r in recs]
    if store is not None:
        recs = store.append(recs)
    else:
        for n, r in enumerate(recs, 1):
            if r.id is None:
                r.id = n
    return recs


# ---------------------------------------------------------------------------
# store


class Store:
    """Append-only JSON-lines file.  Writers hold an exclusive lock while
    appending; readers parse only complete lines, so a concurrent append is
    either fully visible or not at all."""

    def __init__(self, path):
        self.path = Path(path)

    def records(self) -> list[TriangulationRecord]:
        if not self.path.exists():
            return []
        data = self.path.read_text(encoding="utf-8")
        lines = data.split("\n")
        if not data.endswith("\n"):
            lines = lines[:-1]
        return [TriangulationRecord.loads(s) for s in lines if s.strip()]

    def append(self, recs) -> list[TriangulationRecord]:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a+", encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                used = {r.id for r in self.records()}
                nxt = max(used, default=0) + 1
                for r in recs:
                    if r.id is None:
                        r.id = nxt
                    elif r.id in used:
                        raise RecordError(f"duplicate record id {r.id}")
                    used.add(r.id)
                    nxt = max(nxt, r.id + 1)
                fh.write("".join(r.dumps() + "\n" for r in recs))
                fh.flush()
                os.fsync(fh.fileno())
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
        return list(recs)


QUERY_KINDS = ("id", "gkz", "canonical_key", "altshuler", "motifs")


def query(store, kind: str, value) -> list[TriangulationRecord]:
    """Records matching ``value`` for one of :data:`QUERY_KINDS`.

    ``motifs`` takes an inclusive ``(lo, hi)`` range of total occurrence
    counts; ``gkz`` an exact 20-tuple; the others exact values.
    """
    recs = store.records() if isinstance(store, Store) else list(store)
    if kind == "id":
        return [r for r in recs if r.id == int(value)]
    if kind == "gkz":
        key = tuple(int(v) for v in value)
        return [r for r in recs if r.gkz == key]
    if kind == "canonical_key":
        key = value if isinstance(value, str) else f"{int(value):016x}"
        return [r for r in recs if r.canonical_key == key.lower()]
    if kind == "altshuler":
        return [r for r in recs if r.altshuler == str(int(value))]
    if kind == "motifs":
        lo, hi = (int(v) for v in value)
        return [r for r in recs if r.motifs is not None and lo <= r.motifs["total"] <= hi]
    raise RecordError(f"unknown query kind {kind!r}; expected one of {', '.join(QUERY_KINDS)}")
