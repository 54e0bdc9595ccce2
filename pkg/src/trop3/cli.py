"""Command-line front end: ``trop3 <command> [options]``.

Exit codes: 0 on success, 1 on a domain error (invalid triangulation,
degenerate line, point outside the secondary cone), 2 on a usage error.
Output is assembled completely before anything is printed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .incidence import line_on_surface
from .lines import LineError, display_point, line_vertices, type_name
from .parsing import parse_heights, parse_pluecker
from .ratgeom.cone import lineality_dim, remove_redundant
from .records import QUERY_KINDS, RecordError, Store, ingest, query
from .schlaefli import (VisibilityError, classify_all, form_string, is_generic, schlaefli_fan,
                        visible_motifs)
from .motifs import counts, occurrences
from .surface import dual_subdivision, secondary_cone
from .triangulation import TriangulationError, enumerate_3delta2, parse_facets, validate


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


def _num(x):
    return str(x)


def _jnum(x):
    """JSON form of an exact number: an int when integral, else "a/b"."""
    return int(x) if x.denominator == 1 else str(x)


def _arg_type(parser):
    def convert(text):
        try:
            return parser(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    convert.__name__ = parser.__name__.replace("parse_", "")
    return convert


# ---------------------------------------------------------------------------
# helpers


def _load_triangulation(args):
    given = [a for a in ("facets", "facets_file", "record") if getattr(args, a, None) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --facets, --facets-file, --record")
    if args.record is not None:
        recs = query(_store(args), "id", args.record)
        if not recs:
            raise DomainError(f"no record with id {args.record}")
        facets = recs[0].facets
    else:
        text = args.facets if args.facets is not None else _read(args.facets_file)
        try:
            facets = parse_facets(text)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        return validate(facets)
    except TriangulationError as exc:
        raise DomainError(f"invalid triangulation: {exc}") from None


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _store(args) -> Store:
    path = args.store or os.environ.get("TROP3_STORE")
    if not path:
        raise UsageError("no store given: use --store PATH or set TROP3_STORE")
    return Store(path)


def _facet_text(facets):
    return "{" + ",".join("{" + ",".join(map(str, f)) + "}" for f in facets) + "}"


# ---------------------------------------------------------------------------
# commands: each returns (json_payload, text_lines)


def cmd_subdivide(args):
    sub = dual_subdivision(args.heights)
    payload = {"cells": [list(c) for c in sub.cells], "triangulation": sub.is_triangulation()}
    lines = [_facet_text(sub.cells)]
    if not sub.is_triangulation():
        lines.append("note: not a triangulation (heights are not generic)")
    return payload, lines


def cmd_secondary_cone(args):
    T = _load_triangulation(args)
    K = secondary_cone(T)
    R = remove_redundant(K)
    payload = {"generated": len(K.inequalities), "facets": [list(a) for a in R.inequalities],
               "lineality_dim": lineality_dim(R)}
    lines = [f"generated inequalities: {len(K.inequalities)}",
             f"facets: {len(R.inequalities)}",
             f"lineality dimension: {lineality_dim(R)}"]
    lines += [f"  {form_string(a)} >= 0" for a in R.inequalities]
    return payload, lines


def cmd_line_check(args):
    try:
        line = line_vertices(args.pluecker)
        res = line_on_surface(args.pluecker, args.heights)
    except LineError as exc:
        raise DomainError(str(exc)) from None
    payload = {"type": type_name(line.type),
               "vertices": {"".join(map(str, line.pair1)): [_jnum(v) for v in display_point(line.q1)],
                            "".join(map(str, line.pair2)): [_jnum(v) for v in display_point(line.q2)]},
               **res.to_json()}
    lines = [f"type {type_name(line.type)}",
             f"q{''.join(map(str, line.pair1))} = ({', '.join(map(_num, display_point(line.q1)))})",
             f"q{''.join(map(str, line.pair2))} = ({', '.join(map(_num, display_point(line.q2)))})"]
    if res.contained:
        lines.append("contained")
        for name, ps in res.certificates:
            desc = "; ".join(f"[{_num(p.lo)}, {'inf' if p.hi is None else _num(p.hi)}]: "
                             f"{{{','.join(map(str, p.block))}}}" for p in ps)
            lines.append(f"  {name}: {desc}")
    else:
        lines.append("not contained")
        lines.append(f"  witness on {res.piece}: ({', '.join(map(_num, res.witness))})")
    return payload, lines


def cmd_motifs(args):
    T = _load_triangulation(args)
    occ = occurrences(T)
    c = counts(occ)
    payload = {"counts": c, "total": sum(c.values()), "occurrences": [o.to_json() for o in occ]}
    lines = [" ".join(f"{k}:{v}" for k, v in c.items()) + f" total:{sum(c.values())}"]
    lines += [f"{o.motif} points={list(o.points)} exits={list(o.exits)}" for o in occ]
    return payload, lines


def cmd_visibility(args):
    T = _load_triangulation(args)
    g, p, h = classify_all(T)
    payload = {"global": [v.to_json() for v in g], "partial": [v.to_json() for v in p],
               "hardly": [v.to_json() for v in h]}
    lines = [f"{len(g)} global, {len(p)} partial, {len(h)} hardly"]
    for v in g + p + h:
        o = v.occurrence
        extra = ""
        if v.walls:
            extra += " walls: " + ", ".join(form_string(w) for w in v.walls)
        if v.equations:
            extra += " equations: " + ", ".join(form_string(e) for e in v.equations)
        lines.append(f"{v.classification} {o.motif} points={list(o.points)} exits={list(o.exits)}{extra}")
    return payload, lines


def cmd_fan(args):
    T = _load_triangulation(args)
    g, p, h = classify_all(T)
    cones = g + p + h
    walls, cells = schlaefli_fan(T, cones)
    payload = {"walls": [{"coefficients": list(w), "form": form_string(w)} for w in walls],
               "occurrences": [c.occurrence.to_json() for c in cones],
               "cells": [{"signs": list(c.signs), "point": [_jnum(x) for x in c.point],
                          "visible": c.visible} for c in cells]}
    lines = [f"{len(walls)} walls, {len(cells)} cells"]
    lines += [f"  W{n} = {form_string(w)}" for n, w in enumerate(walls)]
    for c in cells:
        signs = "".join("+" if s > 0 else "-" for s in c.signs)
        lines.append(f"{signs} visible: {len(c.visible)}")
    return payload, lines


def cmd_generic(args):
    T = _load_triangulation(args)
    try:
        g, p, h = classify_all(T)
        cones = g + p + h
        ok, on_walls, hardly = is_generic(T, args.heights, cones)
        vis = visible_motifs(T, args.heights, cones)
    except VisibilityError as exc:
        raise DomainError(str(exc)) from None
    payload = {"generic": ok, "walls": [form_string(w) for w in on_walls],
               "hardly": [cones[n].occurrence.to_json() for n in hardly],
               "visible": [cones[n].occurrence.to_json() for n in vis]}
    lines = ["generic" if ok else "not generic"]
    lines += [f"  on wall {form_string(w)}" for w in on_walls]
    lines += [f"  in hardly visible locus of {cones[n].occurrence.motif} "
              f"{list(cones[n].occurrence.points)}" for n in hardly]
    lines.append(f"visible occurrences: {len(vis)}")
    return payload, lines


def cmd_ingest(args):
    try:
        recs = ingest(args.path, _store(args), visibility=not args.no_visibility,
                      workers=args.workers)
    except (RecordError, TriangulationError) as exc:
        raise DomainError(str(exc)) from None
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror}") from None
    payload = [r.to_json() for r in recs]
    lines = [f"ingested {len(recs)} record(s)"]
    lines += [f"  id {r.id}: gkz {list(r.gkz)} altshuler {r.altshuler} "
              f"motifs {r.motifs['total']}" for r in recs]
    return payload, lines


def _query_value(kind, text):
    if kind in ("id", "altshuler"):
        if not text.strip().lstrip("-").isdigit():
            raise UsageError(f"{kind} must be an integer")
        return int(text)
    if kind == "gkz":
        try:
            vec = parse_heights(text)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return tuple(int(v) for v in vec)
    if kind == "motifs":
        parts = text.replace(":", ",").split(",")
        if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
            raise UsageError("motifs range must look like LO,HI")
        return tuple(int(p) for p in parts)
    return text.strip()


def cmd_query(args):
    store = _store(args)
    try:
        recs = query(store, args.kind, _query_value(args.kind, args.value))
    except RecordError as exc:
        raise DomainError(str(exc)) from None
    payload = [r.to_json() for r in recs]
    lines = [f"{len(recs)} record(s)"]
    lines += [f"  id {r.id}: {_facet_text(r.facets)}" for r in recs]
    return payload, lines


def cmd_delta2_census(args):
    tris, regular, orbits = enumerate_3delta2()
    payload = {"triangulations": len(tris), "orbits": len(orbits), "all_regular": all(regular)}
    state = "all regular" if all(regular) else f"{sum(regular)} regular"
    return payload, [f"{len(tris)} triangulations, {len(orbits)} orbits, {state}"]


# ---------------------------------------------------------------------------
# parser


def _add_facet_source(p):
    p.add_argument("--facets", help="facet list, brace format or JSON")
    p.add_argument("--facets-file", help="file containing a facet list")
    p.add_argument("--record", type=int, help="id of a record in the store")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--store", default=argparse.SUPPRESS,
                        help="JSON-lines store (default: $TROP3_STORE)")

    ap = argparse.ArgumentParser(prog="trop3", description="Lines on tropical cubic surfaces.",
                                 parents=[common])
    ap.add_argument("--version", action="version", version=f"trop3 {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    heights = _arg_type(parse_heights)

    p = sub.add_parser("subdivide", parents=[common], help="dual subdivision of a height vector")
    p.add_argument("--heights", type=heights, required=True)
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("secondary-cone", parents=[common], help="facets of the secondary cone")
    _add_facet_source(p)
    p.set_defaults(func=cmd_secondary_cone)

    p = sub.add_parser("line-check", parents=[common], help="is a line contained in a surface")
    p.add_argument("--pluecker", type=_arg_type(parse_pluecker), required=True)
    p.add_argument("--heights", type=heights, required=True)
    p.set_defaults(func=cmd_line_check)

    for name, func, help_ in (("motifs", cmd_motifs, "motif occurrences"),
                              ("visibility", cmd_visibility, "visibility classification"),
                              ("fan", cmd_fan, "Schlaefli walls and fan cells")):
        p = sub.add_parser(name, parents=[common], help=help_)
        _add_facet_source(p)
        p.set_defaults(func=func)

    p = sub.add_parser("generic", parents=[common], help="genericity of a coefficient vector")
    _add_facet_source(p)
    p.add_argument("--heights", type=heights, required=True)
    p.set_defaults(func=cmd_generic)

    p = sub.add_parser("ingest", parents=[common], help="annotate a facet file into the store")
    p.add_argument("path")
    p.add_argument("--no-visibility", action="store_true",
                   help="skip visibility classification of occurrences")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("query", parents=[common], help="look up records in the store")
    p.add_argument("--kind", choices=QUERY_KINDS, required=True)
    p.add_argument("--value", required=True)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("delta2-census", parents=[common], help="triangulations of 3*Delta_2")
    p.set_defaults(func=cmd_delta2_census)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.format = getattr(args, "format", "text")
    args.store = getattr(args, "store", None)
    try:
        payload, lines = args.func(args)
    except UsageError as exc:
        print(f"trop3: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, TriangulationError, VisibilityError, LineError) as exc:
        print(f"trop3: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        out = json.dumps(payload, indent=2, default=str)
    else:
        out = "\n".join(lines)
    print(out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
