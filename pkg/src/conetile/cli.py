"""Command-line front end.

Exit status is 0 whenever a verdict was reached (including negative ones)
and 2 on any error, which is reported as JSON with a machine-readable code.
"""
from __future__ import annotations

import argparse
import sys
from itertools import combinations

from . import exact, jsonio, svg
from .cone import Cone, has_regular_boundary
from .errors import ConeTileError, ConePreconditionFailed, ParseError
from .selfaffine import approximate_tile, check_system, corner_probe, digit_expand, is_cube_union
from .slices import classify_facet_plane, find_feasible_two_face, is_corner_cut, slice_cone, slice_metrics
from .tiling import (
    CubeTile,
    DiscreteRegion,
    TranslationSet,
    complete_translations,
    local_tiling_search,
    verify_direct_sum,
)
from .tiling.core import as_box


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}", location=text) from None


def _rat_list(text: str) -> tuple:
    try:
        return exact.as_vector(text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected comma-separated rationals, got {text!r}", location=text) from None


def _points(raw) -> list:
    return [(p,) if isinstance(p, int) else tuple(p) for p in raw]


def _flat(points) -> list:
    """1-D point lists print as plain numbers."""
    pts = sorted(points)
    return [p[0] for p in pts] if pts and len(pts[0]) == 1 else [list(p) for p in pts]


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# --- cone -------------------------------------------------------------------------

def _cone(data) -> Cone:
    cone = Cone(data["generators"])
    if "dim" in data and data["dim"] != cone.ambient_dim:
        raise ParseError(f"dim {data['dim']} does not match generators of length {cone.ambient_dim}",
                         location="dim")
    return cone


def cmd_cone_analyze(args):
    cone = _cone(jsonio.load(args.input, "cone"))
    frame = list(cone.frame)
    pairs = list(combinations(frame, 2))
    face_pairs = [list(p) for p in pairs if cone.is_face(p)]
    return {
        "frame": frame,
        "frame_size": len(frame),
        "frame_rays": [cone.ray(i) for i in frame],
        "dim": cone.dim,
        "ambient_dim": cone.ambient_dim,
        "regular": cone.is_regular,
        "regular_boundary": has_regular_boundary(cone),
        "half_space_witness": cone.half_space_witness,
        "facets": [{"generators": list(q.generator_indices), "normal": q.supporting_functional}
                   for q in cone.facets],
        "two_face_pairs": face_pairs,
        "frame_pairs": len(pairs),
    }


def _slice_report(cone, face, y, svg_path=None):
    s = slice_cone(cone, face, y)
    metrics = slice_metrics(cone, face, y) if cone.contains(y) else None
    classes = []
    for k, q in enumerate(cone.facets):
        sc = classify_facet_plane(cone, k, face, y)
        classes.append({"facet": list(q.generator_indices), "tag": sc.tag, "points": list(sc.points),
                        "direction": sc.direction})
    if svg_path:
        _write(svg_path, svg.slice_svg(s.vertices, s.ray_dirs))
    return {
        "face": list(cone.two_face(face)),
        "y": y,
        "plane_basis": list(s.plane_basis),
        "vertices": list(s.vertices),
        "ambient_vertices": [s.to_ambient(v) for v in s.vertices],
        "rays": [{"origin": s.vertices[0], "direction": s.ray_dirs[0]},
                 {"origin": s.vertices[-1], "direction": s.ray_dirs[1]}],
        "corner_cut": is_corner_cut(s),
        "facet_classes": classes,
        "metrics": {} if metrics is None else {
            "y_norm_sq": metrics.y_norm_sq,
            "slice_hausdorff_sq": metrics.slice_hausdorff_sq,
            "projection_bound_sq": metrics.projection_bound_sq,
            "hausdorff_upper": list(metrics.hausdorff_upper),
            "a1_norm_sq": metrics.a1_norm_sq,
            "b1_norm_sq": metrics.b1_norm_sq,
        },
    }


def cmd_cone_slice(args):
    data = jsonio.load(args.input, "cone")
    cone = _cone(data)
    face = _int_list(args.face) if args.face else data.get("face")
    y = _rat_list(args.y) if args.y else data.get("y")
    if face is None or y is None:
        raise ParseError("slice needs a face and a point y (in the file or via --face/--y)", location="face")
    return _slice_report(cone, tuple(face), exact.as_vector(y), args.svg)


def cmd_cone_feasible(args):
    cone = _cone(jsonio.load(args.input, "cone"))
    if cone.is_full_dimensional and cone.is_regular:
        return {"found": False, "reason": "regular"}
    found = find_feasible_two_face(cone, strategy=args.strategy)
    if found is None:
        raise ConePreconditionFailed("no feasible 2-face")
    report = _slice_report(cone, found.face, found.point, args.svg)
    report.update({"found": True, "case": found.case})
    return report


# --- tiles ------------------------------------------------------------------------

def _box_arg(args, data, dim):
    raw = args.box if args.box is not None else data.get("box")
    if raw is None:
        raise ParseError("a box is required (--box or 'box' in the input)", location="box")
    if isinstance(raw, str):
        raw = _int_list(raw)
        if len(raw) == 1:
            raw = raw[0]
    return as_box(raw, dim)


def cmd_tile_verify(args):
    data = jsonio.load(args.input, "tile")
    E = CubeTile.of(_points(data["cells"]))
    if "translations" not in data:
        raise ParseError("tile verify needs translations", location="translations")
    box = _box_arg(args, data, E.dim)
    J = TranslationSet.of(_points(data["translations"]), truncation_box=box)
    rep = verify_direct_sum(E, J, box, parallel=args.parallel)
    if args.svg and E.dim == 2:
        _write(args.svg, svg.tiling_svg(E.cells, J.points, box))
    return {
        "box": list(box),
        "is_packing": rep.is_packing,
        "covered_box": rep.covered_box,
        "is_tiling": rep.is_tiling,
        "multiplicity_violations": [{"point": list(p), "count": c} for p, c in rep.multiplicity_violations[:100]],
        "violation_count": len(rep.multiplicity_violations),
        "uncovered": [list(p) for p in rep.uncovered[:100]],
        "uncovered_count": len(rep.uncovered),
    }


def cmd_tile_complete(args):
    data = jsonio.load(args.input, "tile")
    E = CubeTile.of(_points(data["cells"]))
    box = _box_arg(args, data, E.dim)
    res = complete_translations(E, box)
    report = {
        "status": res.status,
        "box": list(box),
        "J": _flat(res.translations.points) if res.status == "Complete" else _flat(res.placements),
        "witness": None if res.witness is None else list(res.witness),
        "conflict": None if res.conflict is None else list(res.conflict),
    }
    if res.status == "Complete":
        report["verified"] = verify_direct_sum(E, res.translations, box).is_tiling
        if args.svg and E.dim == 2:
            _write(args.svg, svg.tiling_svg(E.cells, res.translations.points, box))
    return report


def _region(data) -> DiscreteRegion:
    kind = data["kind"]
    try:
        if kind == "Quadrant":
            return DiscreteRegion.quadrant()
        if kind == "CornerCutStaircase":
            return DiscreteRegion.staircase(data["vertices"])
        return DiscreteRegion.trapezoid(data["short_base"], data["long_base"], data["height"])
    except (KeyError, ValueError) as err:
        raise ParseError(f"bad region: {err}", location="kind") from None


def cmd_tile_search(args):
    data = jsonio.load(args.input, "region")
    region = _region(data)
    mode = args.mode or data.get("mode", "square")
    rep = local_tiling_search(region, args.max_cells, args.R, mode=mode, parallel=args.parallel)
    if args.svg and rep.found:
        _write(args.svg, svg.triangle_tiling_svg(rep.tiling[0], rep.tiling[1], region.cells(args.R)))
    return {
        "region": region.to_dict(),
        "mode": mode,
        "R": args.R,
        "max_tile_cells": args.max_cells,
        "found": rep.found,
        "tile": None if not rep.found else [list(c) for c in rep.tiling[0]],
        "translations": None if not rep.found else [list(t) for t in rep.tiling[1]],
        "tiles_tried": rep.tiles_tried,
        "nodes": rep.nodes,
        "window_cells": rep.window_cells,
        "statement": rep.statement,
    }


# --- self-affine ------------------------------------------------------------------

def _system(path):
    data = jsonio.load(path, "system")
    return check_system(data["A"], data["D"])


def cmd_sat_expand(args):
    sysm = _system(args.input)
    dk = digit_expand(sysm, args.k, parallel=args.parallel)
    return {
        "k": args.k,
        "size": dk.size,
        "m_power_k": sysm.m ** args.k,
        "distinct": dk.distinct,
        "points": _flat(dk.multiset),
        "max_multiplicity": max(dk.multiset.values()),
    }


def cmd_sat_approx(args):
    sysm = _system(args.input)
    ap = approximate_tile(sysm, args.k, parallel=args.parallel)
    if args.svg and sysm.n == 2:
        _write(args.svg, svg.scatter_svg(ap.points, ap.bounding_box))
    return {
        "k": args.k,
        "count": len(ap.points),
        "bounding_box": {"lo": list(ap.bounding_box[0]), "hi": list(ap.bounding_box[1])},
        "points": _flat(ap.points),
    }


def cmd_sat_cubecheck(args):
    sysm = _system(args.input)
    if not args.E:
        raise ParseError("cubecheck needs --E with candidate cells", location="--E")
    cells = _points(jsonio.load(args.E, "cells")["cells"])
    v = is_cube_union(sysm, cells, method=args.method, resolution=args.resolution)
    return {"verdict": v.tag, "method": v.method, "certificate": v.certificate}


def cmd_sat_corner(args):
    sysm = _system(args.input)
    if args.vertex:
        vertex = _rat_list(args.vertex)
    else:
        vertex = min(approximate_tile(sysm, args.k).points)
    rep = corner_probe(sysm, args.k, vertex)
    return {
        "vertex": vertex,
        "verdict": rep.verdict,
        "estimated_generators": list(rep.estimated_generators),
        "resolution": rep.resolution,
    }


COMMANDS = {
    ("cone", "analyze"): cmd_cone_analyze,
    ("cone", "slice"): cmd_cone_slice,
    ("cone", "feasible2face"): cmd_cone_feasible,
    ("tile", "verify"): cmd_tile_verify,
    ("tile", "complete"): cmd_tile_complete,
    ("tile", "search"): cmd_tile_search,
    ("sat", "expand"): cmd_sat_expand,
    ("sat", "approx"): cmd_sat_approx,
    ("sat", "cubecheck"): cmd_sat_cubecheck,
    ("sat", "corner"): cmd_sat_corner,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message, location="argv")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="conetile", description="Cone tilings, slices and self-affine cube checks.")
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def common(sp, svg_flag=True):
        sp.add_argument("input", help="JSON input file")
        sp.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
        sp.add_argument("--parallel", action="store_true", help="use worker processes where supported")
        if svg_flag:
            sp.add_argument("--svg", help="write an SVG figure (planar outputs only)")

    cone = groups.add_parser("cone").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    common(cone.add_parser("analyze"), svg_flag=False)
    sp = cone.add_parser("slice")
    common(sp)
    sp.add_argument("--face", help="two generator indices, e.g. 0,1")
    sp.add_argument("--y", help="slice offset, comma-separated rationals")
    sp = cone.add_parser("feasible2face")
    common(sp)
    sp.add_argument("--strategy", choices=["auto", "case1", "case2"], default="auto")

    tile = groups.add_parser("tile").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name in ("verify", "complete"):
        sp = tile.add_parser(name)
        common(sp)
        sp.add_argument("--box", help="box sides a,b,... (one value means a cube)")
    sp = tile.add_parser("search")
    common(sp)
    sp.add_argument("--R", type=int, default=6)
    sp.add_argument("--max-cells", dest="max_cells", type=int, default=4)
    sp.add_argument("--mode", choices=["square", "half"])

    sat = groups.add_parser("sat").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name in ("expand", "approx", "cubecheck", "corner"):
        sp = sat.add_parser(name)
        common(sp, svg_flag=(name == "approx"))
        sp.add_argument("--k", type=int, default=4)
    sat_cc = sat.choices["cubecheck"]
    sat_cc.add_argument("--E", help="JSON file with candidate cells")
    sat_cc.add_argument("--method", choices=["auto", "multiset", "arrangement", "sampled"], default="auto")
    sat_cc.add_argument("--resolution", type=int, default=4)
    sat.choices["corner"].add_argument("--vertex", help="probe point; default is the lexicographically least point")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        kind = f"{args.group} {args.cmd}"
        report = COMMANDS[(args.group, args.cmd)](args)
        jsonio.validate(jsonio.to_json(report), jsonio.REPORT_SCHEMAS[kind], kind)
        text = jsonio.dumps(report)
    except ConeTileError as err:
        sys.stdout.write(jsonio.dumps({"error": err.code, "message": str(err), "details": _safe(err.details)}))
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def _safe(details):
    try:
        return jsonio.to_json(details)
    except TypeError:
        return {k: repr(v) for k, v in details.items()}


if __name__ == "__main__":
    raise SystemExit(main())
