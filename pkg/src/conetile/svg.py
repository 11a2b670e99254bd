"""Deterministic SVG figures: slices, planar tilings, point clouds.

Coordinates are printed with four decimals and nothing time-dependent is
emitted, so identical inputs give byte-identical files.
"""
from __future__ import annotations

from fractions import Fraction

SIZE = 400
PAD = 20


def _fmt(x) -> str:
    return f"{float(x):.4f}"


class _Canvas:
    def __init__(self, lo, hi):
        w = max(hi[0] - lo[0], Fraction(1))
        h = max(hi[1] - lo[1], Fraction(1))
        self.lo = lo
        self.scale = Fraction(SIZE - 2 * PAD) / max(w, h)
        self.height = h
        self.parts = []

    def xy(self, p):
        x = PAD + (p[0] - self.lo[0]) * self.scale
        y = PAD + (self.height - (p[1] - self.lo[1])) * self.scale  # y axis points up
        return _fmt(x), _fmt(y)

    def add(self, s):
        self.parts.append(s)

    def render(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
                f'viewBox="0 0 {SIZE} {SIZE}">')
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *self.parts, "</svg>"]) + "\n"


def slice_svg(vertices, ray_dirs) -> str:
    """Unbounded slice: shaded region, boundary, dashed rays cut at 3x the vertex box."""
    vs = [tuple(Fraction(x) for x in v) for v in vertices]
    lo = (min(v[0] for v in vs), min(v[1] for v in vs))
    hi = (max(v[0] for v in vs), max(v[1] for v in vs))
    span = 3 * max(hi[0] - lo[0], hi[1] - lo[1], Fraction(1))
    (bs, bt), (as_, at) = ray_dirs
    b_end = (vs[0][0] + span * bs, vs[0][1] + span * bt)
    a_end = (vs[-1][0] + span * as_, vs[-1][1] + span * at)
    pts = [b_end, *vs, a_end]
    c = _Canvas((min(p[0] for p in pts), min(p[1] for p in pts)), (max(p[0] for p in pts), max(p[1] for p in pts)))
    poly = " ".join(",".join(c.xy(p)) for p in pts)
    c.add(f'<polygon points="{poly}" fill="#cfe3f7" stroke="none"/>')
    if len(vs) > 1:
        path = " ".join(",".join(c.xy(p)) for p in vs)
        c.add(f'<polyline points="{path}" fill="none" stroke="black" stroke-width="2"/>')
    for start, end in ((vs[0], b_end), (vs[-1], a_end)):
        (x1, y1), (x2, y2) = c.xy(start), c.xy(end)
        c.add(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-dasharray="6,4"/>')
    for v in vs:
        x, y = c.xy(v)
        c.add(f'<circle cx="{x}" cy="{y}" r="3" fill="red"/>')
    return c.render()


_PALETTE = ["#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45"]


def tiling_svg(cells, translations, box) -> str:
    """Unit squares of each translate inside ``box``, one colour per translate."""
    c = _Canvas((Fraction(0), Fraction(0)), (Fraction(box[0]), Fraction(box[1])))
    for k, t in enumerate(sorted(translations)):
        colour = _PALETTE[k % len(_PALETTE)]
        for e in sorted(cells):
            x, y = t[0] + e[0], t[1] + e[1]
            if x < box[0] and y < box[1]:
                x0, y0 = c.xy((x, y + 1))
                side = _fmt(c.scale)
                c.add(f'<rect x="{x0}" y="{y0}" width="{side}" height="{side}" fill="{colour}" '
                      f'stroke="black" stroke-width="0.5"/>')
    return c.render()


def triangle_tiling_svg(tile, translations, region_cells) -> str:
    """Half-cell tiling: region in grey, each translate of the tile coloured."""
    def corners(cell):
        i, j, h = cell
        if h == 0:
            return [(i, j), (i + 1, j), (i, j + 1)]
        return [(i + 1, j), (i + 1, j + 1), (i, j + 1)]

    allpts = [p for cell in region_cells for p in corners(cell)] or [(0, 0)]
    lo = (min(p[0] for p in allpts), min(p[1] for p in allpts))
    hi = (max(p[0] for p in allpts), max(p[1] for p in allpts))
    c = _Canvas(lo, hi)
    for cell in region_cells:
        pts = " ".join(",".join(c.xy(p)) for p in corners(cell))
        c.add(f'<polygon points="{pts}" fill="#eeeeee" stroke="#999999" stroke-width="0.3"/>')
    for k, t in enumerate(translations):
        colour = _PALETTE[k % len(_PALETTE)]
        for a, b, h in tile:
            pts = " ".join(",".join(c.xy(p)) for p in corners((a + t[0], b + t[1], h)))
            c.add(f'<polygon points="{pts}" fill="{colour}" fill-opacity="0.6" stroke="black" stroke-width="0.3"/>')
    return c.render()


def scatter_svg(points, box) -> str:
    lo, hi = box
    c = _Canvas(lo, hi)
    for p in sorted(points):
        x, y = c.xy(p)
        c.add(f'<circle cx="{x}" cy="{y}" r="1.2" fill="black"/>')
    return c.render()
