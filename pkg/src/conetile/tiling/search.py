"""Exhaustive local translation-tiling search on planar corner regions.

Regions are drawn on the half-cell grid: each unit square ``[i,i+1]x[j,j+1]``
is cut along its anti-diagonal into a lower triangle ``(i, j, 0)`` and an
upper triangle ``(i, j, 1)``. Horizontal, vertical and anti-diagonal
boundaries are then represented exactly, so a corner cut at 45 degrees is
not blurred into a staircase of squares.

Tiles come in two kinds. ``"square"`` tiles are fixed polyominoes, each
square contributing both of its triangles. ``"half"`` tiles are connected
sets of triangles. Translations are integer vectors in both cases.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..errors import SearchBudgetExceeded

Tri = tuple  # (i, j, h)


def centroid(c: Tri) -> tuple:
    i, j, h = c
    return (Fraction(3 * i + 1 + h, 3), Fraction(3 * j + 1 + h, 3))


def tri_neighbors(c: Tri) -> list:
    i, j, h = c
    if h == 0:
        return [(i, j, 1), (i - 1, j, 1), (i, j - 1, 1)]
    return [(i, j, 0), (i + 1, j, 0), (i, j + 1, 0)]


def _inside_polygon(p, poly) -> bool:
    """Even-odd test; callers guarantee ``p`` is never on an edge."""
    x, y = p
    inside = False
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        if (y1 > y) != (y2 > y):
            xs = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < xs:
                inside = not inside
    return inside


@dataclass(frozen=True)
class DiscreteRegion:
    """A planar region on the half-cell grid.

    ``kind`` is ``"Quadrant"``, ``"CornerCutStaircase"`` (``vertices`` is
    the cut chain from the y-axis down to the x-axis) or ``"Trapezoid"``
    (``params = (short_base, long_base, height)``; rows ``0..height`` of
    squares widening symmetrically, translations horizontal and at least two
    of them).
    """

    kind: str
    vertices: tuple = ()
    params: tuple = ()

    @classmethod
    def quadrant(cls) -> "DiscreteRegion":
        return cls("Quadrant")

    @classmethod
    def staircase(cls, vertices: Sequence) -> "DiscreteRegion":
        vs = tuple((int(x), int(y)) for x, y in vertices)
        if len(vs) < 2 or vs[0][0] != 0 or vs[-1][1] != 0:
            raise ValueError("the cut chain must run from the y-axis to the x-axis")
        for (x1, y1), (x2, y2) in zip(vs, vs[1:]):
            dx, dy = x2 - x1, y2 - y1
            if not (dx >= 0 and dy <= 0 and (dx, dy) != (0, 0) and (dx == 0 or dy == 0 or dx == -dy)):
                raise ValueError(f"segment {(x1, y1)}->{(x2, y2)} is not horizontal, vertical or anti-diagonal")
        if vs[0][1] <= 0 or vs[-1][0] <= 0:
            raise ValueError("the cut must remove a neighbourhood of the origin")
        return cls("CornerCutStaircase", vs)

    @classmethod
    def trapezoid(cls, short_base: int, long_base: int, height: int) -> "DiscreteRegion":
        if height < 1 or short_base < 1 or long_base <= short_base:
            raise ValueError("need 1 <= short_base < long_base and height >= 1")
        if (long_base - short_base) % (2 * height):
            raise ValueError("bases must differ by a multiple of 2*height for symmetric rows")
        return cls("Trapezoid", (), (short_base, long_base, height))

    # -- geometry ------------------------------------------------------------
    @property
    def corner(self) -> tuple:
        if self.kind == "CornerCutStaircase":
            return tuple(Fraction(v) for v in self.vertices[0])
        return (Fraction(0), Fraction(0))

    @property
    def bounded(self) -> bool:
        return self.kind == "Trapezoid"

    @property
    def min_translations(self) -> int:
        return 2 if self.kind == "Trapezoid" else 1

    def translation_ok(self, t) -> bool:
        return t[1] == 0 if self.kind == "Trapezoid" else True

    def _row_span(self, r):
        s, l, h = self.params
        g = r * (l - s) // (2 * h)
        return -g, s + g

    def contains_point(self, p) -> bool:
        x, y = p
        if self.kind == "Trapezoid":
            if not 0 <= y < self.params[2] + 1:
                return False
            lo, hi = self._row_span(int(y // 1))
            return lo <= x < hi
        if x < 0 or y < 0:
            return False
        if self.kind == "Quadrant":
            return True
        cut = [(0, 0)] + [v for v in reversed(self.vertices)]
        return not _inside_polygon(p, cut)

    def contains(self, c: Tri) -> bool:
        return self.contains_point(centroid(c))

    def cells(self, R) -> list:
        """Region cells whose centroid lies within distance ``R`` of the corner.

        Sorted by distance, then lexicographically. A bounded region returns
        all of its cells regardless of ``R``.
        """
        cx, cy = self.corner
        if self.bounded:
            s, l, h = self.params
            cand = [(i, j, k) for j in range(h + 1) for i in range(self._row_span(j)[0], self._row_span(j)[1]) for k in (0, 1)]
        else:
            r = int(R) + 2
            cand = [(i, j, k) for i in range(int(cx) - r, int(cx) + r + 1)
                    for j in range(int(cy) - r, int(cy) + r + 1) for k in (0, 1)]
        out = []
        for c in cand:
            if not self.contains(c):
                continue
            px, py = centroid(c)
            d2 = (px - cx) ** 2 + (py - cy) ** 2
            if self.bounded or d2 <= R * R:
                out.append((d2, c))
        return [c for _, c in sorted(out)]

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.vertices:
            d["vertices"] = [list(v) for v in self.vertices]
        if self.params:
            d["short_base"], d["long_base"], d["height"] = self.params
        return d


# --- tile enumeration -----------------------------------------------------------

def _canon_squares(cells) -> tuple:
    mi = min(c[0] for c in cells)
    mj = min(c[1] for c in cells)
    return tuple(sorted((i - mi, j - mj) for i, j in cells))


def _canon_tris(cells) -> tuple:
    mi = min(c[0] for c in cells)
    mj = min(c[1] for c in cells)
    return tuple(sorted((i - mi, j - mj, h) for i, j, h in cells))


def _grow(seeds, neighbors, canon, max_cells):
    levels = [set(seeds)]
    for _ in range(max_cells - 1):
        nxt = set()
        for shape in levels[-1]:
            have = set(shape)
            for c in shape:
                for nb in neighbors(c):
                    if nb not in have:
                        nxt.add(canon(have | {nb}))
        levels.append(nxt)
    out = []
    for lvl in levels:
        out.extend(sorted(lvl))
    return out


def fixed_polyominoes(max_cells: int) -> list:
    """Connected square sets up to translation (no rotations or reflections)."""
    def nbrs(c):
        i, j = c
        return [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)]
    return _grow([((0, 0),)], nbrs, _canon_squares, max_cells)


def fixed_half_tiles(max_cells: int) -> list:
    """Connected triangle sets of the half-cell grid up to integer translation."""
    return _grow([((0, 0, 0),), ((0, 0, 1),)], tri_neighbors, _canon_tris, max_cells)


def squares_to_tris(shape) -> tuple:
    return tuple(sorted((i, j, h) for i, j in shape for h in (0, 1)))


def enumerate_tiles(mode: str, max_cells: int) -> list:
    if mode == "square":
        return [squares_to_tris(s) for s in fixed_polyominoes(max_cells)]
    if mode == "half":
        return fixed_half_tiles(max_cells)
    raise ValueError(f"unknown tile mode {mode!r}")


# --- search -----------------------------------------------------------------------

@dataclass(frozen=True)
class TileAttempt:
    tile: tuple
    translations: Optional[tuple]
    nodes: int


def search_tile(region: DiscreteRegion, tile: Sequence[Tri], R, max_nodes: int = 200_000) -> TileAttempt:
    """Backtracking cover of ``region.cells(R)`` by translates of ``tile``.

    Translates must lie in the region and be pairwise disjoint. The first
    uncovered cell (closest to the corner) is always the branching cell.
    """
    tile = tuple(tile)
    target = region.cells(R)
    by_type = {0: [c for c in tile if c[2] == 0], 1: [c for c in tile if c[2] == 1]}
    occupied = set()
    chosen = []
    nodes = 0

    def place_options(c):
        for tc in by_type[c[2]]:
            t = (c[0] - tc[0], c[1] - tc[1])
            if not region.translation_ok(t):
                continue
            img = [(a + t[0], b + t[1], h) for a, b, h in tile]
            if all(region.contains(x) and x not in occupied for x in img):
                yield t, img

    def rec(start):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise SearchBudgetExceeded(f"more than {max_nodes} search nodes", cap=max_nodes, tile=tile)
        k = start
        while k < len(target) and target[k] in occupied:
            k += 1
        if k == len(target):
            return len(chosen) >= region.min_translations
        for t, img in place_options(target[k]):
            occupied.update(img)
            chosen.append(t)
            if rec(k + 1):
                return True
            chosen.pop()
            occupied.difference_update(img)
        return False

    found = rec(0)
    return TileAttempt(tile, tuple(chosen) if found else None, nodes)


def _attempt_job(args):
    return search_tile(*args)


@dataclass(frozen=True)
class SearchReport:
    region: DiscreteRegion
    mode: str
    max_tile_cells: int
    R: int
    tiles_tried: int
    nodes: int
    tiling: Optional[tuple] = None  # (tile, translations)
    window_cells: int = 0
    attempts: tuple = field(default=(), repr=False)

    @property
    def found(self) -> bool:
        return self.tiling is not None

    @property
    def statement(self) -> str:
        if self.found:
            return "local tiling found"
        return "no local tiling found; consistent with corner-cut regions admitting no tiling (finite evidence, not a proof)"


def local_tiling_search(region: DiscreteRegion, max_tile_cells: int, R: int, mode: str = "square",
                        max_nodes: int = 200_000, parallel: bool = False, tiles=None) -> SearchReport:
    """Try every tile of the given kind with at most ``max_tile_cells`` cells.

    Returns the first tile (in enumeration order) whose translates cover the
    window, or a report with ``tiling=None``. ``max_nodes`` caps the
    backtracking per tile.
    """
    if tiles is None:
        tiles = enumerate_tiles(mode, max_tile_cells)
    if region.bounded:
        # a finite region is covered exactly, so the tile size must divide it
        total = len(region.cells(R))
        tiles = [t for t in tiles if total % len(t) == 0 and len(t) * region.min_translations <= total]
    jobs = [(region, t, R, max_nodes) for t in tiles]
    if parallel:
        with ProcessPoolExecutor() as pool:
            attempts = list(pool.map(_attempt_job, jobs))
    else:
        attempts = []
        for j in jobs:
            a = _attempt_job(j)
            attempts.append(a)
            if a.translations is not None:
                break
    hit = next((a for a in attempts if a.translations is not None), None)
    return SearchReport(
        region=region, mode=mode, max_tile_cells=max_tile_cells, R=R,
        tiles_tried=len(attempts), nodes=sum(a.nodes for a in attempts),
        tiling=(hit.tile, hit.translations) if hit else None,
        window_cells=len(region.cells(R)), attempts=tuple(attempts),
    )
