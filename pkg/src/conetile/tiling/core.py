"""Cube tiles ``E + [0,1]^n`` and translation sets on the nonnegative lattice.

Every verdict here is relative to a box ``[0, b_1) x ... x [0, b_n)``;
lattice points stand for the unit cubes anchored at them, so measure
disjointness becomes a multiplicity count.
"""
from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from ..errors import BoxExceedsTruncation, ConeTileError, DimensionMismatch, OriginMissingFromTile

Cell = tuple  # tuple[int, ...]


def _as_cells(points: Iterable[Sequence]) -> frozenset:
    out = set()
    for p in points:
        if isinstance(p, int):
            p = (p,)
        cell = tuple(p)
        if any(isinstance(x, bool) or not isinstance(x, int) for x in cell):
            raise TypeError(f"lattice point {cell!r} must have integer coordinates")
        if any(x < 0 for x in cell):
            raise ConeTileError(f"lattice point {cell} leaves the nonnegative orthant")
        out.add(cell)
    return frozenset(out)


def _dim_of(cells: frozenset) -> int:
    dims = {len(c) for c in cells}
    if len(dims) != 1:
        raise DimensionMismatch(f"mixed dimensions {sorted(dims)}")
    return dims.pop()


def as_box(box, dim: Optional[int] = None) -> tuple:
    box = (box,) * (dim or 1) if isinstance(box, int) else tuple(int(b) for b in box)
    if dim is not None and len(box) != dim:
        raise DimensionMismatch(f"box has {len(box)} sides, expected {dim}")
    if any(b < 0 for b in box):
        raise ValueError("box sides must be nonnegative")
    return box


def box_points(box: Sequence[int]):
    return itertools.product(*(range(b) for b in box))


@dataclass(frozen=True)
class CubeTile:
    cells: frozenset
    dim: int

    @classmethod
    def of(cls, cells: Iterable) -> "CubeTile":
        cs = _as_cells(cells)
        if not cs:
            raise ValueError("a tile needs at least one cell")
        return cls(cs, _dim_of(cs))

    @property
    def has_origin(self) -> bool:
        return (0,) * self.dim in self.cells

    def __len__(self):
        return len(self.cells)

    def sorted_cells(self) -> list:
        return sorted(self.cells)


@dataclass(frozen=True)
class TranslationSet:
    """Finite translation set; complete inside ``truncation_box`` when one is given.

    ``truncation_box=None`` means the set is exactly the listed points.
    Distinct lattice points are automatically at 1-norm distance >= 1.
    """

    points: frozenset
    dim: int
    truncation_box: Optional[tuple] = None

    @classmethod
    def of(cls, points: Iterable, truncation_box=None) -> "TranslationSet":
        ps = _as_cells(points)
        if not ps:
            raise ValueError("a translation set needs at least one point")
        dim = _dim_of(ps)
        if (0,) * dim not in ps:
            raise OriginMissingFromTile("translation sets are normalized to contain the origin")
        tb = None if truncation_box is None else as_box(truncation_box, dim)
        return cls(ps, dim, tb)

    def __len__(self):
        return len(self.points)

    def sorted_points(self) -> list:
        return sorted(self.points)


@dataclass(frozen=True)
class CoverageReport:
    box: tuple
    is_packing: bool
    covered_box: bool
    multiplicity_violations: list = field(default_factory=list)
    uncovered: list = field(default_factory=list)

    @property
    def is_tiling(self) -> bool:
        return self.is_packing and self.covered_box


def _count_chunk(args):
    cells, points, box = args
    counts = Counter()
    for t in points:
        for e in cells:
            p = tuple(a + b for a, b in zip(t, e))
            if all(x < b for x, b in zip(p, box)):
                counts[p] += 1
    return counts


def verify_direct_sum(E: CubeTile, J: TranslationSet, box, parallel: bool = False) -> CoverageReport:
    """Multiplicities of ``E + J`` on every lattice point of ``box``.

    Only translations inside the box can reach it (everything is
    nonnegative), so the verdict is sound as long as ``J`` is complete
    there; a box reaching past ``J.truncation_box`` is rejected.
    """
    if E.dim != J.dim:
        raise DimensionMismatch(f"tile has dimension {E.dim}, translations {J.dim}")
    box = as_box(box, E.dim)
    if J.truncation_box is not None and any(b > t for b, t in zip(box, J.truncation_box)):
        raise BoxExceedsTruncation(
            f"box {box} exceeds the truncation box {J.truncation_box}",
            box=box, truncation_box=J.truncation_box,
        )
    cells = sorted(E.cells)
    points = sorted(J.points)
    if parallel and len(points) > 1:
        n = 4
        chunks = [(cells, points[k::n], box) for k in range(n)]
        counts = Counter()
        with ProcessPoolExecutor() as pool:
            for c in pool.map(_count_chunk, chunks):
                counts.update(c)
    else:
        counts = _count_chunk((cells, points, box))
    violations = sorted((p, c) for p, c in counts.items() if c > 1)
    uncovered = [p for p in box_points(box) if counts[p] == 0]
    return CoverageReport(box, not violations, not uncovered, violations, uncovered)


@dataclass(frozen=True)
class CompletionResult:
    translations: TranslationSet
    status: str  # "Complete" or "Fail"
    witness: Optional[Cell] = None
    conflict: Optional[Cell] = None
    placements: tuple = ()

    def __iter__(self):
        yield self.translations
        yield self.status


def complete_translations(E: CubeTile, box) -> CompletionResult:
    """Greedy translation set for ``E`` on ``box``.

    The lexicographically first uncovered box point is always minimal in
    the coordinatewise order among uncovered points, and the only
    translate that can still cover it is the one anchored there (0 is in
    E and everything else is nonnegative). One lexicographic pass
    therefore realizes the forced choice; a placement meeting an already
    covered point, inside or outside the box, ends the run with ``Fail``.
    """
    if not E.has_origin:
        raise OriginMissingFromTile("the tile must contain the origin cell")
    box = as_box(box, E.dim)
    cells = sorted(E.cells)
    covered = set()
    placed = []
    for p in box_points(box):
        if p in covered:
            continue
        image = [tuple(a + b for a, b in zip(p, e)) for e in cells]
        clash = next((q for q in image if q in covered), None)
        if clash is not None:
            J = TranslationSet.of(placed or [(0,) * E.dim])
            return CompletionResult(J, "Fail", p, clash, tuple(placed))
        covered.update(image)
        placed.append(p)
    J = TranslationSet.of(placed, truncation_box=box)
    return CompletionResult(J, "Complete", None, None, tuple(placed))


def restrict_to_face(E: CubeTile, J: TranslationSet, axes: Sequence[int]):
    """Cells and translations on the coordinate face spanned by ``axes`` (0-based)."""
    axes = sorted(set(axes))
    if not axes or any(not 0 <= a < E.dim for a in axes):
        raise ValueError(f"axes {axes} invalid for dimension {E.dim}")
    off = [k for k in range(E.dim) if k not in axes]

    def keep(points):
        return [tuple(p[a] for a in axes) for p in points if all(p[k] == 0 for k in off)]

    e2 = keep(E.cells)
    if not e2:
        raise OriginMissingFromTile("no tile cell lies on the face")
    tb = None if J.truncation_box is None else tuple(J.truncation_box[a] for a in axes)
    return CubeTile.of(e2), TranslationSet.of(keep(J.points), truncation_box=tb)


def tile_diameter_sq(E: CubeTile) -> int:
    """Squared Euclidean diameter of ``E + [0,1]^n``."""
    cells = sorted(E.cells)
    return max(sum((abs(x - y) + 1) ** 2 for x, y in zip(a, b)) for a in cells for b in cells)


def radius_exceeds_diameter(E: CubeTile, R) -> bool:
    """``R > diam(E + [0,1]^n)``, compared on squares."""
    return R > 0 and R * R > tile_diameter_sq(E)
