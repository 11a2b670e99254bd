"""Bridge from rational box-union tilings to integer cube tilings."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .. import exact
from ..errors import DimensionMismatch, MissingAxisTranslation, NotGridAlignedAfterRescale, OriginMissingFromTile
from .core import CubeTile, TranslationSet


@dataclass(frozen=True)
class RescaledInstance:
    scaling: tuple  # diagonal of U
    tile: CubeTile
    translations: TranslationSet

    @property
    def U(self):
        n = len(self.scaling)
        return tuple(tuple(self.scaling[i] if i == j else Fraction(0) for j in range(n)) for i in range(n))


def _point(v):
    # 1-D points may be given as bare scalars
    return exact.as_vector(v) if isinstance(v, (list, tuple)) else (exact.as_rational(v),)


def _parse_boxes(boxes):
    out = []
    for lo, hi in boxes:
        lo, hi = _point(lo), _point(hi)
        if len(lo) != len(hi):
            raise DimensionMismatch("box corners differ in dimension")
        if any(a >= b for a, b in zip(lo, hi)):
            raise ValueError(f"degenerate box {lo}..{hi}")
        out.append((lo, hi))
    if not out:
        raise ValueError("the tile needs at least one box")
    exact.check_same_dim([lo for lo, _ in out])
    return out


def _inside(p, box) -> bool:
    lo, hi = box
    return all(a <= x <= b for x, a, b in zip(p, lo, hi))


def _union_cells(boxes):
    """Covered unit cells and the exact measure of the union.

    The grid is refined by every box coordinate and every integer in the
    range, so each elementary cell sits inside one unit cube and is either
    fully inside the union or meets it in measure zero.
    """
    n = len(boxes[0][0])
    axes = []
    for k in range(n):
        lo = min(b[0][k] for b in boxes)
        hi = max(b[1][k] for b in boxes)
        cuts = {b[0][k] for b in boxes} | {b[1][k] for b in boxes}
        cuts |= {Fraction(z) for z in range(math.floor(lo), math.ceil(hi) + 1)}
        axes.append(sorted(cuts))
    measure = Fraction(0)
    per_cube = {}
    for idx in itertools.product(*(range(len(a) - 1) for a in axes)):
        lo = [axes[k][i] for k, i in enumerate(idx)]
        hi = [axes[k][i + 1] for k, i in enumerate(idx)]
        mid = tuple((a + b) / 2 for a, b in zip(lo, hi))
        if not any(_inside(mid, b) for b in boxes):
            continue
        vol = math.prod(b - a for a, b in zip(lo, hi))
        measure += vol
        cube = tuple(math.floor(a) for a in lo)
        per_cube[cube] = per_cube.get(cube, 0) + vol
    full = {c for c, v in per_cube.items() if v == 1}
    return full, measure


def normalize_and_rescale(boxes: Sequence, J_raw: Sequence, box: Optional[Sequence] = None) -> RescaledInstance:
    """Scale a rational box-union tiling so the tile becomes ``E + [0,1]^n``.

    ``u_j`` is the reciprocal of the smallest positive translation on axis
    ``j``. ``box`` (optional, in input units) is the region where ``J_raw``
    is complete and becomes the truncation box of the result. A failure to
    land on the integer grid is raised with the scaling and the offending
    data as certificate.
    """
    boxes = _parse_boxes(boxes)
    n = len(boxes[0][0])
    J = [_point(t) for t in J_raw]
    exact.check_same_dim(J, n)
    origin = exact.zero_vector(n)
    if origin not in J:
        raise OriginMissingFromTile("the translation set must contain the origin")
    if not any(_inside(origin, b) for b in boxes):
        raise OriginMissingFromTile("the tile must contain the origin")
    scaling = []
    for j in range(n):
        on_axis = [t[j] for t in J if t[j] > 0 and all(t[k] == 0 for k in range(n) if k != j)]
        if not on_axis:
            raise MissingAxisTranslation(f"no translation on axis {j}", axis=j)
        scaling.append(1 / min(on_axis))
    scaling = tuple(scaling)

    def apply(v):
        return tuple(u * x for u, x in zip(scaling, v))

    scaled_J = [apply(t) for t in J]
    for raw, t in zip(J, scaled_J):
        if any(x.denominator != 1 for x in t):
            raise NotGridAlignedAfterRescale(
                f"translation {raw} maps to non-integer {t}",
                scaling=scaling, translation=raw, image=t,
            )
        if any(x < 0 for x in t):
            raise NotGridAlignedAfterRescale(f"translation {raw} leaves the orthant", scaling=scaling, translation=raw)
    scaled_boxes = [(apply(lo), apply(hi)) for lo, hi in boxes]
    cells, measure = _union_cells(scaled_boxes)
    if measure != len(cells):
        raise NotGridAlignedAfterRescale(
            f"scaled tile has measure {measure} but only {len(cells)} full unit cubes",
            scaling=scaling, measure=measure, full_cubes=len(cells),
        )
    if any(x < 0 for c in cells for x in c):
        raise NotGridAlignedAfterRescale("scaled tile leaves the orthant", scaling=scaling)
    tb = None
    if box is not None:
        tb = tuple(math.floor(x) for x in apply(_point(box)))
    tile = CubeTile.of(cells)
    trans = TranslationSet.of([tuple(int(x) for x in t) for t in scaled_J], truncation_box=tb)
    return RescaledInstance(scaling, tile, trans)
