import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conetile.errors import (
    BoxExceedsTruncation,
    DimensionMismatch,
    MissingAxisTranslation,
    NotGridAlignedAfterRescale,
    OriginMissingFromTile,
    SearchBudgetExceeded,
)
from conetile.oracles import oracle_box_tiling, oracle_direct_sum
from conetile.tiling import (
    CubeTile,
    DiscreteRegion,
    TranslationSet,
    complete_translations,
    local_tiling_search,
    normalize_and_rescale,
    radius_exceeds_diameter,
    restrict_to_face,
    tile_diameter_sq,
    verify_direct_sum,
)
from conetile.tiling.search import enumerate_tiles, fixed_half_tiles, fixed_polyominoes, search_tile

F = Fraction
L_TROMINO = CubeTile.of([(0, 0), (1, 0), (0, 1)])
STAIRCASE = DiscreteRegion.staircase([(0, 2), (1, 1), (2, 0)])


def test_verify_examples():
    assert verify_direct_sum(CubeTile.of([0]), TranslationSet.of(range(12)), 10).is_tiling
    assert verify_direct_sum(CubeTile.of([0, 2]), TranslationSet.of([0, 1, 4, 5, 8, 9]), 12).is_tiling
    rep = verify_direct_sum(CubeTile.of([0, 1, 3]), TranslationSet.of([0, 2]), 6)
    assert not rep.is_packing
    assert rep.multiplicity_violations == [((3,), 2)]


def test_verify_rejects_bad_inputs():
    with pytest.raises(BoxExceedsTruncation):
        verify_direct_sum(CubeTile.of([0]), TranslationSet.of(range(5), truncation_box=(5,)), 10)
    with pytest.raises(DimensionMismatch):
        verify_direct_sum(CubeTile.of([(0, 0)]), TranslationSet.of([0]), 4)
    with pytest.raises(OriginMissingFromTile):
        TranslationSet.of([1, 2])
    with pytest.raises(OriginMissingFromTile):
        complete_translations(CubeTile.of([1]), 5)


def test_complete_examples():
    J, status = complete_translations(CubeTile.of([0, 1, 2]), 30)
    assert status == "Complete" and J.sorted_points() == [(k,) for k in range(0, 30, 3)]
    J, status = complete_translations(CubeTile.of([0, 2]), 20)
    assert status == "Complete"
    assert J.sorted_points() == [(k,) for k in (0, 1, 4, 5, 8, 9, 12, 13, 16, 17)]
    assert verify_direct_sum(CubeTile.of([0, 2]), J, 20).is_tiling


def test_l_tromino_fails_with_forced_witness():
    # lexicographic order visits column x=0 first, so (1,1) is the first forced clash
    res = complete_translations(L_TROMINO, 6)
    assert res.status == "Fail"
    assert res.placements == ((0, 0), (0, 2), (0, 4))
    assert res.witness == (1, 1) and res.conflict == (1, 2)
    assert oracle_box_tiling(L_TROMINO.cells, (6, 6)) is None


def test_completion_is_deterministic():
    E = CubeTile.of([(0, 0), (1, 0), (0, 2), (1, 2)])
    assert complete_translations(E, 8) == complete_translations(E, 8)


def _small_tiles(dim):
    base = [c for c in itertools.product(range(3), repeat=dim) if any(c)]
    for r in range(3):
        for extra in itertools.combinations(base, r):
            yield CubeTile.of([(0,) * dim, *extra])


@pytest.mark.parametrize("dim", [1, 2])
def test_complete_results_cover_box_and_start_at_origin(dim):
    for E in _small_tiles(dim):
        res = complete_translations(E, 8)
        if res.status == "Complete":
            J = res.translations
            assert (0,) * dim in J.points
            assert all(0 <= x < 8 for p in J.points for x in p)
            assert verify_direct_sum(E, J, 8).is_tiling
            assert oracle_direct_sum(E.cells, J.points, (8,) * dim)


def test_complete_tiling_is_unique_under_perturbation():
    # dropping or adding a translation never keeps a tiling, so the greedy answer is the only one
    rng = random.Random(2)
    for E in _small_tiles(2):
        res = complete_translations(E, 8)
        if res.status != "Complete":
            continue
        pts = res.translations.sorted_points()
        drop = rng.choice([p for p in pts if any(p)] or pts)
        if any(drop):
            assert not verify_direct_sum(E, TranslationSet.of([p for p in pts if p != drop]), 8).is_tiling
        extra = (rng.randrange(8), rng.randrange(8))
        if extra not in pts:
            assert not verify_direct_sum(E, TranslationSet.of(pts + [extra]), 8).is_tiling
        assert oracle_box_tiling(E.cells, (8, 8)) == set(pts)


def test_restrict_examples():
    J = TranslationSet.of(list(itertools.product(range(6), repeat=2)), truncation_box=(6, 6))
    E1, J1 = restrict_to_face(CubeTile.of([(0, 0)]), J, [0])
    assert E1.cells == {(0,)} and J1.sorted_points() == [(k,) for k in range(6)]
    sq = CubeTile.of([(0, 0), (1, 0), (0, 1), (1, 1)])
    J, status = complete_translations(sq, 8)
    E1, J1 = restrict_to_face(sq, J, [0])
    assert E1.cells == {(0,), (1,)} and J1.sorted_points() == [(0,), (2,), (4,), (6,)]
    assert verify_direct_sum(E1, J1, 8).is_tiling


def test_restrict_greedy_example():
    E = CubeTile.of([(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (3, 0)])
    assert complete_translations(E, 12).status == "Fail"
    E = CubeTile.of([(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)])
    J, status = complete_translations(E, 12)
    assert status == "Complete"
    E2, J2 = restrict_to_face(E, J, [1])
    assert verify_direct_sum(E2, J2, 12).is_tiling


def test_restrict_rejects_bad_axes():
    with pytest.raises(ValueError):
        restrict_to_face(CubeTile.of([(0, 0)]), TranslationSet.of([(0, 0)]), [2])


def test_diameter():
    assert tile_diameter_sq(CubeTile.of([(0, 0)])) == 2
    assert tile_diameter_sq(CubeTile.of([0, 2])) == 9
    assert radius_exceeds_diameter(CubeTile.of([0, 2]), 4)
    assert not radius_exceeds_diameter(CubeTile.of([0, 2]), 3)


# --- rescaling ------------------------------------------------------------------

def test_rescale_examples():
    r = normalize_and_rescale([((0,), (F(1, 2),))], [(F(k, 2),) for k in range(10)], box=(5,))
    assert r.scaling == (2,) and r.tile.cells == {(0,)}
    assert r.translations.sorted_points() == [(k,) for k in range(10)]
    assert r.translations.truncation_box == (10,)
    r = normalize_and_rescale([((0,), (F(1, 2),)), ((1,), (F(3, 2),))], [0, F(1, 2), 2, F(5, 2), 4, F(9, 2)])
    assert r.U == ((2,),) and r.tile.cells == {(0,), (2,)}
    assert r.translations.sorted_points() == [(0,), (1,), (4,), (5,), (8,), (9,)]
    with pytest.raises(NotGridAlignedAfterRescale):
        normalize_and_rescale([((0,), (F(1, 3),))], [0, F(1, 2)])


def test_rescale_errors():
    with pytest.raises(MissingAxisTranslation):
        normalize_and_rescale([((0, 0), (1, 1))], [(0, 0), (1, 1)])
    with pytest.raises(OriginMissingFromTile):
        normalize_and_rescale([((0,), (1,))], [1])
    with pytest.raises(NotGridAlignedAfterRescale) as info:
        normalize_and_rescale([((0,), (1,))], [0, 1, F(3, 2)])
    assert info.value.details["image"] == (F(3, 2),)


def _runs(cells):
    """Merge horizontal runs of unit cells into boxes (lo, hi)."""
    rows = {}
    for c in sorted(cells):
        rows.setdefault(c[1:], []).append(c[0])
    out = []
    for rest, xs in rows.items():
        start = prev = xs[0]
        for x in xs[1:] + [None]:
            if x is not None and x == prev + 1:
                prev = x
                continue
            out.append(((start, *rest), (prev + 1, *(r + 1 for r in rest))))
            if x is not None:
                start = prev = x
    return out


@given(st.sets(st.integers(1, 5), max_size=2), st.fractions(min_value=F(1, 7), max_value=5, max_denominator=7))
def test_rescale_recovers_scaled_integer_tiling(extra, c):
    E = CubeTile.of([0, *extra])
    res = complete_translations(E, 16)
    if res.status != "Complete":
        return
    J = res.translations.sorted_points()
    if (1,) not in J:
        return
    boxes = [((c * lo[0],), (c * hi[0],)) for lo, hi in _runs(E.cells)]
    r = normalize_and_rescale(boxes, [(c * p[0],) for p in J])
    assert r.scaling == (1 / c,)
    assert r.tile.cells == E.cells and r.translations.points == set(J)


# --- search -----------------------------------------------------------------------

def test_tile_enumeration_counts():
    # fixed polyominoes 1,2,6,19,63 and fixed polyiamonds 2,3,6,14,36,94, summed
    assert [len(fixed_polyominoes(k)) for k in range(1, 6)] == [1, 3, 9, 28, 91]
    assert [len(fixed_half_tiles(k)) for k in range(1, 7)] == [2, 5, 11, 25, 61, 155]
    assert len(enumerate_tiles("square", 3)) == 9
    with pytest.raises(ValueError):
        enumerate_tiles("hex", 2)


def test_search_examples():
    rep = local_tiling_search(DiscreteRegion.quadrant(), 1, 3)
    assert rep.found and len(rep.tiling[0]) == 2
    rep = local_tiling_search(STAIRCASE, 4, 12)
    assert not rep.found and rep.tiles_tried == 28
    assert "not a proof" in rep.statement
    rep = local_tiling_search(DiscreteRegion.trapezoid(3, 5, 1), 6, 10)
    assert not rep.found


def test_search_dominoes_tile_the_quadrant():
    for domino in ([(0, 0), (1, 0)], [(0, 0), (0, 1)]):
        rep = local_tiling_search(DiscreteRegion.quadrant(), 2, 6, tiles=[
            tuple(sorted((i, j, h) for i, j in domino for h in (0, 1)))])
        assert rep.found


def test_search_budget():
    tile = enumerate_tiles("square", 1)[0]
    with pytest.raises(SearchBudgetExceeded):
        search_tile(DiscreteRegion.quadrant(), tile, 30, max_nodes=1)


def test_region_validation():
    with pytest.raises(ValueError):
        DiscreteRegion.staircase([(1, 2), (2, 0)])
    with pytest.raises(ValueError):
        DiscreteRegion.staircase([(0, 2), (2, 1), (3, 0)])
    with pytest.raises(ValueError):
        DiscreteRegion.trapezoid(5, 3, 1)
    assert not STAIRCASE.contains((0, 0, 0))
    assert STAIRCASE.contains((1, 1, 0))
    assert DiscreteRegion.trapezoid(3, 5, 1).to_dict()["kind"] == "Trapezoid"


def test_search_parallel_matches_serial():
    serial = local_tiling_search(STAIRCASE, 3, 8)
    par = local_tiling_search(STAIRCASE, 3, 8, parallel=True)
    assert (serial.found, serial.tiles_tried, serial.nodes) == (par.found, par.tiles_tried, par.nodes)
