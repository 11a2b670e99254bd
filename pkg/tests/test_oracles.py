from fractions import Fraction

import pytest

from conetile.cone import Cone
from conetile.errors import CostGuardExceeded
from conetile.oracles import (
    fourier_motzkin,
    oracle_box_tiling,
    oracle_direct_sum,
    oracle_facets,
    oracle_frame,
    oracle_h_representation,
    oracle_membership,
    oracle_slice_class,
)

F = Fraction
E3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_fourier_motzkin_projects_a_triangle():
    # x >= 0, y >= 0, x + y <= 1; eliminating y leaves 0 <= x <= 1
    ineqs = [([F(1), F(0)], F(0)), ([F(0), F(1)], F(0)), ([F(-1), F(-1)], F(1))]
    out = fourier_motzkin(ineqs, 2, [1])
    assert all(c[1] == 0 for c, _ in out)
    feasible = lambda x: all(c[0] * x + k >= 0 for c, k in out)  # noqa: E731
    assert feasible(F(0)) and feasible(F(1)) and not feasible(F(-1, 10)) and not feasible(F(11, 10))


def test_membership_oracle_examples():
    assert oracle_membership([1, 1], [[1, 0], [0, 1]])
    assert not oracle_membership([1, 1, -1], E3)
    assert oracle_membership([1, 1, 0], E3 + [[1, 1, -1]])


def test_membership_guard():
    with pytest.raises(CostGuardExceeded):
        oracle_membership([0] * 6, [[1, 0, 0, 0, 0, 0]])


def test_frame_and_facets_oracles():
    assert oracle_frame([[1, 0], [0, 1], [1, 1]]) == {(1, 0), (0, 1)}
    assert oracle_facets(E3) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert len(oracle_facets(E3 + [[1, 1, -1]])) == 4
    normals = oracle_h_representation([[1, 0], [1, 1]])
    assert {(n[0] / abs(n[0] or n[1]), n[1] / abs(n[0] or n[1])) for n in normals} >= {(0, 1), (1, -1)}


def test_direct_sum_oracle():
    assert oracle_direct_sum({(0,), (2,)}, {(0,), (1,), (4,), (5,), (8,), (9,)}, (12,))
    assert not oracle_direct_sum({(0,), (1,), (3,)}, {(0,), (2,)}, (6,))


def test_box_tiling_oracle():
    assert oracle_box_tiling({(0,), (2,)}, (8,)) == {(0,), (1,), (4,), (5,)}
    assert oracle_box_tiling({(0, 0), (1, 0), (0, 1)}, (6, 6)) is None
    # translates may overhang the far edge, as in a truncated orthant tiling
    assert oracle_box_tiling({(0,), (2,)}, (6,)) == {(0,), (1,), (4,), (5,)}


def test_slice_class_oracle_matches_examples():
    c = Cone(E3)
    facet_e1e2 = c.facets[c.facet_index((0, 1))]
    facet_e1e3 = c.facets[c.facet_index((0, 2))]
    assert oracle_slice_class(c, facet_e1e2, (0, 1), (0, 0, 1)) == "Empty"
    assert oracle_slice_class(c, facet_e1e3, (0, 1), (0, 0, 1)) == "Ray"
    c4 = Cone(E3 + [[1, 1, -1]])
    tags = {oracle_slice_class(c4, q, (2, 0), (1, 1, 0)) for q in c4.facets}
    assert "Segment" in tags


def test_slice_class_oracle_needs_enough_samples():
    c = Cone(E3)
    with pytest.raises(ValueError):
        oracle_slice_class(c, c.facets[0], (0, 1), (0, 0, 1), samples=10)
