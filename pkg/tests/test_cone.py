import itertools
import random
from fractions import Fraction

import pytest

from conetile import exact
from conetile.cone import (
    Cone,
    compute_frame,
    contains_point,
    facet_cone,
    has_regular_boundary,
    interior_point,
    is_face,
    xi_example_generators,
)
from conetile.errors import HalfSpaceViolation, NotAFacet, NotATwoFace, ZeroGenerator
from conetile.oracles import oracle_facets, oracle_frame
from generators import random_cone

E3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
C4 = E3 + [[1, 1, -1]]
CUBE4 = [(a, b, c, 1) for a in (0, 1) for b in (0, 1) for c in (0, 1)]


@pytest.fixture(scope="module")
def xi():
    return Cone(xi_example_generators())


def test_orthant():
    c = Cone(E3)
    assert (len(c.frame), c.dim, c.is_regular) == (3, 3, True)
    assert sorted(q.supporting_functional for q in c.facets) == sorted(exact.as_matrix(E3))


def test_xi_cone(xi):
    assert len(xi.frame) == 7 and xi.dim == 6 and not xi.is_regular
    assert all(xi.is_face(p) for p in itertools.combinations(xi.frame, 2))


def test_xi_facets_match_oracle(xi):
    # 12 facets; frozen after the Fourier-Motzkin cross-check below
    assert len(xi.facets) == 12
    assert {q.supporting_functional for q in xi.facets} == oracle_facets(xi.generators)


def test_rejections():
    with pytest.raises(HalfSpaceViolation):
        Cone([[1], [-1]])
    with pytest.raises(ZeroGenerator):
        Cone([[1, 0], [0, 0]])


def test_frame_examples():
    assert compute_frame([[1, 0], [0, 1], [1, 1]]) == [0, 1]
    assert compute_frame(C4) == [0, 1, 2, 3]


def test_four_ray_cone():
    c = Cone(C4)
    assert not c.is_regular
    assert len(c.facets) == 4
    assert {q.supporting_functional for q in c.facets} == oracle_facets(c.generators)
    assert not is_face(c, (0, 1))
    assert contains_point(c, [1, 1, 0])


def test_containment_examples():
    assert Cone(E3).contains([0, 0, 0])
    assert not Cone([exact.unit_vector(6, i) for i in range(6)]).contains([1, 1, 1, -1, -1, -1])


def test_regular_boundary():
    assert has_regular_boundary(Cone(E3))
    assert has_regular_boundary(Cone(C4))
    cube = Cone(CUBE4)
    assert [len(q.generator_indices) for q in cube.facets] == [4] * 6
    assert not has_regular_boundary(cube)


def test_face_errors():
    c = Cone(C4)
    with pytest.raises(NotATwoFace):
        c.two_face((0, 1))
    with pytest.raises(NotATwoFace):
        c.two_face((0, 0))
    with pytest.raises(NotAFacet):
        c.facet_index((0, 1))


def test_lower_dimensional_cone_facets():
    # a planar sector sitting in R^3
    c = Cone([[1, 0, 1], [0, 1, 1], [1, 1, 2]])
    assert c.dim == 2 and not c.is_full_dimensional
    assert len(c.frame) == 2 and len(c.facets) == 2
    for q in c.facets:
        (i,) = q.generator_indices
        assert exact.dot(q.supporting_functional, c.generators[i]) == 0
        other = [j for j in c.frame if j != i][0]
        assert exact.dot(q.supporting_functional, c.generators[other]) > 0


def _random_cones(seed, count, max_dim=4):
    rng = random.Random(seed)
    return [random_cone(rng, rng.randint(2, max_dim), rng.randint(2, 8)) for _ in range(count)]


def test_frame_idempotent_and_matches_oracle():
    for c in _random_cones(3, 60):
        frame_vecs = c.frame_vectors
        assert compute_frame(frame_vecs) == list(range(len(frame_vecs)))
        assert {exact.canonical_ray(v) for v in frame_vecs} == oracle_frame(c.generators)
        for i, g in enumerate(c.generators):
            assert exact.in_nonneg_hull(g, frame_vecs)


def test_facets_match_oracle_on_random_cones():
    for c in _random_cones(5, 40):
        if c.is_full_dimensional:
            assert {q.supporting_functional for q in c.facets} == oracle_facets(c.generators)


def test_facet_equals_cone_cap_its_span():
    # points of C on a facet hyperplane are exactly the facet's own cone
    rng = random.Random(9)
    for c in _random_cones(9, 30):
        if not c.is_full_dimensional:
            continue
        for q in c.facets:
            gens = [c.generators[i] for i in q.generator_indices]
            for _ in range(4):
                lam = [Fraction(rng.randint(0, 3)) for _ in gens]
                x = tuple(sum(a * g[k] for a, g in zip(lam, gens)) for k in range(c.ambient_dim))
                assert c.contains(x) and exact.dot(x, q.supporting_functional) == 0
                assert exact.in_nonneg_hull(x, gens)


def test_faces_of_facets_are_faces():
    for c in _random_cones(13, 30):
        if not c.is_full_dimensional:
            continue
        for q in c.facets:
            sub = facet_cone(c, q).in_own_span()
            idx = list(q.generator_indices)
            for r in range(1, len(idx) + 1):
                for local in itertools.combinations(range(len(idx)), r):
                    if sub.is_face(local):
                        assert c.is_face([idx[k] for k in local])


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_regular_cones_every_subset_is_a_face(n):
    rng = random.Random(n)
    while True:
        gens = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if exact.rank(gens) == n:
            break
    c = Cone(gens)
    assert c.is_regular
    for r in range(n + 1):
        for sub in itertools.combinations(range(n), r):
            assert c.is_face(sub)


def test_interior_point_is_interior():
    for c in _random_cones(17, 30):
        if c.is_full_dimensional:
            assert c.is_interior(interior_point(c))
