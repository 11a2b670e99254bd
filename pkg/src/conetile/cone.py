"""Convex polyhedral cones given by generators: frame, dimension, faces."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import exact
from .errors import ConeTileError, DimensionMismatch, HalfSpaceViolation, NotAFacet, NotATwoFace, ZeroGenerator
from .exact import Vector


@dataclass(frozen=True)
class Face:
    """A face of a cone.

    ``generator_indices`` index into the owning cone's generator list and
    are always frame members; ``supporting_functional`` vanishes on them and
    is positive on the remaining frame.
    """

    generator_indices: tuple
    supporting_functional: Vector
    dim: int

    def __contains__(self, index) -> bool:
        return index in self.generator_indices


def compute_frame(gens: Sequence[Sequence]) -> list[int]:
    """Indices of the frame (minimal generating set) of ``cone(gens)``.

    Parallel generators are first collapsed onto their first occurrence;
    the rest are dropped one at a time whenever they lie in the
    nonnegative hull of the generators still kept.
    """
    gens = [exact.as_vector(g) for g in gens]
    seen = {}
    kept = []
    for i, g in enumerate(gens):
        ray = exact.canonical_ray(g)
        if ray not in seen:
            seen[ray] = i
            kept.append(i)
    for i in list(kept):
        others = [gens[j] for j in kept if j != i]
        if others and exact.in_nonneg_hull(gens[i], others):
            kept.remove(i)
    return kept


def _full_dim_facets(vecs: dict, frame: Sequence[int], d: int):
    """(indices, normal) pairs for a full-dimensional cone in R^d."""
    found = {}
    for subset in combinations(frame, d - 1):
        rows = [vecs[i] for i in subset]
        if rows and exact.rank(rows) != d - 1:
            continue
        normals = exact.nullspace(rows, d)
        if len(normals) != 1:
            continue
        beta = normals[0]
        vals = {i: exact.dot(vecs[i], beta) for i in frame}
        if all(v >= 0 for v in vals.values()):
            pass
        elif all(v <= 0 for v in vals.values()):
            beta = tuple(-x for x in beta)
        else:
            continue
        on = tuple(i for i in frame if vals[i] == 0)
        if on not in found:
            found[on] = exact.primitive_integer_vector(beta)
    return sorted(found.items())


class Cone:
    """A pointed convex polyhedral cone ``a_1 R+ + ... + a_m R+``.

    Construction validates the half-space condition and eagerly caches the
    frame, the dimension and the facet list; instances are immutable.
    """

    def __init__(self, generators: Iterable[Sequence]):
        gens = tuple(exact.as_vector(g) for g in generators)
        if not gens:
            raise ValueError("a cone needs at least one generator")
        n = exact.check_same_dim(gens)
        if n == 0:
            raise DimensionMismatch("generators must have positive dimension")
        for i, g in enumerate(gens):
            if exact.is_zero(g):
                raise ZeroGenerator(f"generator {i} is zero", index=i)
        beta = exact.strict_supporting_functional([], gens)
        if beta is None:
            raise HalfSpaceViolation("generators do not lie in an open half-space")
        self._generators = gens
        self._ambient_dim = n
        self._half_space_witness = beta
        self._rays = tuple(exact.canonical_ray(g) for g in gens)
        self._frame = tuple(compute_frame(gens))
        self._dim = exact.rank(gens)
        self._facets = tuple(self._compute_facets())

    # -- basic data --------------------------------------------------------
    @property
    def generators(self) -> tuple:
        return self._generators

    @property
    def ambient_dim(self) -> int:
        return self._ambient_dim

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def frame(self) -> tuple:
        return self._frame

    @property
    def frame_vectors(self) -> tuple:
        return tuple(self._generators[i] for i in self._frame)

    @property
    def facets(self) -> tuple:
        return self._facets

    @property
    def half_space_witness(self) -> Vector:
        return self._half_space_witness

    @property
    def is_full_dimensional(self) -> bool:
        return self._dim == self._ambient_dim

    def ray(self, i: int) -> Vector:
        return self._rays[i]

    def __repr__(self):
        return f"Cone(n={self.ambient_dim}, dim={self.dim}, frame={len(self.frame)})"

    # -- facets ------------------------------------------------------------
    def _span_coordinates(self):
        """Left inverse ``P`` of a basis ``B`` of span(C) (so ``P B = I``)."""
        basis = []
        for i in self._frame:
            cand = basis + [self._generators[i]]
            if exact.rank(cand) == len(cand):
                basis = cand
            if len(basis) == self._dim:
                break
        bt = basis  # rows are basis vectors, i.e. B transposed
        gram = exact.matmul(bt, exact.transpose(bt))
        return exact.matmul(exact.inverse(gram), bt)

    def _compute_facets(self):
        d = self._dim
        if d == self._ambient_dim:
            vecs = {i: self._generators[i] for i in self._frame}
            pairs = _full_dim_facets(vecs, self._frame, d)
            return [Face(idx, beta, d - 1) for idx, beta in pairs]
        p = self._span_coordinates()
        vecs = {i: exact.matvec(p, self._generators[i]) for i in self._frame}
        pt = exact.transpose(p)
        out = []
        for idx, beta in _full_dim_facets(vecs, self._frame, d):
            lifted = exact.primitive_integer_vector(exact.matvec(pt, beta))
            out.append(Face(idx, lifted, d - 1))
        return out

    def facet_index(self, face) -> int:
        """Position of ``face`` (a Face or generator-index collection) in ``facets``."""
        key = face.generator_indices if isinstance(face, Face) else tuple(sorted(face))
        for k, q in enumerate(self._facets):
            if q.generator_indices == tuple(sorted(key)):
                return k
        raise NotAFacet(f"{key} is not a facet")

    # -- predicates --------------------------------------------------------
    def contains(self, x: Sequence) -> bool:
        x = exact.as_vector(x)
        if len(x) != self._ambient_dim:
            raise DimensionMismatch(f"point has dimension {len(x)}, cone has {self._ambient_dim}")
        return exact.in_nonneg_hull(x, self.frame_vectors)

    def is_interior(self, x: Sequence) -> bool:
        """Strict interior membership (always False for lower-dimensional cones)."""
        x = exact.as_vector(x)
        if len(x) != self._ambient_dim:
            raise DimensionMismatch(f"point has dimension {len(x)}, cone has {self._ambient_dim}")
        if not self.is_full_dimensional:
            return False
        return all(exact.dot(q.supporting_functional, x) > 0 for q in self._facets)

    @property
    def is_regular(self) -> bool:
        return len(self._frame) == self._dim

    def face_support(self, subset: Iterable[int]) -> Optional[Vector]:
        """Supporting functional exposing exactly ``cone(subset)``, or None."""
        subset = tuple(subset)
        for i in subset:
            if not 0 <= i < len(self._generators):
                raise IndexError(f"generator index {i} out of range")
        zero = [self._generators[i] for i in subset]
        rays = {self._rays[i] for i in subset}
        pos = [self._generators[j] for j in self._frame if self._rays[j] not in rays]
        return exact.strict_supporting_functional(zero, pos, self._ambient_dim)

    def is_face(self, subset: Iterable[int]) -> bool:
        return self.face_support(subset) is not None

    def face(self, subset: Iterable[int]) -> Face:
        """Face object for ``cone(subset)``; raises if it is not a face."""
        subset = tuple(subset)
        beta = self.face_support(subset)
        if beta is None:
            err = NotATwoFace if len(subset) == 2 else ConeTileError
            raise err(f"{subset} does not span a face")
        rays = {self._rays[i] for i in subset}
        idx = tuple(j for j in self._frame if self._rays[j] in rays)
        vecs = [self._generators[j] for j in idx]
        return Face(idx, beta, exact.rank(vecs) if vecs else 0)

    def two_face(self, face) -> tuple[int, int]:
        """Validate a 2-face given as a Face or an index pair; return its frame indices."""
        idx = tuple(face.generator_indices) if isinstance(face, Face) else tuple(face)
        if len(idx) != 2 or idx[0] == idx[1]:
            raise NotATwoFace(f"{idx} is not a pair of generators")
        if any(not 0 <= i < len(self._generators) for i in idx):
            raise NotATwoFace(f"{idx} has out-of-range indices")
        if self._rays[idx[0]] == self._rays[idx[1]]:
            raise NotATwoFace(f"{idx} are parallel generators")
        if any(i not in self._frame for i in idx):
            raise NotATwoFace(f"{idx} are not both frame members")
        if not self.is_face(idx):
            raise NotATwoFace(f"cone{idx} is not a face")
        return idx

    def in_own_span(self) -> "Cone":
        """The same cone written in coordinates of a basis of its span."""
        if self.is_full_dimensional:
            return self
        p = self._span_coordinates()
        return Cone(exact.matvec(p, g) for g in self._generators)


def new_cone(gens: Iterable[Sequence]) -> Cone:
    return Cone(gens)


def is_regular(cone: Cone) -> bool:
    return cone.is_regular


def is_face(cone: Cone, subset: Iterable[int]) -> bool:
    return cone.is_face(subset)


def facets(cone: Cone) -> tuple:
    return cone.facets


def contains_point(cone: Cone, x: Sequence) -> bool:
    return cone.contains(x)


def has_regular_boundary(cone: Cone) -> bool:
    """Every facet, as a cone in its own span, is regular.

    The frame of a facet is the set of frame members of the cone lying on
    it, so regularity is a count against the facet dimension.
    """
    return all(len(q.generator_indices) == q.dim for q in cone.facets)


def facet_cone(cone: Cone, face: Face) -> Optional[Cone]:
    """The facet as a cone of its own (None for the zero face of a ray)."""
    if not face.generator_indices:
        return None
    return Cone(cone.generators[i] for i in face.generator_indices)


def interior_point(cone: Cone) -> Vector:
    """Sum of the frame; interior for full-dimensional cones."""
    total = exact.zero_vector(cone.ambient_dim)
    for g in cone.frame_vectors:
        total = exact.add(total, g)
    return total


def relative_interior_point(cone: Cone, face: Face) -> Vector:
    total = exact.zero_vector(cone.ambient_dim)
    for i in face.generator_indices:
        total = exact.add(total, cone.generators[i])
    return total


def xi_example_generators(n: int = 6) -> list[Vector]:
    """The unit vectors of R^6 together with (1,1,1,-1,-1,-1)."""
    half = n // 2
    gens = [exact.unit_vector(n, i) for i in range(n)]
    gens.append(tuple(Fraction(1 if i < half else -1) for i in range(n)))
    return gens
