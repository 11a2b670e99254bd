"""Two-dimensional slices of a cone parallel to one of its 2-faces.

A slice ``X_y = C ∩ (span(F) + y)`` is described in plane coordinates
``(s, t)`` for the point ``y + s*a + t*b``, where ``a, b`` are the two
frame generators of the 2-face ``F``. Because ``F`` is a face, the
recession cone of every slice is exactly the quadrant ``s, t >= 0``: the
region is an unbounded convex polygon whose two boundary rays run along
``b`` (from the first vertex) and along ``a`` (from the last vertex).
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import exact
from .cone import Cone, Face, has_regular_boundary, relative_interior_point
from .errors import ConePreconditionFailed, NotAFacet, PointNotInterior, RayStaysInside
from .exact import Vector

Point2 = tuple  # (Fraction, Fraction)

B_DIR = (Fraction(0), Fraction(1))
A_DIR = (Fraction(1), Fraction(0))

MAX_HALVINGS = 40


@dataclass(frozen=True)
class Slice2D:
    plane_basis: tuple
    offset: Vector
    vertices: tuple
    ray_dirs: tuple = (B_DIR, A_DIR)

    def to_ambient(self, p: Sequence) -> Vector:
        a, b = self.plane_basis
        s, t = p
        return tuple(y + s * ai + t * bi for y, ai, bi in zip(self.offset, a, b))

    @property
    def b_ray_origin(self) -> Point2:
        return self.vertices[0]

    @property
    def a_ray_origin(self) -> Point2:
        return self.vertices[-1]

    @property
    def edges(self) -> list:
        return list(zip(self.vertices, self.vertices[1:]))


@dataclass(frozen=True)
class SegmentClass:
    """Shape of a facet meeting a slice plane.

    ``points`` holds nothing (Empty), the point (Point), both endpoints
    (Segment) or the origin (Ray, with ``direction`` set).
    """

    tag: str
    points: tuple = ()
    direction: Optional[Point2] = None


@dataclass(frozen=True)
class SliceMetrics:
    y_norm_sq: Fraction
    slice_hausdorff_sq: Fraction
    projection_bound_sq: Fraction
    a1_norm_sq: Fraction
    b1_norm_sq: Fraction

    @property
    def hausdorff_upper(self) -> tuple:
        """``(|y|^2, d^2)`` with ``d_H(X_y, F) <= |y| + d``.

        ``d`` is the exact Hausdorff distance between the slice and ``F + y``.
        """
        return (self.y_norm_sq, self.slice_hausdorff_sq)

    @property
    def projection_bound_holds(self) -> bool:
        return self.slice_hausdorff_sq <= self.projection_bound_sq

    def scaled(self, delta) -> "SliceMetrics":
        d2 = Fraction(delta) ** 2
        return SliceMetrics(*(d2 * v for v in (
            self.y_norm_sq, self.slice_hausdorff_sq, self.projection_bound_sq,
            self.a1_norm_sq, self.b1_norm_sq)))


@dataclass(frozen=True)
class FeasibleTwoFace:
    face: tuple
    point: Vector
    case: int
    slice: Slice2D


# --- helpers ----------------------------------------------------------------

def _require_full_dim(cone: Cone):
    if not cone.is_full_dimensional:
        raise PointNotInterior("the cone has empty interior; slice it inside its own span")


def _halfplanes(cone: Cone, a, b, y):
    """Facet inequalities as ``c + p*s + q*t >= 0`` in plane coordinates."""
    out = []
    for k, q in enumerate(cone.facets):
        beta = q.supporting_functional
        out.append((exact.dot(beta, y), exact.dot(beta, a), exact.dot(beta, b), k))
    return out


def plane_meets_interior(cone: Cone, face, y) -> bool:
    """True iff ``span(F) + y`` meets the interior of the cone.

    Facets not containing all of ``F`` become positive far out along
    ``a + b``, so only facets through ``F`` constrain the answer.
    """
    if not cone.is_full_dimensional:
        return False
    i, j = cone.two_face(face)
    a, b = cone.generators[i], cone.generators[j]
    y = exact.as_vector(y)
    for c, p, q, _ in _halfplanes(cone, a, b, y):
        if p == 0 and q == 0 and c <= 0:
            return False
    return True


def _vertices(halfplanes):
    rows = [(c, p, q) for c, p, q, _ in halfplanes if p != 0 or q != 0]
    found = set()
    for (c1, p1, q1), (c2, p2, q2) in combinations(rows, 2):
        det = p1 * q2 - p2 * q1
        if det == 0:
            continue
        s = (-c1 * q2 + c2 * q1) / det
        t = (-p1 * c2 + p2 * c1) / det
        if all(c + p * s + q * t >= 0 for c, p, q in rows):
            found.add((s, t))
    return tuple(sorted(found))


# --- operations ---------------------------------------------------------------

def slice_cone(cone: Cone, face, y: Sequence) -> Slice2D:
    """Exact slice of ``cone`` by the plane through ``y`` parallel to ``face``.

    Vertices come sorted by increasing ``s`` (equivalently decreasing
    ``t``), i.e. along the boundary from the ``b``-ray to the ``a``-ray.
    """
    _require_full_dim(cone)
    i, j = cone.two_face(face)
    y = exact.as_vector(y)
    if not plane_meets_interior(cone, (i, j), y):
        raise PointNotInterior("the slice plane misses the interior of the cone")
    a, b = cone.generators[i], cone.generators[j]
    verts = _vertices(_halfplanes(cone, a, b, y))
    return Slice2D((a, b), y, verts)


def is_corner_cut(s: Slice2D) -> bool:
    return len(s.vertices) >= 2


def _resolve_facet(cone: Cone, facet) -> Face:
    if isinstance(facet, int):
        return cone.facets[facet]
    return cone.facets[cone.facet_index(facet)]


def classify_facet_plane(cone: Cone, facet, face, y: Sequence) -> SegmentClass:
    """Exact shape of ``Q ∩ (span(F) + y)`` for a facet ``Q``."""
    _require_full_dim(cone)
    q_face = _resolve_facet(cone, facet)
    i, j = cone.two_face(face)
    y = exact.as_vector(y)
    if not plane_meets_interior(cone, (i, j), y):
        raise PointNotInterior("the slice plane misses the interior of the cone")
    a, b = cone.generators[i], cone.generators[j]
    beta = q_face.supporting_functional
    c, p, q = exact.dot(beta, y), exact.dot(beta, a), exact.dot(beta, b)
    if p == 0 and q == 0:
        return SegmentClass("Empty")
    base = (-c / p, Fraction(0)) if p != 0 else (Fraction(0), -c / q)
    d = (-q, p)
    lo, hi = None, None  # None stands for -inf / +inf
    for c2, p2, q2, _ in _halfplanes(cone, a, b, y):
        alpha = c2 + p2 * base[0] + q2 * base[1]
        gamma = p2 * d[0] + q2 * d[1]
        if gamma == 0:
            if alpha < 0:
                return SegmentClass("Empty")
            continue
        bound = -alpha / gamma
        if gamma > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    at = lambda lam: (base[0] + lam * d[0], base[1] + lam * d[1])  # noqa: E731
    if lo is not None and hi is not None:
        if lo > hi:
            return SegmentClass("Empty")
        if lo == hi:
            return SegmentClass("Point", (at(lo),))
        return SegmentClass("Segment", (at(lo), at(hi)))
    if lo is None and hi is None:
        raise AssertionError("a pointed cone cannot contain a line")
    if lo is not None:
        return SegmentClass("Ray", (at(lo),), d)
    return SegmentClass("Ray", (at(hi),), (-d[0], -d[1]))


def judge_table(cone: Cone, facet, face) -> set:
    """Shapes allowed for ``Q ∩ (span(F) + y)`` by how many of F's generators lie on Q."""
    q_face = _resolve_facet(cone, facet)
    i, j = cone.two_face(face)
    beta = q_face.supporting_functional
    inside = sum(exact.dot(beta, cone.generators[k]) == 0 for k in (i, j))
    return {2: {"Empty"}, 1: {"Empty", "Ray"}, 0: {"Empty", "Point", "Segment"}}[inside]


def _exit(cone: Cone, x, d):
    lam, hit = None, []
    for k, q in enumerate(cone.facets):
        beta = q.supporting_functional
        rate = exact.dot(beta, d)
        if rate > 0:
            cand = exact.dot(beta, x) / rate
            if lam is None or cand < lam:
                lam, hit = cand, [k]
            elif cand == lam:
                hit.append(k)
    return lam, hit


def boundary_projection(cone: Cone, x: Sequence, d: Sequence) -> Vector:
    """The point where the ray ``x - R+ d`` leaves the cone.

    Computed as ``x - lam* d`` with ``lam*`` the smallest exit parameter
    over the facets. ``x`` may lie anywhere in the cone; for boundary
    points the answer can be ``x`` itself.
    """
    _require_full_dim(cone)
    x, d = exact.as_vector(x), exact.as_vector(d)
    if not cone.contains(x):
        raise PointNotInterior("projection starts outside the cone")
    lam, _ = _exit(cone, x, d)
    if lam is None:
        raise RayStaysInside("the ray x - R+ d never leaves the cone")
    return exact.sub(x, exact.scale(lam, d))


def exit_facets(cone: Cone, x: Sequence, d: Sequence) -> list:
    """Indices of the facets hit by ``x - R+ d`` at its exit point."""
    return _exit(cone, exact.as_vector(x), exact.as_vector(d))[1]


def _dist_sq_to_quadrant(p, a, b) -> Fraction:
    """Squared distance from ``p`` in span(a, b) to ``cone(a, b)``."""
    coeffs = exact.solve(exact.transpose([a, b]), p)
    if coeffs[0] >= 0 and coeffs[1] >= 0:
        return Fraction(0)
    best = exact.norm_sq(p)
    for g in (a, b):
        mu = exact.dot(p, g) / exact.dot(g, g)
        if mu > 0:
            best = min(best, exact.norm_sq(exact.sub(p, exact.scale(mu, g))))
    return best


def orthogonalized(a, b):
    """``(a, b')`` with ``b' = b - (<a,b>/<a,a>) a``."""
    mu = exact.dot(a, b) / exact.dot(a, a)
    return a, exact.sub(b, exact.scale(mu, a))


def slice_metrics(cone: Cone, face, y: Sequence) -> SliceMetrics:
    """Exact squared-norm metrics of ``X_y`` relative to the face.

    ``projection_bound_sq`` is ``|y - pi_a(y)|^2 + |y - pi_b'(y)|^2`` with
    ``b'`` the Gram-Schmidt partner of ``a``; ``slice_hausdorff_sq`` is the
    exact squared Hausdorff distance between ``X_y`` and ``F + y``. ``y``
    must lie in the cone.
    """
    y = exact.as_vector(y)
    s = slice_cone(cone, face, y)
    if not cone.contains(y):
        raise PointNotInterior("metrics need the slice offset inside the cone")
    a, b = s.plane_basis
    a_, b_ = orthogonalized(a, b)
    pa = boundary_projection(cone, y, a_)
    pb = boundary_projection(cone, y, b_)
    proj = exact.norm_sq(exact.sub(y, pa)) + exact.norm_sq(exact.sub(y, pb))
    hd = Fraction(0)
    for v in s.vertices:
        rel = exact.sub(s.to_ambient(v), y)
        hd = max(hd, _dist_sq_to_quadrant(rel, a, b))
    return SliceMetrics(
        y_norm_sq=exact.norm_sq(y),
        slice_hausdorff_sq=hd,
        projection_bound_sq=proj,
        a1_norm_sq=exact.norm_sq(s.to_ambient(s.a_ray_origin)),
        b1_norm_sq=exact.norm_sq(s.to_ambient(s.b_ray_origin)),
    )


def _metrics_job(args):
    gens, face, y = args
    try:
        return slice_metrics(Cone(gens), face, y)
    except PointNotInterior:
        return None


def sample_metrics(cone: Cone, face, center, radius, samples: int = 32,
                   seed: int = 0, parallel: bool = False) -> dict:
    """Per-point metrics over rational samples of a ball; reports the maxima.

    Samples outside the cone or whose plane misses its interior are
    skipped and counted.
    """
    center = exact.as_vector(center)
    radius = Fraction(radius)
    rng = random.Random(seed)
    n = len(center)
    points = []
    while len(points) < samples:
        u = [Fraction(rng.randint(-1000, 1000), 1000) for _ in range(n)]
        if sum(x * x for x in u) <= 1:
            points.append(tuple(c + radius * x for c, x in zip(center, u)))
    jobs = [(cone.generators, cone.two_face(face), p) for p in points]
    if parallel:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_metrics_job, jobs))
    else:
        results = [_metrics_job(j) for j in jobs]
    good = [r for r in results if r is not None]
    fields = ("y_norm_sq", "slice_hausdorff_sq", "projection_bound_sq", "a1_norm_sq", "b1_norm_sq")
    return {
        "samples": samples,
        "used": len(good),
        "max": {f: max((getattr(r, f) for r in good), default=None) for f in fields},
    }


# --- constructive feasible 2-face --------------------------------------------

def _pairs(frame):
    return list(combinations(frame, 2))


def _case_one(cone: Cone, b1, b2):
    x0 = exact.add(cone.generators[b1], cone.generators[b2])
    if not cone.is_interior(x0):
        return None
    for a1 in cone.frame:
        if a1 in (b1, b2) or not cone.is_face((a1, b1)):
            continue
        s = slice_cone(cone, (a1, b1), x0)
        if is_corner_cut(s):
            return FeasibleTwoFace((a1, b1), x0, 1, s)
    return None


def _case_two(cone: Cone, facet: Face, b1, b2):
    x0 = relative_interior_point(cone, facet)
    c = Fraction(1)
    b1v = cone.generators[b1]
    for _ in range(MAX_HALVINGS + 1):
        y = exact.add(x0, exact.scale(c, b1v))
        if cone.is_interior(y):
            s = slice_cone(cone, (b1, b2), y)
            if is_corner_cut(s):
                return FeasibleTwoFace((b1, b2), y, 2, s)
        c /= 2
    raise ConePreconditionFailed(
        f"no admissible offset after {MAX_HALVINGS} halvings", facet=facet.generator_indices
    )


def find_feasible_two_face(cone: Cone, strategy: str = "auto") -> Optional[FeasibleTwoFace]:
    """A 2-face and an interior point whose slice is corner-cut.

    Returns None for regular cones, which have no feasible 2-face. Raises
    :class:`ConePreconditionFailed` for lower-dimensional cones and cones
    whose boundary is irregular.

    ``strategy`` selects the construction: ``"auto"`` uses the first one
    when some frame pair fails to span a 2-face and the second otherwise;
    ``"case1"``/``"case2"`` force one of them. The second construction
    only needs a facet and a 2-face whose generators both avoid it, so it
    can be forced on cones where the first one applies too.
    """
    if strategy not in ("auto", "case1", "case2"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if not cone.is_full_dimensional:
        raise ConePreconditionFailed("cone is not full-dimensional")
    if cone.is_regular:
        return None
    if not has_regular_boundary(cone):
        raise ConePreconditionFailed("cone has an irregular facet")
    frame = cone.frame
    missing = [(p, q) for p, q in _pairs(frame) if not cone.is_face((p, q))]
    if strategy == "case1" or (strategy == "auto" and missing):
        if not missing:
            raise ConePreconditionFailed("every frame pair spans a 2-face")
        for b1, b2 in missing:
            for first, second in ((b1, b2), (b2, b1)):
                found = _case_one(cone, first, second)
                if found is not None:
                    return found
        raise ConePreconditionFailed("first construction found no corner-cut slice")
    for facet in cone.facets:
        outside = [k for k in frame if k not in facet.generator_indices]
        for b1, b2 in combinations(outside, 2):
            if cone.is_face((b1, b2)):
                return _case_two(cone, facet, b1, b2)
    raise ConePreconditionFailed("no facet with a 2-face avoiding it")
