"""Deliberately naive reference implementations for cross-validation.

Nothing in here calls the simplex path, the facet enumerator or the slice
classifier it is meant to check.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import CostGuardExceeded
from .exact import as_vector, canonical_ray, dot, rank, rref


# --- Fourier-Motzkin -------------------------------------------------------
# An inequality is (coeffs, const, support) meaning coeffs . z + const >= 0;
# support is the frozenset of original rows it was combined from.

def _normalize(coeffs, const):
    nz = [abs(c) for c in coeffs if c != 0]
    if not nz:
        return tuple(coeffs), const
    s = min(nz)
    return tuple(c / s for c in coeffs), const / s


def fourier_motzkin(ineqs, n_vars: int, eliminate: Iterable[int]):
    """Project ``{z : coeffs . z + const >= 0}`` along the listed variables.

    Uses Chernikov's rule (an inequality built from more than k+1 originals
    after k eliminations is redundant) and support-subset pruning to keep the
    system from exploding.
    """
    rows = {}
    for k, (coeffs, const) in enumerate(ineqs):
        key = _normalize(list(coeffs), const)
        rows.setdefault(key, frozenset([k]))
    done = 0
    for var in eliminate:
        done += 1
        pos, neg, rest = [], [], {}
        for (coeffs, const), sup in rows.items():
            c = coeffs[var]
            if c > 0:
                pos.append((coeffs, const, sup))
            elif c < 0:
                neg.append((coeffs, const, sup))
            else:
                rest[(coeffs, const)] = sup
        new = dict(rest)
        for (pc, pk, ps), (nc, nk, ns) in itertools.product(pos, neg):
            sup = ps | ns
            if len(sup) > done + 1:
                continue
            a, b = -nc[var], pc[var]
            coeffs = [a * x + b * y for x, y in zip(pc, nc)]
            coeffs[var] = Fraction(0)
            key = _normalize(coeffs, a * pk + b * nk)
            if key not in new or len(sup) < len(new[key]):
                new[key] = sup
        # drop rows whose support strictly contains another row's support
        items = sorted(new.items(), key=lambda kv: len(kv[1]))
        kept = {}
        for key, sup in items:
            if any(other < sup for other in kept.values()):
                continue
            kept[key] = sup
        rows = kept
    return [(list(c), k) for (c, k) in rows]


def _check_guard(n, m, max_dim=5, max_gens=9):
    if n > max_dim or m > max_gens:
        raise CostGuardExceeded(f"oracle limited to dim <= {max_dim}, #gens <= {max_gens}")


def oracle_membership(v: Sequence, gens: Sequence[Sequence]) -> bool:
    """Decide ``v in cone(gens)`` by eliminating the multipliers.

    The equations ``sum lam_i g_i = v`` are first solved for as many
    multipliers as possible (exact substitution), then the sign
    constraints on the multipliers are projected by Fourier-Motzkin.
    """
    v = as_vector(v)
    gens = [as_vector(g) for g in gens]
    n, m = len(v), len(gens)
    _check_guard(n, m)
    if m == 0:
        return all(x == 0 for x in v)
    # augmented system [G | v] with one column per multiplier
    aug = [[gens[j][i] for j in range(m)] + [v[i]] for i in range(n)]
    red, pivots = rref(aug)
    if m in pivots:
        return False
    free = [j for j in range(m) if j not in pivots]
    pos = {j: k for k, j in enumerate(free)}
    ineqs = []
    for j in range(m):
        coeffs = [Fraction(0)] * len(free)
        if j in pos:
            coeffs[pos[j]] = Fraction(1)
            ineqs.append((coeffs, Fraction(0)))
        else:
            row = red[pivots.index(j)]
            for f in free:
                coeffs[pos[f]] = -row[f]
            ineqs.append((coeffs, row[m]))
    if not free:
        return all(k >= 0 for _, k in ineqs)
    final = fourier_motzkin(ineqs, len(free), range(len(free)))
    return all(k >= 0 for _, k in final)


def oracle_frame(gens: Sequence[Sequence]) -> set:
    """Canonical rays of the frame, by the membership oracle."""
    gens = [as_vector(g) for g in gens]
    rays = []
    for g in gens:
        r = canonical_ray(g)
        if r not in rays:
            rays.append(r)
    return {r for r in rays if not oracle_membership(r, [s for s in rays if s != r])}


def oracle_h_representation(gens: Sequence[Sequence]):
    """Inequalities ``a . x >= 0`` describing ``cone(gens)`` (full-dimensional case).

    Projects ``{(x, lam) : x = G lam, lam >= 0}`` onto ``x`` by eliminating
    every multiplier with Fourier-Motzkin, after substituting ``x`` into the
    sign constraints. Returns the list of normals, possibly redundant.
    """
    gens = [as_vector(g) for g in gens]
    n, m = len(gens[0]), len(gens)
    _check_guard(n, m, max_dim=6, max_gens=9)
    # variables: x_0..x_{n-1}, lam_0..lam_{m-1}; x = G lam as two inequalities each
    ineqs = []
    for i in range(n):
        row = [Fraction(0)] * (n + m)
        row[i] = Fraction(1)
        for j in range(m):
            row[n + j] = -gens[j][i]
        ineqs.append((row, Fraction(0)))
        ineqs.append(([-c for c in row], Fraction(0)))
    for j in range(m):
        row = [Fraction(0)] * (n + m)
        row[n + j] = Fraction(1)
        ineqs.append((row, Fraction(0)))
    final = fourier_motzkin(ineqs, n + m, range(n, n + m))
    return [tuple(c[:n]) for c, _ in final if any(c[:n])]


def oracle_facets(gens: Sequence[Sequence]) -> set:
    """Facet normals (as canonical rays) of a full-dimensional cone."""
    gens = [as_vector(g) for g in gens]
    n = len(gens[0])
    out = set()
    for a in oracle_h_representation(gens):
        tight = [g for g in gens if dot(a, g) == 0]
        if tight and rank(tight) == n - 1 or (n == 1 and not tight):
            out.add(canonical_ray(a))
    return out


# --- direct sums -----------------------------------------------------------

def _box_points(box):
    return itertools.product(*(range(b) for b in box))


def oracle_direct_sum(E, J, box) -> bool:
    """Every box point has exactly one decomposition ``e + t``."""
    E = [tuple(e) for e in E]
    J = {tuple(t) for t in J}
    volume = 1
    for b in box:
        volume *= b
    if volume > 10**6:
        raise CostGuardExceeded("box volume above 10^6 cells")
    for p in _box_points(box):
        count = 0
        for e in E:
            t = tuple(pi - ei for pi, ei in zip(p, e))
            if t in J:
                count += 1
        if count != 1:
            return False
    return True


def oracle_box_tiling(E, box, max_nodes: int = 10**6) -> Optional[set]:
    """Exact-cover search for translations tiling the box.

    Translates must be pairwise disjoint everywhere and cover every box
    point exactly once. Branches on the uncovered point with the fewest
    admissible placements. Returns a translation set or None.
    """
    E = [tuple(e) for e in E]
    dim = len(box)
    points = list(_box_points(box))
    occupied = set()
    chosen = []
    nodes = 0

    def options(p):
        out = []
        for e in E:
            t = tuple(pi - ei for pi, ei in zip(p, e))
            if any(x < 0 for x in t):
                continue
            cells = [tuple(ti + ei for ti, ei in zip(t, f)) for f in E]
            if not any(c in occupied for c in cells):
                out.append((t, cells))
        return out

    def search():
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise CostGuardExceeded("box tiling search exceeded its node budget")
        best = None
        for p in points:
            if p in occupied:
                continue
            opts = options(p)
            if best is None or len(opts) < len(best):
                best = opts
                if len(best) <= 1:
                    break
        if best is None:
            return True
        for t, cells in best:
            occupied.update(cells)
            chosen.append(t)
            if search():
                return True
            chosen.pop()
            occupied.difference_update(cells)
        return False

    if dim == 0:
        return {()}
    return set(chosen) if search() else None


# --- slice classification ---------------------------------------------------

def _in_cone_by_coefficients(x, gens) -> bool:
    """Membership in the cone of linearly independent ``gens``: solve, check signs."""
    m = len(gens)
    n = len(x)
    aug = [[gens[j][i] for j in range(m)] + [x[i]] for i in range(n)]
    red, pivots = rref(aug)
    if m in pivots:
        return False
    return all(red[k][m] >= 0 for k in range(len(pivots)))


def oracle_slice_class(cone, facet, face, y, samples: int = 1000):
    """Estimate the shape of ``facet ∩ (span(face) + y)`` by sampling.

    The line carrying the intersection is parametrized, ``samples`` rational
    points on it are tested for membership in the facet (through its
    generators, not through any inequality description), and the window is
    widened until the sampled hits stop touching its ends; a bounded run of
    hits is then zoomed in on, so short segments are not mistaken for
    points. Returns one of
    ``"Empty"``, ``"Point"``, ``"Segment"``, ``"Ray"``.
    """
    if samples < 1000:
        raise ValueError("oracle needs at least 1000 samples")
    y = as_vector(y)
    i, j = tuple(face.generator_indices) if hasattr(face, "generator_indices") else tuple(face)
    a, b = cone.generators[i], cone.generators[j]
    qgens = [cone.generators[k] for k in facet.generator_indices]
    beta = facet.supporting_functional
    c, p, q = dot(beta, y), dot(beta, a), dot(beta, b)
    if p == 0 and q == 0:
        return "Empty"
    if len(qgens) == rank(qgens):
        member = lambda x: _in_cone_by_coefficients(x, qgens)  # noqa: E731
    else:
        member = lambda x: oracle_membership(x, qgens)  # noqa: E731
    # line: y + s a + t b with c + p s + q t = 0
    base = (-c / p, Fraction(0)) if p != 0 else (Fraction(0), -c / q)
    # unit-size step in the plane, so the window below is measured in plane units
    direction = (-q / max(abs(p), abs(q)), p / max(abs(p), abs(q)))

    def point(lam):
        s = base[0] + lam * direction[0]
        t = base[1] + lam * direction[1]
        return tuple(yi + s * ai + t * bi for yi, ai, bi in zip(y, a, b))

    scale = 1 + max(abs(x) for x in list(y) + list(a) + list(b))
    lo, hi = -scale, scale

    def grid(lo, hi):
        return [lo + (hi - lo) * Fraction(k, samples - 1) for k in range(samples)]

    hits = []
    for _ in range(8):
        lams = grid(lo, hi)
        hits = [k for k, lam in enumerate(lams) if member(point(lam))]
        if not hits:
            lo, hi = 4 * lo, 4 * hi
            continue
        lo_end, hi_end = hits[0] == 0, hits[-1] == samples - 1
        if lo_end or hi_end:
            # a ray keeps hitting the window edge however far it is pushed out
            far = 16 * max(abs(lo), abs(hi))
            if member(point(-far if lo_end else far)):
                return "Ray"
            lo, hi = 4 * lo, 4 * hi
            continue
        break
    else:
        return "Empty" if not hits else "Ray"
    # bounded: zoom onto the hit run until it is resolved by many samples
    for _ in range(6):
        if len(hits) >= 10:
            return "Segment"
        lams = grid(lo, hi)
        lo, hi = lams[max(hits[0] - 1, 0)], lams[min(hits[-1] + 1, samples - 1)]
        hits = [k for k, lam in enumerate(grid(lo, hi)) if member(point(lam))]
    return "Point" if len(hits) == 1 else "Segment"
