"""Exact rational linear algebra and the two feasibility primitives.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator). Vectors are tuples of Fractions and matrices are tuples of row
vectors; nothing here ever touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]


def as_rational(x) -> Fraction:
    """Parse an int, Fraction or a ``"p/q"`` string. Floats are rejected."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact rational")


def as_vector(v: Iterable) -> Vector:
    return tuple(as_rational(x) for x in v)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(as_vector(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise DimensionMismatch("matrix rows have different lengths")
    return m


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(int(j == i)) for j in range(n))


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of length {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def norm_sq(v) -> Fraction:
    return dot(v, v)


def is_zero(v) -> bool:
    return all(a == 0 for a in v)


def check_same_dim(vectors: Iterable[Sequence], dim: Optional[int] = None) -> int:
    for v in vectors:
        if dim is None:
            dim = len(v)
        elif len(v) != dim:
            raise DimensionMismatch(f"expected dimension {dim}, got {len(v)}")
    return dim if dim is not None else 0


def primitive_integer_vector(v) -> Vector:
    """Positive multiple of ``v`` with coprime integer coordinates.

    Two nonzero rational vectors span the same ray exactly when their
    primitive vectors coincide, which makes this the canonical ray label.
    """
    if is_zero(v):
        return tuple(Fraction(0) for _ in v)
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(Fraction(x // g) for x in ints)


canonical_ray = primitive_integer_vector


# --- matrices -------------------------------------------------------------

def transpose(m: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in a)


def identity(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for r in rows:
        r = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * den) for x in r])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank via fraction-free (Bareiss) elimination."""
    a = _integer_rows(rows)
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == m:
            break
    return r


def determinant(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    a = [list(map(Fraction, row)) for row in m]
    if any(len(row) != n for row in a):
        raise DimensionMismatch("determinant of a non-square matrix")
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return det


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    a = [list(map(Fraction, r)) for r in rows]
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def nullspace(rows: Sequence[Sequence], n: Optional[int] = None) -> list[Vector]:
    """Basis of {x : row . x = 0 for every row}."""
    if not rows:
        if n is None:
            raise ValueError("need the ambient dimension for an empty system")
        return [unit_vector(n, i) for i in range(n)]
    n = len(rows[0])
    red, pivots = rref(rows)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        x = [Fraction(0)] * n
        x[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -red[i][free]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[Vector]:
    """One solution of ``a x = b`` (free variables set to zero), or None."""
    if not a:
        return None
    n = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, pc in enumerate(pivots):
        x[pc] = red[i][n]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(map(Fraction, row)) + list(unit_vector(n, i)) for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def matpow(m: Sequence[Sequence], k: int) -> Matrix:
    result = identity(len(m))
    base = tuple(tuple(map(Fraction, r)) for r in m)
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


# --- feasibility ----------------------------------------------------------

def feasible_nonneg(a: Sequence[Sequence], b: Sequence) -> Optional[Vector]:
    """Phase-one simplex: some ``x >= 0`` with ``a x = b``, or None.

    Dense Fraction tableau, Bland's smallest-index rule for both the
    entering and the leaving variable, so cycling cannot occur.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return zero_vector(n)
    tab = []
    for i in range(m):
        row = [Fraction(x) for x in a[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        tab.append(row + [Fraction(int(j == i)) for j in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    obj = [-sum((tab[i][j] for i in range(m)), Fraction(0)) for j in range(n)]
    obj += [Fraction(0)] * m
    obj.append(-sum((tab[i][-1] for i in range(m)), Fraction(0)))

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        # phase one is bounded below by zero, so some row always qualifies
        prow = tab[leave]
        p = prow[enter]
        prow = [x / p for x in prow]
        tab[leave] = prow
        for i in range(m):
            if i != leave:
                f = tab[i][enter]
                if f:
                    tab[i] = [x - f * y for x, y in zip(tab[i], prow)]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, prow)]
        basis[leave] = enter

    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tab[i][-1]
    return tuple(x)


def in_nonneg_hull(v: Sequence, gens: Sequence[Sequence]) -> bool:
    """True iff ``v`` is a nonnegative combination of ``gens``."""
    v = as_vector(v)
    gens = [as_vector(g) for g in gens]
    check_same_dim(gens, len(v))
    if not gens:
        return is_zero(v)
    cols = transpose(gens)  # n rows, one column per generator
    return feasible_nonneg(cols, v) is not None


def nonneg_coefficients(v: Sequence, gens: Sequence[Sequence]) -> Optional[Vector]:
    """Witness coefficients for :func:`in_nonneg_hull`, or None."""
    v = as_vector(v)
    gens = [as_vector(g) for g in gens]
    check_same_dim(gens, len(v))
    if not gens:
        return () if is_zero(v) else None
    return feasible_nonneg(transpose(gens), v)


def strict_supporting_functional(
    zero_set: Sequence[Sequence], pos_set: Sequence[Sequence], dim: Optional[int] = None
) -> Optional[Vector]:
    """A functional vanishing on ``zero_set`` and positive on ``pos_set``.

    Strict positivity is encoded as ``<g, beta> >= 1``; the conditions are
    homogeneous, so this loses nothing. The free vector ``beta`` is split
    as ``beta_plus - beta_minus`` for the nonnegative solver. The result is
    scaled to a primitive integer vector.
    """
    zero_set = [as_vector(z) for z in zero_set]
    pos_set = [as_vector(p) for p in pos_set]
    n = check_same_dim(zero_set + pos_set, dim)
    if n == 0 and dim is None:
        raise DimensionMismatch("cannot infer the dimension of an empty problem")
    k = len(pos_set)
    rows, rhs = [], []
    for z in zero_set:
        rows.append(list(z) + [-x for x in z] + [Fraction(0)] * k)
        rhs.append(Fraction(0))
    for i, p in enumerate(pos_set):
        slack = [Fraction(0)] * k
        slack[i] = Fraction(-1)
        rows.append(list(p) + [-x for x in p] + slack)
        rhs.append(Fraction(1))
    if not rows:
        return zero_vector(n)
    sol = feasible_nonneg(rows, rhs)
    if sol is None:
        return None
    beta = tuple(sol[i] - sol[n + i] for i in range(n))
    return primitive_integer_vector(beta)
