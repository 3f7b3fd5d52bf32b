"""Exact integer and rational linear algebra.

Everything here works on Python ``int`` and :class:`fractions.Fraction`, so
there is no overflow and no rounding. Matrices are plain tuples of tuples
(row-major); vectors are tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

IntMatrix = tuple[tuple[int, ...], ...]
RatVector = tuple[Fraction, ...]


class SingularMatrixError(ValueError):
    """Raised when a square system has no unique solution (degenerate cone)."""


def as_int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and len({len(r) for r in m}) != 1:
        raise ValueError("ragged matrix")
    return m


def as_rat_vector(xs: Sequence) -> RatVector:
    return tuple(Fraction(x) for x in xs)


def _check_square(m: Sequence[Sequence]) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError(f"expected a square matrix, got {n} rows of lengths "
                         f"{sorted({len(r) for r in m})}")
    return n


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination.

    All intermediate quotients are exact, so entries stay integers and their
    size is bounded by minors of the input.
    """
    n = _check_square(m)
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rat_det(m: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix (Gaussian elimination)."""
    n = _check_square(m)
    a = [[Fraction(x) for x in row] for row in m]
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            result = -result
        result *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return result


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def kernel_basis(m: Sequence[Sequence], cols: int | None = None) -> list[RatVector]:
    """Basis of the right null space of ``m``.

    Vectors are cleared to integer coordinates with content 1 and returned in
    order of the free (non-pivot) columns of the reduced echelon form. Each
    vector has a positive entry in its free column. ``cols`` is needed only
    when ``m`` has no rows.
    """
    if not m:
        if cols is None:
            raise ValueError("cols required for an empty matrix")
        ncols = cols
        red, pivots = [], []
    else:
        ncols = len(m[0])
        red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(Fraction(c) for c in primitive(x)))
    return basis


def solve_square(m: Sequence[Sequence], rhs: Sequence) -> RatVector:
    """Unique solution of ``m x = rhs``; raises :class:`SingularMatrixError`."""
    n = _check_square(m)
    if len(rhs) != n:
        raise ValueError("right-hand side has the wrong length")
    aug = [list(row) + [b] for row, b in zip(m, rhs)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise SingularMatrixError("matrix is singular: cone generators are "
                                  "linearly dependent")
    return tuple(red[i][n] for i in range(n))


def inverse(m: Sequence[Sequence]) -> tuple[RatVector, ...]:
    n = _check_square(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(red[i][n:]) for i in range(n))


def hnf_is_unimodular(generators: Sequence[Sequence[int]]) -> bool:
    """True iff ``n`` integer vectors in dimension ``n`` form a lattice basis."""
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens or any(len(g) != len(gens) for g in gens):
        raise ValueError(f"need n vectors of dimension n, got {len(gens)} "
                         f"vectors of dimension(s) {sorted({len(g) for g in gens})}")
    return abs(det(gens)) == 1


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Sequence[Sequence]) -> tuple:
    return tuple(zip(*a))


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def to_int_matrix(m: Sequence[Sequence]) -> IntMatrix | None:
    """Return ``m`` with integer entries, or None if some entry is fractional."""
    out = []
    for row in m:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                return None
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


def inverse_transpose(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Contragredient of a unimodular integer matrix (again integral)."""
    inv = to_int_matrix(inverse(m))
    if inv is None:
        raise ValueError("matrix is not unimodular")
    return transpose(inv)
