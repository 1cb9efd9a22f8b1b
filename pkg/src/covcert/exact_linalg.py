"""Exact integer and rational linear algebra.

Matrices are sequences of rows; results are returned as tuples of tuples so
they can be hashed and compared. Nothing here ever touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_LLL_DELTA = Fraction(3, 4)


class DimensionError(ValueError):
    pass


class RankError(ValueError):
    pass


class SingularMatrixError(ZeroDivisionError):
    pass


def as_matrix(m: Sequence[Sequence[int]]) -> Matrix:
    rows = tuple(tuple(r) for r in m)
    if not rows or not rows[0]:
        raise DimensionError("matrix must have at least one row and column")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionError("ragged matrix")
    return rows


def transpose(m: Sequence[Sequence]) -> tuple[tuple, ...]:
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple[tuple, ...]:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _det_int(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = m
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    # Bareiss fraction-free elimination
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square integer or rational matrix."""
    n = len(m)
    if n == 0 or any(len(r) != n for r in m):
        raise DimensionError(f"determinant needs a square matrix, got {n} rows")
    if all(isinstance(x, int) for r in m for x in r):
        return Fraction(_det_int(m))
    a = [[Fraction(x) for x in r] for r in m]
    result = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
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


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix, as an int."""
    n = len(m)
    if n == 0 or any(len(r) != n for r in m):
        raise DimensionError(f"determinant needs a square matrix, got {n} rows")
    return _det_int(m)


def rank(m: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in r] for r in m]
    rows, cols = len(a), len(a[0]) if a else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            f = a[i][c] / a[r][c]
            if f:
                for j in range(c, cols):
                    a[i][j] -= f * a[r][j]
        r += 1
        if r == rows:
            break
    return r


def solve_square(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...]:
    """Solve ``a @ x = b`` exactly by Gauss-Jordan elimination."""
    n = len(a)
    if any(len(r) != n for r in a) or len(b) != n:
        raise DimensionError("solve_square needs an n x n matrix and length-n vector")
    aug = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for k in range(n):
        piv = next((r for r in range(k, n) if aug[r][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[k], aug[piv] = aug[piv], aug[k]
        pk = aug[k][k]
        rowk = [x / pk for x in aug[k]]
        aug[k] = rowk
        for i in range(n):
            if i != k and aug[i][k]:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], rowk)]
    return tuple(row[n] for row in aug)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hnf_columns(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Column-style Hermite normal form.

    Returns ``(h, u)`` with ``h == m @ u``, ``u`` unimodular and ``h`` lower
    triangular in echelon form: each pivot is positive and the entries left of
    a pivot, in the pivot's row, lie in ``[0, pivot)``. Zero columns are last.
    """
    rows = as_matrix(m)
    nr, nc = len(rows), len(rows[0])
    # work on columns: cols[j][i] is entry (i, j)
    h = [list(c) for c in zip(*rows)]
    u = [[int(i == j) for i in range(nc)] for j in range(nc)]  # columns of u

    k = 0
    for i in range(nr):
        if k == nc:
            break
        for j in range(k + 1, nc):
            b = h[j][i]
            if b == 0:
                continue
            a = h[k][i]
            g, x, y = xgcd(a, b)
            p, q = -b // g, a // g
            hk, hj = h[k], h[j]
            h[k] = [x * s + y * t for s, t in zip(hk, hj)]
            h[j] = [p * s + q * t for s, t in zip(hk, hj)]
            uk, uj = u[k], u[j]
            u[k] = [x * s + y * t for s, t in zip(uk, uj)]
            u[j] = [p * s + q * t for s, t in zip(uk, uj)]
        piv = h[k][i]
        if piv == 0:
            continue
        if piv < 0:
            h[k] = [-s for s in h[k]]
            u[k] = [-s for s in u[k]]
            piv = -piv
        for j in range(k):
            q = h[j][i] // piv
            if q:
                h[j] = [s - q * t for s, t in zip(h[j], h[k])]
                u[j] = [s - q * t for s, t in zip(u[j], u[k])]
        k += 1
    return transpose(h), transpose(u)


def lll_rows(m: Sequence[Sequence[int]], delta: Fraction = DEFAULT_LLL_DELTA) -> Matrix:
    """LLL-reduce the rows of an integer matrix.

    Integral variant with exact Gram-Schmidt bookkeeping (sub-determinants
    ``d`` and scaled coefficients ``lam``); no rationals in the inner loop.
    The row lattice is unchanged.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError(f"LLL parameter must lie in (1/4, 1), got {delta}")
    dp, dq = delta.numerator, delta.denominator
    rows = as_matrix(m)
    n = len(rows)
    # 1-indexed storage keeps the recurrences readable
    b = [None] + [list(r) for r in rows]
    d = [1] + [0] * n
    lam = [[0] * (n + 1) for _ in range(n + 1)]

    def dot(x, y):
        return sum(s * t for s, t in zip(x, y))

    def gram_schmidt(k):
        for j in range(1, k + 1):
            u = dot(b[k], b[j])
            for i in range(1, j):
                u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
            if j < k:
                lam[k][j] = u
            else:
                if u == 0:
                    raise RankError("rows are linearly dependent")
                d[k] = u

    def reduce(k, l):
        if 2 * abs(lam[k][l]) > d[l]:
            q = (2 * lam[k][l] + d[l]) // (2 * d[l])
            b[k] = [s - q * t for s, t in zip(b[k], b[l])]
            lam[k][l] -= q * d[l]
            for i in range(1, l):
                lam[k][i] -= q * lam[l][i]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lmb = lam[k][k - 1]
        big = (d[k - 2] * d[k] + lmb * lmb) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lmb * t) // d[k - 1]
            lam[i][k - 1] = (big * t + lmb * lam[i][k]) // d[k]
        d[k - 1] = big

    gram_schmidt(1)
    k, kmax = 2, 1
    while k <= n:
        if k > kmax:
            kmax = k
            gram_schmidt(k)
        reduce(k, k - 1)
        lk = lam[k][k - 1]
        if dq * d[k] * d[k - 2] < dp * d[k - 1] * d[k - 1] - dq * lk * lk:
            swap(k)
            k = max(2, k - 1)
        else:
            for l in range(k - 2, 0, -1):
                reduce(k, l)
            k += 1
    return tuple(tuple(r) for r in b[1:])
