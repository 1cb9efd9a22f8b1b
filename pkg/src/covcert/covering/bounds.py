"""Bounds on the denominator of the covering radius of ``{A x <= b}``."""

from __future__ import annotations

import math
from itertools import combinations

from ..exact_linalg import int_det, matmul, transpose
from ..zonotope import HPolytope


def _augmented(p: HPolytope):
    if not p.integral:
        raise ValueError("denominator bounds need integer right-hand sides")
    return [tuple(row) + (int(bi),) for row, bi in zip(p.a, p.b)]


def denominator_bound(p: HPolytope) -> int:
    """Largest ``|det(A_R | b_R)|`` over all ``(d+1)``-subsets R of rows."""
    rows = _augmented(p)
    k = p.dim + 1
    best = 0
    seen = set()
    for subset in combinations(rows, k):
        key = frozenset(subset)
        if len(key) < k or key in seen:
            continue
        seen.add(key)
        best = max(best, abs(int_det(subset)))
    return best


def _ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def denominator_bound_compact(p: HPolytope) -> int:
    """``ceil(sqrt(det((A|b)^T (A|b))))``, a Cauchy-Binet upper bound on
    :func:`denominator_bound`."""
    m = _augmented(p)
    return _ceil_sqrt(int_det(matmul(transpose(m), m)))


def gram_bound(p: HPolytope) -> int:
    """``ceil(sqrt(det(A^T A)))``. Cheap, but not a guaranteed denominator bound;
    only used where any positive margin is sound."""
    return max(1, _ceil_sqrt(int_det(matmul(transpose(p.a), p.a))))
