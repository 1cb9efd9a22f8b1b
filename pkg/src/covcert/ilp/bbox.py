"""Bounding-box enumeration, the brute-force fallback for integer feasibility."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from typing import Sequence

from .simplex import OPTIMAL, solve_lp


def lp_bounding_box(g: Sequence[Sequence[int]], h: Sequence[int]):
    """Exact per-coordinate ``(min, max)`` of ``{g @ x <= h}``, or None if empty.

    Raises ValueError when some coordinate is unbounded.
    """
    k = len(g[0])
    box = []
    for j in range(k):
        ends = []
        for sgn in (1, -1):
            c = [0] * k
            c[j] = sgn
            res = solve_lp(g, h, c, k)
            if res.status != OPTIMAL:
                if res.status == "infeasible":
                    return None
                raise ValueError("unbounded coordinate")
            ends.append(sgn * res.value)
        box.append((ends[0], ends[1]))
    return box


def integer_ranges(box):
    return [range(math.ceil(lo), math.floor(hi) + 1) for lo, hi in box]


def enumerate_box(a: Sequence[Sequence], rhs: Sequence, ranges) -> tuple | None:
    """First integer point (lexicographic) of ``ranges`` satisfying ``a @ x <= rhs``."""
    a = [[Fraction(x) for x in row] for row in a]
    rhs = [Fraction(x) for x in rhs]
    for x in product(*ranges):
        if all(sum(c * v for c, v in zip(row, x)) <= r for row, r in zip(a, rhs)):
            return tuple(x)
    return None
