"""Exact LP over free variables: minimize ``c @ z`` subject to ``g @ z <= h``.

Integer-preserving (Edmonds/Bareiss) tableau simplex. Every entry is an
integer and the true tableau is ``entries / den``; pivots divide exactly by
the previous pivot. Entering and leaving variables follow Bland's rule.

Columns: free variables ``0..k-1``, slacks ``k..k+m-1``, one artificial
``k+m`` for phase one, then the right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None


class _Tableau:
    __slots__ = ("rows", "objs", "basis", "den", "k", "m", "rhs", "art", "flip")

    def __init__(self, g, h, k):
        m = len(g)
        self.k, self.m = k, m
        self.art = k + m
        self.rhs = k + m + 1
        rows = []
        for i in range(m):
            r = list(g[i])
            r.extend([0] * m)
            r[k + i] = 1
            r.append(-1 if h[i] < 0 else 0)
            r.append(h[i])
            rows.append(r)
        self.rows = rows
        self.basis = [k + i for i in range(m)]
        self.den = 1
        self.flip = [1] * k
        self.objs = []

    def pivot(self, r, col):
        rows, den = self.rows, self.den
        prow = rows[r]
        p = prow[col]
        width = len(prow)
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[col]
            if f == 0:
                # (row * p) // den, exact since row is a minor scaled by den
                for j in range(width):
                    if row[j]:
                        row[j] = row[j] * p // den
            else:
                for j in range(width):
                    row[j] = (row[j] * p - f * prow[j]) // den
        for row in self.objs:
            f = row[col]
            if f == 0:
                for j in range(width):
                    if row[j]:
                        row[j] = row[j] * p // den
            else:
                for j in range(width):
                    row[j] = (row[j] * p - f * prow[j]) // den
        self.basis[r] = col
        if p < 0:
            for row in rows:
                for j in range(width):
                    row[j] = -row[j]
            for row in self.objs:
                for j in range(width):
                    row[j] = -row[j]
            p = -p
        self.den = p

    def negate_column(self, col):
        for row in self.rows:
            row[col] = -row[col]
        for row in self.objs:
            row[col] = -row[col]
        self.flip[col] = -self.flip[col]

    def optimize(self, obj, forbid_art):
        """Bland-rule primal simplex on objective row ``obj``."""
        k, rows, basis = self.k, self.rows, self.basis
        last = self.art if forbid_art else self.art + 1
        rhs = self.rhs
        while True:
            basic = set(basis)
            col = -1
            for j in range(last):
                if j in basic:
                    continue
                rc = obj[j]
                if rc < 0:
                    col = j
                    break
                if rc > 0 and j < k:
                    self.negate_column(j)
                    col = j
                    break
            if col < 0:
                return OPTIMAL
            best = -1
            bn = bd = 0
            for i, row in enumerate(rows):
                a = row[col]
                if a <= 0 or basis[i] < k:
                    continue
                num = row[rhs]
                if best < 0:
                    best, bn, bd = i, num, a
                    continue
                lhs, rhs_ = num * bd, bn * a
                if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[best]):
                    best, bn, bd = i, num, a
            if best < 0:
                return UNBOUNDED
            self.pivot(best, col)

    def solution(self):
        k, den, rhs = self.k, self.den, self.rhs
        x = [Fraction(0)] * k
        for i, b in enumerate(self.basis):
            if b < k:
                x[b] = Fraction(self.flip[b] * self.rows[i][rhs], den)
        return tuple(x)


def solve_lp(g: Sequence[Sequence[int]], h: Sequence[int], c: Optional[Sequence[int]] = None,
             k: Optional[int] = None) -> LPResult:
    """Solve the LP exactly. ``g``, ``h`` and ``c`` must be integers.

    With ``c`` omitted any feasible point is returned.
    """
    if k is None:
        k = len(g[0]) if g else len(c or ())
    if not g:
        if c and any(c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, tuple(Fraction(0) for _ in range(k)), Fraction(0))
    t = _Tableau(g, h, k)
    width = t.rhs + 1
    obj2 = None
    if c is not None and any(c):
        obj2 = list(c) + [0] * (width - k)
        t.objs.append(obj2)

    r0 = min(range(t.m), key=lambda i: (h[i], i))
    if h[r0] < 0:
        obj1 = [0] * width
        obj1[t.art] = 1
        t.objs.append(obj1)
        t.pivot(r0, t.art)
        t.optimize(obj1, forbid_art=False)
        if obj1[t.rhs] != 0:
            return LPResult(INFEASIBLE)
        if t.art in t.basis:
            r = t.basis.index(t.art)
            basic = set(t.basis)
            row = t.rows[r]
            for j in range(t.art):
                if j not in basic and row[j] != 0:
                    t.pivot(r, j)
                    break
        t.objs.remove(obj1)

    if obj2 is not None:
        status = t.optimize(obj2, forbid_art=True)
        if status == UNBOUNDED:
            return LPResult(UNBOUNDED)
    x = t.solution()
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0)) if c is not None else Fraction(0)
    return LPResult(OPTIMAL, x, value)
