"""Exact integer feasibility and small mixed-integer minimization.

Branch-and-bound over an exact LP relaxation (:mod:`.simplex`). Branching
picks the most fractional variable, lowest index on ties, and explores the
down branch first. Infeasibility verdicts are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp

FEASIBLE = "feasible"


class UnboundedRelaxationError(ValueError):
    """The LP relaxation is unbounded, so the integer search is not finite."""


@dataclass(frozen=True)
class FeasibilityProblem:
    """``find x`` with ``a @ x <= rhs``; ``integer[j]`` marks integer variables."""

    a: tuple
    rhs: tuple
    integer: tuple = None

    def __post_init__(self):
        a = tuple(tuple(Fraction(x) for x in row) for row in self.a)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "rhs", tuple(Fraction(x) for x in self.rhs))
        k = len(a[0]) if a else 0
        if self.integer is None:
            object.__setattr__(self, "integer", (True,) * k)
        else:
            object.__setattr__(self, "integer", tuple(bool(f) for f in self.integer))
        if len(self.rhs) != len(a) or len(self.integer) != k:
            raise ValueError("inconsistent problem dimensions")

    @property
    def nvars(self) -> int:
        return len(self.integer)


@dataclass(frozen=True)
class MipResult:
    status: str
    witness: Optional[tuple] = None
    objective: Optional[Fraction] = None
    nodes: int = field(default=0, compare=False)

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


def _integral_row(row, rhs, integer_vars):
    """Scale a rational row to integers; tighten it when all its support is integer."""
    den = math.lcm(*(Fraction(x).denominator for x in row), Fraction(rhs).denominator)
    ints = [int(Fraction(x) * den) for x in row]
    r = Fraction(rhs) * den
    if all(integer_vars[j] or c == 0 for j, c in enumerate(ints)):
        g = math.gcd(*ints)
        if g == 0:
            return ints, math.floor(r)
        return [c // g for c in ints], math.floor(r / g)
    # continuous support: rhs must stay exact, so scale again by its denominator
    if r.denominator != 1:
        ints = [c * r.denominator for c in ints]
        r = r * r.denominator
    return ints, int(r)


def is_bounded(a: Sequence[Sequence[int]]) -> bool:
    """True when ``{y : a @ y <= 0}`` is just the origin."""
    k = len(a[0])
    box = [[int(i == j) for i in range(k)] for j in range(k)] + [
        [-int(i == j) for i in range(k)] for j in range(k)
    ]
    g = [list(r) for r in a] + box
    h = [0] * len(a) + [1] * (2 * k)
    for j in range(k):
        for sgn in (1, -1):
            c = [0] * k
            c[j] = -sgn
            res = solve_lp(g, h, c)
            if res.status != OPTIMAL or res.value != 0:
                return False
    return True


def _bound_rows(lo, hi, k):
    g, h = [], []
    for j in range(k):
        if hi[j] is not None:
            row = [0] * k
            row[j] = 1
            g.append(row)
            h.append(hi[j])
        if lo[j] is not None:
            row = [0] * k
            row[j] = -1
            g.append(row)
            h.append(-lo[j])
    return g, h


def _most_fractional(x, integer_vars):
    best, bestdist = -1, None
    for j, xj in enumerate(x):
        if not integer_vars[j] or xj.denominator == 1:
            continue
        frac = xj - math.floor(xj)
        dist = abs(frac - Fraction(1, 2))
        if bestdist is None or dist < bestdist:
            best, bestdist = j, dist
    return best


def _satisfies(g, h, x):
    return all(sum(c * v for c, v in zip(row, x)) <= hv for row, hv in zip(g, h))


def bnb_feasible(g: Sequence[Sequence[int]], h: Sequence[int], integer_vars=None) -> MipResult:
    """Branch-and-bound on integer data; ``g`` rows already tightened."""
    k = len(g[0])
    if integer_vars is None:
        integer_vars = (True,) * k
    stack = [((None,) * k, (None,) * k)]
    nodes = 0
    while stack:
        lo, hi = stack.pop()
        nodes += 1
        bg, bh = _bound_rows(lo, hi, k)
        res = solve_lp(list(g) + bg, list(h) + bh, None, k)
        if res.status == INFEASIBLE:
            continue
        x = res.x
        j = _most_fractional(x, integer_vars)
        if j < 0:
            return MipResult(FEASIBLE, tuple(int(v) if integer_vars[i] else v for i, v in enumerate(x)), nodes=nodes)
        rounded = [round(v) if integer_vars[i] else v for i, v in enumerate(x)]
        if _satisfies(g, h, rounded) and _in_bounds(rounded, lo, hi):
            return MipResult(FEASIBLE, tuple(int(v) if integer_vars[i] else v for i, v in enumerate(rounded)), nodes=nodes)
        fl = math.floor(x[j])
        up_lo = lo[:j] + (fl + 1,) + lo[j + 1:]
        down_hi = hi[:j] + (fl,) + hi[j + 1:]
        stack.append((up_lo, hi))
        stack.append((lo, down_hi))
    return MipResult(INFEASIBLE, nodes=nodes)


def _in_bounds(x, lo, hi):
    return all((l is None or v >= l) and (u is None or v <= u) for v, l, u in zip(x, lo, hi))


def feasible_integer(p: FeasibilityProblem, check_bounded: bool = True) -> MipResult:
    """Exact feasibility of ``p``; returns an exact witness when feasible."""
    rows, rhs = [], []
    for row, r in zip(p.a, p.rhs):
        ir, ih = _integral_row(row, r, p.integer)
        if not any(ir):
            if ih < 0:
                return MipResult(INFEASIBLE)
            continue
        rows.append(ir)
        rhs.append(ih)
    if not rows:
        if p.nvars == 0:
            return MipResult(FEASIBLE, ())
        raise UnboundedRelaxationError("no constraints")
    if check_bounded and not is_bounded(rows):
        raise UnboundedRelaxationError("relaxation is unbounded")
    res = bnb_feasible(rows, rhs, p.integer)
    if res.feasible:
        assert all(
            sum(Fraction(c) * v for c, v in zip(row, res.witness)) <= r for row, r in zip(p.a, p.rhs)
        ), "witness failed exact re-check"
    return res


def minimize_dilation(a: Sequence[Sequence], b: Sequence, rhs_shift: Sequence) -> MipResult:
    """Minimize ``rho >= 0`` over integer ``x`` with ``a @ x - rho * b <= rhs_shift``.

    ``b`` must be positive, so ``x = 0`` with a large enough ``rho`` is always
    feasible and seeds the incumbent.
    """
    a = [[Fraction(x) for x in row] for row in a]
    b = [Fraction(x) for x in b]
    shift = [Fraction(x) for x in rhs_shift]
    if any(x <= 0 for x in b):
        raise ValueError("minimize_dilation needs b > 0")
    k = len(a[0])
    integer_vars = (True,) * k + (False,)

    def value(x):
        return max([Fraction(0)] + [(sum(c * v for c, v in zip(row, x)) - s) / bi
                                    for row, bi, s in zip(a, b, shift)])

    best_x = (0,) * k
    best = value(best_x)
    g, h = [], []
    for row, bi, s in zip(a, b, shift):
        ir, ih = _integral_row(list(row) + [-bi], s, integer_vars)
        g.append(ir)
        h.append(ih)
    g.append([0] * k + [-1])
    h.append(0)
    c = [0] * k + [1]

    stack = [((None,) * k, (None,) * k)]
    nodes = 0
    while stack:
        lo, hi = stack.pop()
        nodes += 1
        bg, bh = _bound_rows(lo, hi, k)
        bg = [r + [0] for r in bg]
        res = solve_lp(g + bg, h + bh, c, k + 1)
        if res.status == INFEASIBLE:
            continue
        if res.status == UNBOUNDED:  # pragma: no cover - rho >= 0 prevents it
            raise UnboundedRelaxationError("dilation LP unbounded")
        if res.value >= best:
            continue
        x = res.x[:k]
        rounded = tuple(round(v) for v in x)
        if _in_bounds(rounded, lo, hi):
            rv = value(rounded)
            if rv < best:
                best, best_x = rv, rounded
                if res.value >= best:
                    continue
        j = _most_fractional(x, integer_vars)
        if j < 0:
            continue  # integral LP optimum already recorded via rounding
        fl = math.floor(x[j])
        stack.append((lo[:j] + (fl + 1,) + lo[j + 1:], hi))
        stack.append((lo, hi[:j] + (fl,) + hi[j + 1:]))
    return MipResult(FEASIBLE, tuple(int(v) for v in best_x), best, nodes=nodes)
