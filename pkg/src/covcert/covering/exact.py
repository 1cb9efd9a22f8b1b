"""Exact covering radius by best-first refinement of a dyadic fundamental domain.

Every explored voxel type V gets two numbers: ``alpha_V``, the smallest
dilation whose lattice translates reach the centre of V, and ``beta_V``, the
smallest dilation containing a translate of V. The running maximum of the
alphas and the maximum beta over the current leaves bracket the covering
radius. The leaf with the largest beta is split until the simplest fraction
in the bracket is isolated by the denominator bound.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from ..ilp.bbox import lp_bounding_box
from ..ilp.mip import minimize_dilation
from ..zonotope import HPolytope
from .bounds import denominator_bound
from .dyadic import DyadicDomain, DyadicVoxel, children, mirror_type


class SternBrocot:
    """Descend the Stern-Brocot tree to the highest node inside ``[lo, hi]``.

    The state is kept between calls: when the interval only shrinks, the new
    answer is a descendant of the previous one.
    """

    def __init__(self):
        self.left = (0, 1)
        self.right = (1, 0)

    @property
    def node(self) -> Fraction:
        return Fraction(self.left[0] + self.right[0], self.left[1] + self.right[1])

    def descend(self, lo: Fraction, hi: Fraction) -> Fraction:
        if not 0 < lo <= hi:
            raise ValueError(f"need 0 < lo <= hi, got [{lo}, {hi}]")
        # climb back out if the interval left the current subtree
        lt, rt = self.left, self.right
        if Fraction(*lt) >= lo or (rt[1] and Fraction(*rt) <= hi):
            self.left, self.right = (0, 1), (1, 0)
        while True:
            (p1, q1), (p2, q2) = self.left, self.right
            node = Fraction(p1 + p2, q1 + q2)
            if node < lo:
                # several right moves at once: smallest j with (p1+j p2)/(q1+j q2) >= lo
                j = math.ceil((lo * q1 - p1) / (p2 - lo * q2))
                self.left = (p1 + (j - 1) * p2, q1 + (j - 1) * q2)
            elif node > hi:
                j = math.ceil((p2 - hi * q2) / (hi * q1 - p1))
                self.right = (p2 + (j - 1) * p1, q2 + (j - 1) * q1)
            else:
                return node


def simplest_between(lo, hi) -> Fraction:
    """Fraction of smallest denominator in ``[lo, hi]`` (0 < lo <= hi)."""
    return SternBrocot().descend(Fraction(lo), Fraction(hi))


@dataclass(frozen=True)
class ExactMuResult:
    mu: Fraction
    interval: tuple[Fraction, Fraction]
    domain: DyadicDomain
    witness: tuple[Fraction, ...]
    denom_bound: int
    expansions: int


class _DilationOracle:
    """``alpha`` and ``beta`` values for voxel types of ``{A x <= b}``."""

    def __init__(self, p: HPolytope, solver: str):
        self.a = [tuple(r) for r in p.a]
        self.b = [int(x) for x in p.b]
        self.pos = [sum(x for x in r if x > 0) for r in self.a]
        self.solver = solver
        self.candidates = None

    def restrict(self, rho_max: Fraction):
        """Enable candidate scanning: every optimum of interest is at most ``rho_max``."""
        if self.solver != "bbox":
            return
        num, den = rho_max.numerator, rho_max.denominator
        box = lp_bounding_box([[den * x for x in r] for r in self.a], [num * x for x in self.b])
        ranges = [range(math.ceil(lo) - 1, math.floor(hi) + 1) for lo, hi in box]
        self.candidates = [
            (x, [sum(c * v for c, v in zip(row, x)) for row in self.a]) for x in product(*ranges)
        ]

    def _scan(self, scale, offsets):
        # minimize over candidates x of max_i (scale*A_i x + offsets_i) / (scale*b_i), floored at 0
        best = None
        best_x = None
        for x, ax in self.candidates:
            worst_n, worst_d = 0, 1
            for axi, off, bi in zip(ax, offsets, self.b):
                n = scale * axi + off
                if n * worst_d > worst_n * bi:
                    worst_n, worst_d = n, bi
            val = Fraction(worst_n, worst_d * scale)
            if best is None or val < best:
                best, best_x = val, x
        return best, best_x

    def _solve(self, level, vtype, shift_scale, offsets):
        if self.candidates is not None:
            return self._scan(shift_scale, offsets)
        shift = [Fraction(-o, shift_scale) for o in offsets]
        res = minimize_dilation(self.a, self.b, shift)
        return res.objective, res.witness

    def beta(self, level, vtype):
        side = 1 << level
        offsets = [sum(c * t for c, t in zip(row, vtype)) + pos for row, pos in zip(self.a, self.pos)]
        return self._solve(level, vtype, side, offsets)

    def alpha(self, level, vtype):
        side = 2 << level
        offsets = [sum(c * (2 * t + 1) for c, t in zip(row, vtype)) for row in self.a]
        return self._solve(level, vtype, side, offsets)


def exact_mu(p: HPolytope, dbound: Optional[int] = None, *, symmetric: Optional[bool] = None,
             solver: str = "bbox") -> ExactMuResult:
    """Exact covering radius of ``p`` (integer A, b with 0 in the interior).

    ``solver="bbox"`` scans the lattice points of a box that holds every
    relevant translate; ``"exact"`` runs branch-and-bound per voxel instead.
    """
    if dbound is None:
        dbound = denominator_bound(p)
    if symmetric is None:
        symmetric = p.centrally_symmetric()
    d = p.dim
    oracle = _DilationOracle(p, solver)
    root = (0,) * d
    beta_root, x_root = oracle.beta(0, root)
    oracle.restrict(beta_root)
    alpha, alpha_node = oracle.alpha(0, root)[0], (0, root)

    # heap of leaves: (-beta, level, type, displacement)
    heap = [(-beta_root, 0, root, x_root)]
    sb = SternBrocot()
    expansions = 0
    while True:
        beta = -heap[0][0]
        rho = sb.descend(alpha, beta)
        gap = Fraction(1, rho.denominator * dbound)
        if beta - rho < gap and rho - alpha < gap:
            break
        _, level, vtype, _ = heapq.heappop(heap)
        expansions += 1
        if symmetric and level == 0:
            kids = [t for t in children(0, vtype) if t < mirror_type(1, t)]
        else:
            kids = children(level, vtype)
        for t in kids:
            b_val, x = oracle.beta(level + 1, t)
            a_val, _ = oracle.alpha(level + 1, t)
            if a_val > alpha:
                alpha, alpha_node = a_val, (level + 1, t)
            heapq.heappush(heap, (-b_val, level + 1, t, x))

    voxels = []
    for _, level, vtype, x in heap:
        vox = DyadicVoxel(level, vtype, x)
        voxels.append(vox)
        if symmetric and level > 0:
            voxels.append(vox.mirrored(0))
    lvl, t = alpha_node
    witness = tuple(Fraction(2 * ti + 1, 2 << lvl) for ti in t)
    return ExactMuResult(rho, (alpha, beta), DyadicDomain(sorted(voxels)), witness, dbound, expansions)
