"""Breadth-first search for a dyadic fundamental domain inside a dilate of P.

``decide_le`` looks inside ``(rho + 1/(2sD)) P`` and ``decide_ge`` inside
``(rho - 1/(2sD)) P``, where ``s`` is the denominator of ``rho`` and ``D``
bounds the denominator of the covering radius. A finished domain proves the
bound; a dyadic point whose coset misses the dilate proves the opposite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..ilp.bbox import lp_bounding_box
from ..ilp.lattice import LatticeSolver
from ..ilp.mip import FeasibilityProblem, feasible_integer
from ..zonotope import HPolytope
from .bounds import denominator_bound
from .dyadic import DyadicDomain, DyadicVoxel, children, mirror_type

BOUNDED = "bounded"
UNBOUNDED = "unbounded"


class SearchLimitExceeded(RuntimeError):
    """The search went deeper than the caller allowed."""


CENTERED = Fraction(-1, 2)


@dataclass(frozen=True)
class CoveringVerdict:
    kind: str
    dilation_used: Fraction
    denom_bound: int
    domain: Optional[DyadicDomain] = None
    witness_coset: Optional[tuple[int, tuple[int, ...]]] = None
    offset: Fraction = Fraction(0)
    nodes: int = field(default=0, compare=False)

    @property
    def bounded(self) -> bool:
        return self.kind == BOUNDED

    @property
    def witness_point(self) -> Optional[tuple[Fraction, ...]]:
        if self.witness_coset is None:
            return None
        level, vtype = self.witness_coset
        return tuple(self.offset + Fraction(t, 1 << level) for t in vtype)

    @property
    def depth(self) -> int:
        if self.domain is not None:
            return self.domain.depth
        return self.witness_coset[0]


def _pos_sums(a):
    return [sum(x for x in row if x > 0) for row in a]


def voxel_fits(pplus: HPolytope, level: int, vtype: Sequence[int], offset=0) -> Optional[tuple[int, ...]]:
    """Integer ``x`` with ``offset + x + c + [0, 2^-level]^d`` inside ``pplus``, c = vtype/2^level."""
    eps = Fraction(1, 1 << level)
    c = [offset + t * eps for t in vtype]
    rhs = [
        Fraction(bi) - sum(ai * ci for ai, ci in zip(row, c)) - pos * eps
        for row, bi, pos in zip(pplus.a, pplus.b, _pos_sums(pplus.a))
    ]
    res = feasible_integer(FeasibilityProblem(pplus.a, rhs), check_bounded=False)
    return res.witness if res.feasible else None


def coset_avoids(pplus: HPolytope, point: Sequence) -> bool:
    """True when no integer translate of ``point`` lies in ``pplus``."""
    rhs = [
        Fraction(bi) - sum(ai * Fraction(ci) for ai, ci in zip(row, point))
        for row, bi in zip(pplus.a, pplus.b)
    ]
    return not feasible_integer(FeasibilityProblem(pplus.a, rhs), check_bounded=False).feasible


class DyadicSearch:
    """Breadth-first search inside ``{A y <= dilation * b}`` (integer A, b).

    Voxels sit on the dyadic grid anchored at ``offset * (1, ..., 1)``; the
    default ``-1/2`` makes the root voxel the centred unit cube.
    """

    def __init__(self, p: HPolytope, dilation: Fraction, solver: str = "exact",
                 symmetric: Optional[bool] = None, offset=CENTERED):
        if not p.integral:
            raise ValueError("the polytope must have integer right-hand sides")
        dilation = Fraction(dilation)
        if dilation <= 0:
            raise ValueError(f"dilation must be positive, got {dilation}")
        self.a = [tuple(r) for r in p.a]
        self.dim = p.dim
        self.num, self.den = dilation.numerator, dilation.denominator
        self.nb = [self.num * int(bi) for bi in p.b]
        self.pos = _pos_sums(self.a)
        self.offset = Fraction(offset)
        self.on, self.od = self.offset.numerator, self.offset.denominator
        self.rowsum = [sum(r) for r in self.a]
        self.symmetric = p.centrally_symmetric() if symmetric is None else symmetric
        if self.symmetric and (2 * self.offset).denominator != 1:
            raise ValueError("the symmetric search needs a half-integer grid offset")
        ranges = None
        if solver == "bbox":
            box = lp_bounding_box([[self.den * x for x in r] for r in self.a], self.nb)
            ranges = [range(math.ceil(lo - self.offset) - 1, math.floor(hi - self.offset) + 1)
                      for lo, hi in box]
        self.solver = LatticeSolver(self.a, solver, ranges)

    def _rhs(self, level, vtype, with_size):
        # floor of (dilation*b - A(offset + vtype/2^l) - [A+]/2^l), exact in integers
        side = 1 << level
        den, od = self.den, self.od
        scale = den * side * od
        out = []
        for row, nb, pos, rs in zip(self.a, self.nb, self.pos, self.rowsum):
            at = sum(c * t for c, t in zip(row, vtype))
            if with_size:
                at += pos
            out.append((nb * side * od - den * od * at - den * side * self.on * rs) // scale)
        return out

    def fit(self, level: int, vtype: Sequence[int]) -> Optional[tuple[int, ...]]:
        return self.solver.find(self._rhs(level, vtype, True))

    def coset_hit(self, level: int, vtype: Sequence[int]) -> bool:
        return self.solver.find(self._rhs(level, vtype, False)) is not None

    def run(self, max_level: Optional[int] = None):
        """Return ``(domain, None)`` or ``(None, (level, type))``."""
        d = self.dim
        voxels: list[DyadicVoxel] = []
        frontier = [(0,) * d]
        level = 0
        nodes = 0
        while frontier:
            if max_level is not None and level > max_level:
                raise SearchLimitExceeded(f"no decision up to level {max_level}")
            nxt = []
            for vtype in sorted(frontier):
                nodes += 1
                x = self.fit(level, vtype)
                if x is not None:
                    vox = DyadicVoxel(level, vtype, x)
                    voxels.append(vox)
                    if self.symmetric and level > 0:
                        voxels.append(vox.mirrored(self.offset))
                    continue
                if not self.coset_hit(level, vtype):
                    self.nodes = nodes
                    return None, (level, vtype)
                if self.symmetric and level == 0:
                    # one representative of each {type, mirror} pair at level 1
                    nxt.extend(t for t in children(0, vtype) if t < mirror_type(1, t))
                else:
                    nxt.extend(children(level, vtype))
            frontier = nxt
            level += 1
        self.nodes = nodes
        voxels.sort(key=lambda v: (v.level, v.vtype))
        return DyadicDomain(voxels, self.offset), None


def _margin(rho: Fraction, dbound: int) -> Fraction:
    return Fraction(1, 2 * rho.denominator * dbound)


def _decide(p, dilation, dbound, symmetric, solver, max_level, offset):
    search = DyadicSearch(p, dilation, solver, symmetric, offset)
    domain, coset = search.run(max_level)
    if domain is not None:
        return CoveringVerdict(BOUNDED, dilation, dbound, domain=domain, offset=search.offset,
                               nodes=search.nodes)
    return CoveringVerdict(UNBOUNDED, dilation, dbound, witness_coset=coset, offset=search.offset,
                           nodes=search.nodes)


def decide_le(p: HPolytope, rho, dbound: Optional[int] = None, *, symmetric: Optional[bool] = None,
              solver: str = "exact", max_level: Optional[int] = None,
              offset=CENTERED) -> CoveringVerdict:
    """Decide ``mu(p) <= rho``: bounded means yes, unbounded means ``mu(p) > rho``."""
    rho = Fraction(rho)
    if rho <= 0:
        raise ValueError(f"rho must be positive, got {rho}")
    if dbound is None:
        dbound = denominator_bound(p)
    return _decide(p, rho + _margin(rho, dbound), dbound, symmetric, solver, max_level, offset)


def decide_ge(p: HPolytope, rho, dbound: Optional[int] = None, *, symmetric: Optional[bool] = None,
              solver: str = "exact", max_level: Optional[int] = None,
              offset=CENTERED) -> CoveringVerdict:
    """Decide ``mu(p) >= rho``: bounded means ``mu(p) < rho``, unbounded means yes."""
    rho = Fraction(rho)
    if dbound is None:
        dbound = denominator_bound(p)
    dilation = rho - _margin(rho, dbound)
    if dilation <= 0:
        raise ValueError(f"rho - margin = {dilation} is not positive")
    return _decide(p, dilation, dbound, symmetric, solver, max_level, offset)


def domain_fits(domain: DyadicDomain, p: HPolytope, dilation) -> bool:
    """Independent re-check: every closed voxel lies in ``{A y <= dilation * b}``.

    A row attains its maximum over a cube at the corner picked by the signs
    of the row, so one comparison per row and voxel suffices.
    """
    dilation = Fraction(dilation)
    rhs = [dilation * bi for bi in p.b]
    pos = _pos_sums(p.a)
    for vox in domain:
        base, size = vox.corner(domain.offset), vox.size
        for row, r, ps in zip(p.a, rhs, pos):
            if sum(ai * yi for ai, yi in zip(row, base)) + size * ps > r:
                return False
    return True
