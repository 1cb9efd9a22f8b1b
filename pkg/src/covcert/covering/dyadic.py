"""Dyadic voxels and dyadic fundamental domains of Z^d."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class DyadicVoxel:
    """The half-open cube ``displacement + vtype/2^level + [0, 2^-level)^d``.

    Methods taking ``offset`` place the whole dyadic grid at ``offset`` in
    every coordinate instead of at the origin.
    """

    level: int
    vtype: tuple[int, ...]
    displacement: tuple[int, ...]

    def __post_init__(self):
        side = 1 << self.level
        if self.level < 0 or any(not 0 <= t < side for t in self.vtype):
            raise ValueError(f"bad voxel type {self.vtype} at level {self.level}")
        if len(self.vtype) != len(self.displacement):
            raise ValueError("type and displacement dimensions differ")

    def corner(self, offset=0) -> tuple[Fraction, ...]:
        side = 1 << self.level
        return tuple(offset + p + Fraction(t, side) for p, t in zip(self.displacement, self.vtype))

    @property
    def size(self) -> Fraction:
        return Fraction(1, 1 << self.level)

    def corners(self, offset=0) -> list[tuple[Fraction, ...]]:
        """The ``2^d`` corners of the closed cube."""
        base, e = self.corner(offset), self.size
        return [tuple(c + e * s for c, s in zip(base, bits)) for bits in product((0, 1), repeat=len(base))]

    def mirrored(self, offset=0) -> "DyadicVoxel":
        """Point reflection through the origin (as a closed cube); ``2 * offset`` must be an integer."""
        shift = 2 * Fraction(offset)
        if shift.denominator != 1:
            raise ValueError(f"grid offset {offset} is not a half-integer")
        return DyadicVoxel(self.level, mirror_type(self.level, self.vtype),
                           tuple(-int(shift) - p - 1 for p in self.displacement))


def mirror_type(level: int, vtype: Sequence[int]) -> tuple[int, ...]:
    top = (1 << level) - 1
    return tuple(top - t for t in vtype)


def children(level: int, vtype: Sequence[int]) -> list[tuple[int, ...]]:
    return [tuple(2 * t + b for t, b in zip(vtype, bits)) for bits in product((0, 1), repeat=len(vtype))]


def parent(level: int, vtype: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return level - 1, tuple(t >> 1 for t in vtype)


@dataclass(frozen=True)
class DyadicDomain:
    """Voxels on the dyadic grid anchored at ``offset * (1, ..., 1)``."""

    voxels: tuple[DyadicVoxel, ...]
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "voxels", tuple(self.voxels))
        object.__setattr__(self, "offset", Fraction(self.offset))

    def __iter__(self):
        return iter(self.voxels)

    def __len__(self):
        return len(self.voxels)

    @property
    def depth(self) -> int:
        return max(v.level for v in self.voxels)

    def measure(self) -> Fraction:
        return sum((Fraction(1, 1 << (v.level * len(v.vtype))) for v in self.voxels), Fraction(0))

    def is_fundamental(self) -> bool:
        return is_full_subtree((v.level, v.vtype) for v in self.voxels)


def is_full_subtree(nodes: Iterable[tuple[int, Sequence[int]]]) -> bool:
    """Whether the (level, type) pairs are the leaves of a full subtree of the
    dyadic tree containing the root.

    Equivalent to: no repeats, no node is an ancestor of another, and the
    leaf measures add up to one.
    """
    leaves = set()
    total = Fraction(0)
    dim = None
    for level, vtype in nodes:
        vtype = tuple(vtype)
        if dim is None:
            dim = len(vtype)
        if len(vtype) != dim or level < 0 or any(not 0 <= t < (1 << level) for t in vtype):
            return False
        if (level, vtype) in leaves:
            return False
        leaves.add((level, vtype))
        total += Fraction(1, 1 << (level * dim))
    if not leaves or total != 1:
        return False
    for level, vtype in leaves:
        lv, t = level, vtype
        while lv > 0:
            lv, t = parent(lv, t)
            if (lv, t) in leaves:
                return False
    return True
