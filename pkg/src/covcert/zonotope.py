"""Lonely-runner zonotopes: generators, volume vectors and facet descriptions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .exact_linalg import (
    DEFAULT_LLL_DELTA,
    Matrix,
    as_matrix,
    hnf_columns,
    int_det,
    lll_rows,
    solve_square,
)


class GeneralPositionError(ValueError):
    """Some n-1 generators fail to form a basis."""


class NotPrimitiveError(ValueError):
    pass


@dataclass(frozen=True)
class VolumeVector:
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(v) for v in self.entries))
        if len(self.entries) < 2:
            raise ValueError("a volume vector needs at least two entries")
        if any(v <= 0 for v in self.entries):
            raise ValueError(f"volume vector entries must be positive: {self.entries}")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def primitive(self) -> bool:
        return math.gcd(*self.entries) == 1

    @property
    def strong(self) -> bool:
        return len(set(self.entries)) == len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return "(" + ", ".join(map(str, self.entries)) + ")"


@dataclass(frozen=True)
class Zonotope:
    """Zonotope generated by the columns of an (n-1) x n integer matrix."""

    generators: Matrix

    def __post_init__(self):
        object.__setattr__(self, "generators", as_matrix(self.generators))

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]]) -> "Zonotope":
        return cls(tuple(zip(*columns)))

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def n(self) -> int:
        return len(self.generators[0])

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.generators))


@dataclass(frozen=True)
class HPolytope:
    """The polytope ``{x : a @ x <= b}``; ``b`` may hold ints or Fractions."""

    a: Matrix
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", as_matrix(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.b) != len(self.a):
            raise ValueError("a and b have different numbers of rows")

    @property
    def dim(self) -> int:
        return len(self.a[0])

    @property
    def integral(self) -> bool:
        return all(isinstance(x, int) or x.denominator == 1 for x in self.b)

    def dilate(self, factor) -> "HPolytope":
        factor = Fraction(factor)
        return HPolytope(self.a, tuple(factor * x for x in self.b))

    def contains(self, point: Sequence) -> bool:
        return all(
            sum(ai * xi for ai, xi in zip(row, point)) <= bi
            for row, bi in zip(self.a, self.b)
        )

    def centrally_symmetric(self) -> bool:
        rows = {(r, b) for r, b in zip(self.a, self.b)}
        return all((tuple(-x for x in r), b) in rows for r, b in rows)


def _minors_excluding(columns: Sequence[Sequence[int]]) -> list[int]:
    """Signed determinants ``det(U without u_i)``, i = 0..n-1."""
    return [int_det(list(zip(*(columns[:i] + columns[i + 1:])))) for i in range(len(columns))]


def volume_vector(z: Zonotope) -> VolumeVector:
    cols = list(z.columns)
    if len(cols) != z.dim + 1:
        raise ValueError(f"expected {z.dim + 1} generators in dimension {z.dim}, got {len(cols)}")
    vols = [abs(x) for x in _minors_excluding(cols)]
    if 0 in vols:
        raise GeneralPositionError(f"generators not in linear general position: {cols}")
    return VolumeVector(tuple(vols))


def check_sign_relation(z: Zonotope) -> tuple[int, ...]:
    """Signs ``s`` (with ``s[0] == 1``) such that ``sum s_i v_i u_i == 0``.

    The alternating cofactors ``(-1)^i det(U without u_i)`` span the kernel
    of the generator matrix, so their signs are the answer.
    """
    cols = list(z.columns)
    minors = _minors_excluding(cols)
    if 0 in minors:
        raise GeneralPositionError(f"generators not in linear general position: {cols}")
    kernel = [(-1) ** i * m for i, m in enumerate(minors)]
    s0 = 1 if kernel[0] > 0 else -1
    return tuple(s0 * (1 if k > 0 else -1) for k in kernel)


def generators_from_volume_vector(v, delta: Fraction = DEFAULT_LLL_DELTA) -> Zonotope:
    """Build integer generators with volume vector ``v``.

    Start from ``-v_n e_i`` and ``(v_1, ..., v_{n-1})``, map the lattice they
    generate onto Z^(n-1) through the Hermite basis, then LLL-reduce the rows
    so the zonotope comes out round.
    """
    v = v if isinstance(v, VolumeVector) else VolumeVector(tuple(v))
    if not v.primitive:
        raise NotPrimitiveError(f"volume vector {v} is not primitive")
    n = v.n
    vn = v.entries[-1]
    mprime = tuple(
        tuple(-vn if j == i else 0 for j in range(n - 1)) + (v.entries[i],) for i in range(n - 1)
    )
    h, _ = hnf_columns(mprime)
    basis = [row[: n - 1] for row in h]
    cols = []
    for col in zip(*mprime):
        x = solve_square(basis, col)
        if any(c.denominator != 1 for c in x):
            raise ArithmeticError("Hermite basis does not generate the columns")  # unreachable
        cols.append([int(c) for c in x])
    rows = tuple(zip(*cols))
    if n > 2:
        rows = lll_rows(rows, delta)
    return Zonotope(rows)


def wedge(vectors: Sequence[Sequence[int]], dim: int) -> tuple[int, ...]:
    """Integer functional ``x -> det(vectors | x)`` for ``dim - 1`` vectors."""
    out = []
    for k in range(dim):
        minor = [[vec[r] for vec in vectors] for r in range(dim) if r != k]
        m = int_det(minor) if minor else 1
        out.append(m if (k + dim) % 2 == 1 else -m)
    return tuple(out)


def facet_inequalities(z: Zonotope) -> HPolytope:
    """Facets of the origin-symmetric zonotope ``1/2 sum [-u_i, u_i]``.

    For each ``(d-1)``-subset S the pair ``+-A_S x <= b_S`` with
    ``b_S = 1/2 sum |A_S u_i|``; rows are doubled to clear the half and then
    divided by the gcd of the row and its right-hand side.
    """
    d = z.dim
    cols = z.columns
    a_rows, b_vals = [], []
    for subset in combinations(range(len(cols)), d - 1):
        normal = wedge([cols[i] for i in subset], d)
        if not any(normal):
            continue
        rhs = sum(abs(sum(x * y for x, y in zip(normal, u))) for u in cols)
        row = tuple(2 * x for x in normal)
        g = math.gcd(*row, rhs)
        row = tuple(x // g for x in row)
        rhs //= g
        a_rows.append(row)
        b_vals.append(rhs)
        a_rows.append(tuple(-x for x in row))
        b_vals.append(rhs)
    return HPolytope(tuple(a_rows), tuple(b_vals))


def sign_points(z: Zonotope) -> list[tuple[Fraction, ...]]:
    """All points ``1/2 sum +-u_i`` (a superset of the vertices)."""
    cols = z.columns
    pts = []
    for mask in range(1 << len(cols)):
        pts.append(
            tuple(
                Fraction(sum(c[k] if mask >> i & 1 else -c[k] for i, c in enumerate(cols)), 2)
                for k in range(z.dim)
            )
        )
    return pts
