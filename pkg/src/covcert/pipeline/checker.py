"""Stand-alone verification of a certificate file.

Nothing here reuses the search, the zonotope module or the enumeration; only
the exact determinant is shared. Steps:

``1``   the records are exactly the vectors ``1 <= v1 < ... < vn``, ``gcd = 1``,
        ``sum <= max_sum``, in lexicographic order
``2a``  the generators have the stated volume vector
``2b``  a positive margin is below ``1/(s D)``, ``D`` recomputed here
``2c``  the voxels form a dyadic fundamental domain inside ``(rho + eps) Z``
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional

from ..exact_linalg import int_det
from .certificate import COSET, DOMAIN, CertificateFormatError, read_certificates


@dataclass(frozen=True)
class Failure:
    vector: Optional[tuple[int, ...]]
    step: str
    message: str

    def __str__(self):
        where = "file" if self.vector is None else ",".join(map(str, self.vector))
        return f"[{self.step}] {where}: {self.message}"


@dataclass
class CheckReport:
    rho: Optional[Fraction] = None
    records: int = 0
    strict: int = 0
    tight: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.counterexamples

    def steps_failed(self) -> set[str]:
        return {f.step for f in self.failures}


def _vectors(n: int, max_sum: int, prefix=()) -> Iterator[tuple[int, ...]]:
    # increasing n-tuples by recursion; gcd filtered by the caller
    k = len(prefix)
    if k == n:
        yield prefix
        return
    low = prefix[-1] + 1 if prefix else 1
    used = sum(prefix)
    rest = n - k
    # the remaining entries are at least x, x+1, ..., x+rest-1
    x = low
    while used + rest * x + rest * (rest - 1) // 2 <= max_sum:
        yield from _vectors(n, max_sum, prefix + (x,))
        x += 1


def expected_vectors(n: int, max_sum: int) -> Iterator[tuple[int, ...]]:
    return (v for v in _vectors(n, max_sum) if math.gcd(*v) == 1)


def _minor(cols, rows):
    return int_det([[c[r] for c in cols] for r in rows])


def _volume_vector(gen):
    cols = list(zip(*gen))
    return tuple(abs(int_det([[c[r] for c in cols[:i] + cols[i + 1:]] for r in range(len(gen))]))
                 for i in range(len(cols)))


def _facets(gen):
    """Pairs (normal, half-width) with ``-w <= normal . y <= w`` describing ``Z``, doubled to integers."""
    d = len(gen)
    cols = list(zip(*gen))
    out = []
    for s in combinations(range(len(cols)), d - 1):
        sub = [cols[i] for i in s]
        normal = tuple((-1) ** (d - 1 + j) * _minor(sub, [r for r in range(d) if r != j]) for j in range(d))
        if not any(normal):
            continue
        width = sum(abs(sum(a * u for a, u in zip(normal, c))) for c in cols)
        g = math.gcd(*(2 * a for a in normal), width)
        out.append((tuple(2 * a // g for a in normal), width // g))
    return out


def _dbound(facets, d):
    rows = []
    for normal, w in facets:
        rows.append(normal + (w,))
        rows.append(tuple(-a for a in normal) + (w,))
    best = 0
    for sub in combinations(sorted(set(rows)), d + 1):
        best = max(best, abs(int_det(sub)))
    return best


def _subtree_ok(types, dim):
    seen = set()
    total = Fraction(0)
    for level, t in types:
        if level < 0 or len(t) != dim or any(not 0 <= x < (1 << level) for x in t):
            return "voxel type out of range"
        if (level, t) in seen:
            return f"type {t} at level {level} repeated"
        seen.add((level, t))
        total += Fraction(1, 1 << (level * dim))
    if total != 1:
        return f"voxel measure is {total}, not 1"
    for level, t in seen:
        lv, tt = level, t
        while lv > 0:
            lv, tt = lv - 1, tuple(x >> 1 for x in tt)
            if (lv, tt) in seen:
                return f"type {t} at level {level} lies inside another voxel"
    return None


def _voxel_inside(facets, dil, offset, level, t, x):
    e = Fraction(1, 1 << level)
    corner = [offset + xi + ti * e for xi, ti in zip(x, t)]
    for normal, w in facets:
        lin = sum(a * c for a, c in zip(normal, corner))
        hi = lin + sum(a for a in normal if a > 0) * e
        lo = lin + sum(a for a in normal if a < 0) * e
        if hi > dil * w or -lo > dil * w:
            return False
    return True


def _coset_uncovered(gen, facets, dil, point):
    """No integer translate of ``point`` lies in ``dil * Z`` (box search)."""
    half = [Fraction(sum(abs(u) for u in row), 2) * dil for row in gen]
    ranges = [range(math.ceil(-h - p), math.floor(h - p) + 1) for h, p in zip(half, point)]

    def rec(i, y):
        if i == len(ranges):
            return all(abs(sum(a * c for a, c in zip(normal, y))) <= dil * w for normal, w in facets)
        return any(rec(i + 1, y + [point[i] + k]) for k in ranges[i])

    return not rec(0, [])


def _check_record(cert, rho, offset, report):
    v = cert.volume_vector
    n = len(v)
    gen = cert.generators
    fail = lambda step, msg: report.failures.append(Failure(v, step, msg))

    if len(gen) != n - 1 or any(len(r) != n for r in gen):
        fail("2a", f"generator matrix is not {n - 1} x {n}")
        return
    vol = _volume_vector(gen)
    if vol != tuple(v):
        fail("2a", f"generators have volume vector {vol}")
        return

    facets = _facets(gen)
    eps = cert.epsilon
    s = rho.denominator
    if eps > 0:
        dbound = _dbound(facets, n - 1)
        if cert.denom_bound != dbound:
            fail("2b", f"recorded D={cert.denom_bound}, recomputed D={dbound}")
            return
        if not eps < Fraction(1, s * dbound):
            fail("2b", f"eps={eps} is not below 1/({s}*{dbound})")
            return
    dil = rho + eps
    if dil <= 0:
        fail("2b", f"rho + eps = {dil} is not positive")
        return

    if cert.kind == COSET:
        level, t = cert.coset
        point = [offset + Fraction(x, 1 << level) for x in t]
        if eps <= 0:
            fail("2b", "a coset record needs a positive margin")
        elif _coset_uncovered(gen, facets, dil, point):
            report.counterexamples.append(tuple(v))
        else:
            fail("2c", f"coset point {tuple(map(str, point))} is covered")
        return

    problem = _subtree_ok([(lv, t) for lv, t, _ in cert.voxels], n - 1)
    if problem:
        fail("2c", problem)
        return
    for level, t, x in cert.voxels:
        if not _voxel_inside(facets, dil, offset, level, t, x):
            fail("2c", f"voxel {(level, t, x)} sticks out of ({dil}) Z")
            return
    if eps >= 0:
        report.tight.append(tuple(v))
    else:
        report.strict += 1


def check_stream(fh) -> CheckReport:
    report = CheckReport()
    try:
        header, records = read_certificates(fh)
    except CertificateFormatError as exc:
        report.failures.append(Failure(None, "1", str(exc)))
        return report
    report.rho = header.rho
    expected = None
    prev = None
    n = None
    try:
        for cert in records:
            v = tuple(cert.volume_vector)
            report.records += 1
            if n is None:
                n = len(v)
                if header.max_sum is not None:
                    expected = expected_vectors(n, header.max_sum)
                if header.max_sum is not None and header.rho != Fraction(n - 1, n + 1):
                    report.failures.append(Failure(None, "1", f"rho {header.rho} is not {n - 1}/{n + 1}"))
            if expected is not None:
                want = next(expected, None)
                if v != want:
                    report.failures.append(Failure(v, "1", f"expected {want} at record {report.records}"))
                    return report
            elif prev is not None and not v > prev:
                report.failures.append(Failure(v, "1", "records are not strictly increasing"))
            if len(v) != n or math.gcd(*v) != 1 or any(a >= b for a, b in zip(v, v[1:])) or v[0] < 1:
                report.failures.append(Failure(v, "1", "not a primitive increasing positive vector"))
            prev = v
            _check_record(cert, header.rho, header.offset, report)
    except CertificateFormatError as exc:
        report.failures.append(Failure(None, "1", f"record {report.records}: {exc}"))
        return report
    if expected is not None:
        missing = next(expected, None)
        if missing is not None:
            report.failures.append(Failure(missing, "1", "vector missing from the file"))
    return report


def check_certificates(path) -> CheckReport:
    with open(path) as fh:
        return check_stream(fh)
