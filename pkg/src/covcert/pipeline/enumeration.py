"""Primitive strictly increasing velocity vectors with bounded sum."""

from __future__ import annotations

from math import gcd
from typing import Iterator


def enumerate_volume_vectors(max_sum: int) -> Iterator[tuple[int, int, int, int]]:
    """All ``v1 < v2 < v3 < v4`` with ``gcd(v) = 1`` and ``sum(v) <= max_sum``, lexicographically."""
    for v1 in range(1, max_sum):
        if v1 + (v1 + 1) + (v1 + 2) + (v1 + 3) > max_sum:
            break
        for v2 in range(v1 + 1, max_sum):
            if v1 + v2 + (v2 + 1) + (v2 + 2) > max_sum:
                break
            g2 = gcd(v1, v2)
            for v3 in range(v2 + 1, max_sum):
                top = max_sum - v1 - v2 - v3
                if top <= v3:
                    break
                g3 = gcd(g2, v3)
                if g3 == 1:
                    for v4 in range(v3 + 1, top + 1):
                        yield (v1, v2, v3, v4)
                else:
                    for v4 in range(v3 + 1, top + 1):
                        if gcd(g3, v4) == 1:
                            yield (v1, v2, v3, v4)

