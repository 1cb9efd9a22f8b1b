"""Repeated integer feasibility ``a @ x <= h`` for a fixed integer matrix.

The dyadic search asks the same question with thousands of right-hand
sides, so the matrix is prepared once. Three interchangeable modes:

``exact``   branch-and-bound on the exact LP relaxation (default)
``bbox``    scan a precomputed finite candidate set in lexicographic order
``hybrid``  floating-point MIP proposal, rounded and checked exactly;
            anything unverified falls through to ``exact``
"""

from __future__ import annotations

import math
from itertools import product
from typing import Optional, Sequence

from .mip import bnb_feasible

SOLVER_MODES = ("exact", "bbox", "hybrid")


class LatticeSolver:
    def __init__(self, a: Sequence[Sequence[int]], mode: str = "exact", ranges=None):
        if mode not in SOLVER_MODES:
            raise ValueError(f"unknown solver mode {mode!r}")
        self.a = [tuple(r) for r in a]
        self.mode = mode
        self.gcds = [math.gcd(*r) or 1 for r in self.a]
        self.reduced = [tuple(x // g for x in r) for r, g in zip(self.a, self.gcds)]
        self.calls = 0
        self._candidates = None
        if mode == "bbox":
            if ranges is None:
                raise ValueError("bbox mode needs candidate ranges")
            self._candidates = [
                (x, tuple(sum(c * v for c, v in zip(row, x)) for row in self.a))
                for x in product(*ranges)
            ]
        self._milp = None

    def find(self, h: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Integer ``x`` with ``a @ x <= h``, or None. ``h`` must be integer."""
        self.calls += 1
        if self.mode == "bbox":
            for x, ax in self._candidates:
                if all(u <= w for u, w in zip(ax, h)):
                    return x
            return None
        hr = [w // g for w, g in zip(h, self.gcds)]
        if self.mode == "hybrid":
            x = self._propose(hr)
            if x is not None and all(
                sum(c * v for c, v in zip(row, x)) <= w for row, w in zip(self.reduced, hr)
            ):
                return x
        res = bnb_feasible(self.reduced, hr)
        return res.witness if res.feasible else None

    def _propose(self, h):
        import numpy as np
        from scipy.optimize import LinearConstraint, milp

        if self._milp is None:
            self._milp = np.array(self.reduced, dtype=float)
        k = self._milp.shape[1]
        try:
            res = milp(
                c=np.zeros(k),
                constraints=LinearConstraint(self._milp, -np.inf, np.array(h, dtype=float)),
                integrality=np.ones(k),
                bounds=(-np.inf, np.inf),
            )
        except (ValueError, OverflowError):
            return None
        if res.x is None:
            return None
        return tuple(int(round(v)) for v in res.x)
