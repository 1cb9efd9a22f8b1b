"""Certify every velocity vector up to a volume cutoff against rho = (n-1)/(n+1)."""

from __future__ import annotations

import multiprocessing
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Optional, Sequence

from ..covering import (
    CENTERED,
    SearchLimitExceeded,
    decide_ge,
    decide_le,
    denominator_bound,
    gram_bound,
)
from ..exact_linalg import DEFAULT_LLL_DELTA
from ..zonotope import VolumeVector, facet_inequalities, generators_from_volume_vector
from .certificate import COSET, DOMAIN, Certificate, Header, certificate_line, header_line
from .enumeration import enumerate_volume_vectors

# the cheap margin is not a valid denominator bound, so its search may hover at mu forever
CHEAP_MAX_LEVEL = 16


class ConjectureCounterexample(RuntimeError):
    """A dyadic point escapes ``(rho + eps) Z + Z^d`` with a valid margin."""

    def __init__(self, certificate: Certificate):
        self.certificate = certificate
        super().__init__(
            f"{VolumeVector(certificate.volume_vector)}: coset {certificate.coset} is not covered"
        )


class CampaignError(RuntimeError):
    def __init__(self, vector, message):
        self.vector = vector
        super().__init__(f"{VolumeVector(vector)}: {message}")


def runner_rho(n: int) -> Fraction:
    return Fraction(n - 1, n + 1)


def _domain_cert(v, gen, rho, verdict, dbound=None):
    voxels = tuple((vx.level, vx.vtype, vx.displacement) for vx in verdict.domain)
    return Certificate(tuple(v), gen, verdict.dilation_used - rho, DOMAIN, voxels=voxels, denom_bound=dbound)


def certify_instance(v: Sequence[int], rho: Optional[Fraction] = None, *, solver: str = "bbox",
                     symmetric: Optional[bool] = None, delta: Fraction = DEFAULT_LLL_DELTA) -> Certificate:
    """Certificate that ``mu(Z_v) <= rho``; strict (negative margin) whenever possible."""
    v = tuple(v)
    rho = runner_rho(len(v)) if rho is None else Fraction(rho)
    z = generators_from_volume_vector(v, delta)
    p = facet_inequalities(z)
    opts = dict(symmetric=symmetric, solver=solver, offset=CENTERED)

    verdict = None
    try:
        verdict = decide_ge(p, rho, gram_bound(p), max_level=CHEAP_MAX_LEVEL, **opts)
    except SearchLimitExceeded:
        pass
    if verdict is not None and verdict.bounded:
        return _domain_cert(v, z.generators, rho, verdict)

    dbound = denominator_bound(p)
    verdict = decide_ge(p, rho, dbound, **opts)
    if verdict.bounded:
        return _domain_cert(v, z.generators, rho, verdict)

    verdict = decide_le(p, rho, dbound, **opts)
    if verdict.bounded:
        return _domain_cert(v, z.generators, rho, verdict, dbound)
    raise ConjectureCounterexample(
        Certificate(v, z.generators, verdict.dilation_used - rho, COSET,
                    coset=verdict.witness_coset, denom_bound=dbound)
    )


@dataclass
class CampaignReport:
    total: int = 0
    certified_strict: int = 0
    tight: list = field(default_factory=list)
    depth_histogram: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.total == self.certified_strict + len(self.tight)

    def add(self, v, depth, tight):
        self.total += 1
        self.depth_histogram[depth] += 1
        if tight:
            self.tight.append(tuple(v))
        else:
            self.certified_strict += 1

    def summary(self) -> dict:
        return {
            "total": self.total,
            "certified_strict": self.certified_strict,
            "tight": [list(v) for v in self.tight],
            "depth_histogram": {str(k): self.depth_histogram[k] for k in sorted(self.depth_histogram)},
            "failures": list(self.failures),
        }

    def text(self) -> str:
        lines = [
            f"instances:        {self.total}",
            f"strictly below:   {self.certified_strict}",
            f"tight candidates: {len(self.tight)}",
        ]
        lines += [f"  {VolumeVector(v)}" for v in self.tight]
        lines.append("depth  count      share")
        for depth in sorted(self.depth_histogram):
            count = self.depth_histogram[depth]
            lines.append(f"{depth:>5}  {count:<9}  {100 * count / self.total:6.2f}%")
        lines += [f"FAILED {f}" for f in self.failures]
        return "\n".join(lines)


def _job(v, rho, solver, symmetric, delta):
    try:
        cert = certify_instance(v, rho, solver=solver, symmetric=symmetric, delta=delta)
    except ConjectureCounterexample as exc:
        return v, certificate_line(exc.certificate), None, False, "counterexample"
    except Exception as exc:  # reported with the vector by the parent
        return v, None, None, False, f"{type(exc).__name__}: {exc}"
    return v, certificate_line(cert), cert.depth, cert.tight, None


def run_campaign(max_sum: int, jobs: int = 1, out_path=None, *, rho: Optional[Fraction] = None,
                 solver: str = "bbox", symmetric: Optional[bool] = None,
                 delta: Fraction = DEFAULT_LLL_DELTA, progress=None) -> CampaignReport:
    """Certify all vectors with ``sum <= max_sum``; certificates are written in enumeration order.

    Raises :class:`CampaignError` at the first failing vector (after flushing
    everything before it). ``progress`` is called with the running count.
    """
    rho = runner_rho(4) if rho is None else Fraction(rho)
    report = CampaignReport()
    work = partial(_job, rho=rho, solver=solver, symmetric=symmetric, delta=delta)
    vectors = enumerate_volume_vectors(max_sum)
    out = open(out_path, "w") if out_path is not None else None
    pool = None
    try:
        if out:
            out.write(header_line(Header(rho, CENTERED, max_sum)) + "\n")
        if jobs > 1:
            pool = multiprocessing.Pool(jobs)
            results = pool.imap(work, vectors, chunksize=64)
        else:
            results = map(work, vectors)
        for v, line, depth, tight, err in results:
            if err is not None:
                report.failures.append(f"{VolumeVector(v)}: {err}")
                if out and line:
                    out.write(line + "\n")
                raise CampaignError(v, err)
            if out:
                out.write(line + "\n")
            report.add(v, depth, tight)
            if progress is not None:
                progress(report.total)
    finally:
        if pool is not None:
            pool.terminate()
        if out:
            out.close()
    return report
