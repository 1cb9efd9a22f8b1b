"""Command line entry point: ``covcert <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .covering import CENTERED, exact_mu
from .exact_linalg import DEFAULT_LLL_DELTA
from .ilp.lattice import SOLVER_MODES
from .pipeline.campaign import (
    CampaignError,
    ConjectureCounterexample,
    certify_instance,
    run_campaign,
    runner_rho,
)
from .pipeline.certificate import Header, certificate_line, header_line
from .pipeline.checker import check_certificates
from .pipeline.enumeration import enumerate_volume_vectors
from .zonotope import HPolytope, VolumeVector, facet_inequalities, generators_from_volume_vector

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def delta_arg(text: str) -> Fraction:
    delta = fraction_arg(text)
    if not Fraction(1, 4) < delta < 1:
        raise argparse.ArgumentTypeError("the LLL parameter must lie strictly between 1/4 and 1")
    return delta


def vector_arg(tokens) -> tuple[int, ...]:
    parts = [p for tok in tokens for p in tok.replace(",", " ").split()]
    try:
        v = tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"not an integer vector: {' '.join(tokens)}") from None
    if len(v) < 2 or any(x <= 0 for x in v):
        raise UsageError("a velocity vector needs at least two positive entries")
    if not VolumeVector(v).primitive:
        raise UsageError(f"{VolumeVector(v)} is not primitive")
    return v


def read_hpoly(path) -> HPolytope:
    """One inequality ``a1 ... ad b`` (meaning a.x <= b) per line; ``#`` starts a comment."""
    rows, rhs = [], []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].split()
            if not line:
                continue
            try:
                nums = [int(x) for x in line]
            except ValueError:
                raise UsageError(f"{path}: non-integer entry in {' '.join(line)!r}") from None
            rows.append(tuple(nums[:-1]))
            rhs.append(nums[-1])
    if not rows or len({len(r) for r in rows}) != 1 or not rows[0]:
        raise UsageError(f"{path}: expected rows of equal length 'a1 ... ad b'")
    if any(b <= 0 for b in rhs):
        raise UsageError(f"{path}: the origin must be interior (all b > 0)")
    return HPolytope(tuple(rows), tuple(rhs))


def cmd_enumerate(args):
    out = sys.stdout
    buf = []
    for v in enumerate_volume_vectors(args.max_sum):
        buf.append("%d,%d,%d,%d\n" % v)
        if len(buf) >= 65536:
            out.write("".join(buf))
            buf.clear()
    out.write("".join(buf))
    return OK


def cmd_build(args):
    v = vector_arg(args.vector)
    z = generators_from_volume_vector(v, args.lll_delta)
    p = facet_inequalities(z)
    print(f"volume vector {VolumeVector(v)}")
    print("generators (columns):")
    for col in z.columns:
        print("  " + " ".join(f"{x:>3}" for x in col))
    print(f"inequalities A x <= b ({len(p.a)} rows):")
    for row, b in zip(p.a, p.b):
        print("  " + " ".join(f"{x:>4}" for x in row) + f"  <= {b}")
    return OK


def _symmetric(args):
    return False if args.no_symmetric else None


def cmd_certify(args):
    v = vector_arg(args.vector)
    rho = args.rho if args.rho is not None else runner_rho(len(v))
    if rho <= 0:
        raise UsageError("rho must be positive")
    status = OK
    try:
        cert = certify_instance(v, rho, solver=args.solver, symmetric=_symmetric(args), delta=args.lll_delta)
    except ConjectureCounterexample as exc:
        cert = exc.certificate
        status = FAILED
    text = header_line(Header(rho, CENTERED)) + "\n" + certificate_line(cert) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if status == FAILED:
        print(f"{VolumeVector(v)}: mu > {rho}, uncovered coset recorded", file=sys.stderr)
    else:
        what = "mu <= " if cert.tight else "mu < "
        print(f"{VolumeVector(v)}: {what}{rho} (depth {cert.depth})", file=sys.stderr)
    return status


def _campaign(args, out):
    def progress(count):
        if args.progress and count % 10000 == 0:
            print(f"... {count}", file=sys.stderr)

    try:
        report = run_campaign(args.max_sum, args.jobs, out, solver=args.solver,
                              symmetric=_symmetric(args), progress=progress)
    except CampaignError as exc:
        print(f"campaign aborted: {exc}", file=sys.stderr)
        return None
    return report


def cmd_certify_all(args):
    report = _campaign(args, args.out)
    if report is None:
        return FAILED
    print(report.text())
    print(json.dumps(report.summary(), indent=1))
    return OK if report.ok else FAILED


def cmd_tight_scan(args):
    report = _campaign(args, None)
    if report is None:
        return FAILED
    for v in report.tight:
        print(",".join(map(str, v)))
    print(f"{len(report.tight)} tight of {report.total}", file=sys.stderr)
    return OK if report.ok else FAILED


def cmd_check(args):
    try:
        report = check_certificates(args.path)
    except OSError as exc:
        raise UsageError(str(exc)) from None
    for failure in report.failures:
        print(failure)
    for v in report.counterexamples:
        print(f"counterexample: {VolumeVector(v)} has mu > {report.rho}")
    print(f"records {report.records}: {report.strict} strict, {len(report.tight)} tight, "
          f"{len(report.failures)} failures")
    for v in report.tight:
        print(f"  tight {VolumeVector(v)}")
    print("OK" if report.ok else "FAILED")
    return OK if report.ok else FAILED


def cmd_mu(args):
    if (args.hpoly is None) == (not args.vector):
        raise UsageError("give either a velocity vector or --hpoly FILE")
    if args.hpoly:
        p = read_hpoly(args.hpoly)
    else:
        p = facet_inequalities(generators_from_volume_vector(vector_arg(args.vector), args.lll_delta))
    res = exact_mu(p, solver=args.solver)
    print(f"{res.mu.numerator}/{res.mu.denominator}")
    if args.verbose:
        lo, hi = res.interval
        print(f"interval [{lo}, {hi}], D = {res.denom_bound}, {res.expansions} expansions, "
              f"{len(res.domain)} voxels, depth {res.domain.depth}")
        print("least covered point " + " ".join(map(str, res.witness)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="covcert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_opts(p, default):
        p.add_argument("--solver", choices=SOLVER_MODES, default=default,
                       help=f"integer feasibility engine (default {default})")

    def delta_opt(p):
        p.add_argument("--lll-delta", type=delta_arg, default=DEFAULT_LLL_DELTA, metavar="P/Q")

    p = sub.add_parser("enumerate", help="list primitive increasing 4-vectors by sum")
    p.add_argument("--max-sum", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("build", help="generators and facets for a velocity vector")
    p.add_argument("vector", nargs="+")
    delta_opt(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("certify", help="certificate for one velocity vector")
    p.add_argument("vector", nargs="+")
    p.add_argument("--rho", type=fraction_arg)
    p.add_argument("--out")
    p.add_argument("--no-symmetric", action="store_true")
    solver_opts(p, "bbox")
    delta_opt(p)
    p.set_defaults(func=cmd_certify)

    for name, func, helptext in (("certify-all", cmd_certify_all, "certify every vector up to a sum"),
                                 ("tight-scan", cmd_tight_scan, "list the vectors with mu = 3/5")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--max-sum", type=int, required=True)
        p.add_argument("--jobs", type=int, default=1)
        if name == "certify-all":
            p.add_argument("--out", required=True)
        p.add_argument("--no-symmetric", action="store_true")
        p.add_argument("--progress", action="store_true")
        solver_opts(p, "bbox")
        p.set_defaults(func=func)

    p = sub.add_parser("check", help="verify a certificate file")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("mu", help="exact covering radius")
    p.add_argument("vector", nargs="*")
    p.add_argument("--hpoly", metavar="FILE")
    p.add_argument("-v", "--verbose", action="store_true")
    solver_opts(p, "bbox")
    delta_opt(p)
    p.set_defaults(func=cmd_mu)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_sum", None) is not None and args.max_sum < 1:
        parser.error("--max-sum must be positive")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
