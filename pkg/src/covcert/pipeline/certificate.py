"""Line-oriented certificate files.

The first line is a header object; every further line is one record::

    {"format":"covcert/1","rho":"3/5","offset":"-1/2","max_sum":30}
    {"v":[1,2,3,5],"gen":[[...],[...],[...]],"eps":"-1/4160","kind":"domain","voxels":[[0,[0,0,0],[-1,0,0]]]}

Voxel ``(level, t, x)`` is the cube ``offset + x + t/2^level + [0, 2^-level)^d``.
``eps`` is a signed reduced fraction, ``D`` appears only when ``eps`` is
positive, and a record carries either ``voxels`` (``[level, type,
displacement]`` triples) or ``coset`` (``[level, type]``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, TextIO

FORMAT = "covcert/1"
DOMAIN = "domain"
COSET = "coset"


class CertificateFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    volume_vector: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    epsilon: Fraction
    kind: str
    voxels: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...] = ()
    coset: Optional[tuple[int, tuple[int, ...]]] = None
    denom_bound: Optional[int] = None

    @property
    def tight(self) -> bool:
        """Positive margin: the instance could not be shown strictly below rho."""
        return self.epsilon > 0

    @property
    def depth(self) -> int:
        if self.kind == COSET:
            return self.coset[0]
        return max(level for level, _, _ in self.voxels)


@dataclass(frozen=True)
class Header:
    rho: Fraction
    offset: Fraction = Fraction(0)
    max_sum: Optional[int] = None


def format_fraction(x: Fraction, signed: bool = False) -> str:
    x = Fraction(x)
    sign = ""
    if signed:
        sign = "-" if x < 0 else "+"
        x = abs(x)
    return f"{sign}{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    if not isinstance(text, str) or "/" not in text:
        raise CertificateFormatError(f"expected a p/q string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CertificateFormatError(f"bad fraction {text!r}") from exc


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def header_line(header: Header) -> str:
    obj = {"format": FORMAT, "rho": format_fraction(header.rho), "offset": format_fraction(header.offset)}
    if header.max_sum is not None:
        obj["max_sum"] = header.max_sum
    return _dumps(obj)


def certificate_line(cert: Certificate) -> str:
    obj = {
        "v": list(cert.volume_vector),
        "gen": [list(r) for r in cert.generators],
        "eps": format_fraction(cert.epsilon, signed=True),
    }
    if cert.epsilon > 0:
        obj["D"] = cert.denom_bound
    obj["kind"] = cert.kind
    if cert.kind == DOMAIN:
        obj["voxels"] = [[lvl, list(t), list(x)] for lvl, t, x in cert.voxels]
    else:
        obj["coset"] = [cert.coset[0], list(cert.coset[1])]
    return _dumps(obj)


def _ints(xs, what):
    if not isinstance(xs, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in xs):
        raise CertificateFormatError(f"{what} must be a list of integers")
    return tuple(xs)


def parse_header(line: str) -> Header:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"header is not JSON: {exc}") from exc
    if not isinstance(obj, dict) or obj.get("format") != FORMAT:
        raise CertificateFormatError("missing or unknown format tag in header")
    max_sum = obj.get("max_sum")
    if max_sum is not None and not isinstance(max_sum, int):
        raise CertificateFormatError("max_sum must be an integer")
    return Header(parse_fraction(obj.get("rho")), parse_fraction(obj.get("offset", "0/1")), max_sum)


def parse_certificate(line: str) -> Certificate:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"record is not JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise CertificateFormatError("record must be an object")
    try:
        v = _ints(obj["v"], "v")
        gen = tuple(_ints(r, "gen row") for r in obj["gen"])
        eps = parse_fraction(obj["eps"])
        kind = obj["kind"]
        dbound = obj.get("D")
        if dbound is not None and not isinstance(dbound, int):
            raise CertificateFormatError("D must be an integer")
        if kind == DOMAIN:
            voxels = []
            for item in obj["voxels"]:
                level, t, x = item
                if not isinstance(level, int):
                    raise CertificateFormatError("voxel level must be an integer")
                voxels.append((level, _ints(t, "voxel type"), _ints(x, "displacement")))
            return Certificate(v, gen, eps, kind, voxels=tuple(voxels), denom_bound=dbound)
        if kind == COSET:
            level, t = obj["coset"]
            return Certificate(v, gen, eps, kind, coset=(level, _ints(t, "coset type")), denom_bound=dbound)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CertificateFormatError):
            raise
        raise CertificateFormatError(f"malformed record: {exc!r}") from exc
    raise CertificateFormatError(f"unknown kind {kind!r}")


def write_certificates(fh: TextIO, header: Header, certs) -> None:
    fh.write(header_line(header) + "\n")
    for cert in certs:
        fh.write(certificate_line(cert) + "\n")


def read_certificates(fh: TextIO) -> tuple[Header, Iterator[Certificate]]:
    first = fh.readline()
    if not first:
        raise CertificateFormatError("empty certificate file")
    header = parse_header(first)

    def records():
        for line in fh:
            if line.strip():
                yield parse_certificate(line)

    return header, records()
