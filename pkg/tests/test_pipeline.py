import io
import math
from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import pytest

from covcert.pipeline.campaign import (
    CampaignError,
    ConjectureCounterexample,
    certify_instance,
    run_campaign,
    runner_rho,
)
from covcert.pipeline.certificate import (
    COSET,
    DOMAIN,
    Certificate,
    CertificateFormatError,
    Header,
    certificate_line,
    format_fraction,
    header_line,
    parse_certificate,
    parse_fraction,
    parse_header,
    read_certificates,
    write_certificates,
)
from covcert.pipeline.checker import check_stream, expected_vectors
from covcert.pipeline.enumeration import enumerate_volume_vectors

F = Fraction
TIGHT = [(1, 2, 3, 4), (1, 3, 4, 6), (1, 3, 4, 7)]


def brute_vectors(max_sum):
    return [v for v in combinations(range(1, max_sum + 1), 4) if sum(v) <= max_sum and math.gcd(*v) == 1]


# enumeration

@pytest.mark.parametrize("max_sum", [9, 10, 11, 17, 30])
def test_enumeration_matches_brute_force(max_sum):
    assert list(enumerate_volume_vectors(max_sum)) == brute_vectors(max_sum)


def test_enumeration_small_cases():
    assert list(enumerate_volume_vectors(9)) == []
    assert list(enumerate_volume_vectors(10)) == [(1, 2, 3, 4)]
    assert list(enumerate_volume_vectors(11)) == [(1, 2, 3, 4), (1, 2, 3, 5)]


def test_enumeration_is_strictly_increasing():
    vs = list(enumerate_volume_vectors(60))
    assert all(a < b for a, b in zip(vs, vs[1:]))


def test_checker_enumeration_is_independent_but_equal():
    assert list(expected_vectors(4, 45)) == list(enumerate_volume_vectors(45))


# certificate format

def test_fraction_text():
    assert format_fraction(F(3, 5)) == "3/5"
    assert parse_fraction(format_fraction(F(-1, 240), signed=True)) == F(-1, 240)
    assert parse_fraction(format_fraction(F(1, 7), signed=True)) == F(1, 7)
    with pytest.raises(CertificateFormatError):
        parse_fraction("0.6")


def test_header_round_trip():
    h = Header(F(3, 5), F(-1, 2), 30)
    assert parse_header(header_line(h)) == h
    with pytest.raises(CertificateFormatError):
        parse_header('{"format": "other"}')


def test_certificate_round_trip():
    cert = certify_instance((1, 2, 3, 5))
    assert parse_certificate(certificate_line(cert)) == cert
    tight = certify_instance((1, 2, 3, 4))
    assert parse_certificate(certificate_line(tight)) == tight
    coset = Certificate((1, 2, 3, 4), tight.generators, F(1, 200), COSET, coset=(2, (1, 3, 0)), denom_bound=70)
    assert parse_certificate(certificate_line(coset)) == coset


def test_stream_round_trip():
    certs = [certify_instance(v) for v in [(1, 2, 3, 4), (1, 2, 3, 5)]]
    buf = io.StringIO()
    write_certificates(buf, Header(F(3, 5), F(-1, 2), None), certs)
    header, records = read_certificates(io.StringIO(buf.getvalue()))
    assert header.rho == F(3, 5) and list(records) == certs


@pytest.mark.parametrize("line", ["", "not json", '{"v": [1, 2, 3, 4]}', '[1, 2]'])
def test_bad_records(line):
    with pytest.raises(CertificateFormatError):
        parse_certificate(line)


# certification

@pytest.mark.parametrize("v", TIGHT)
def test_tight_instances_get_positive_margin(v):
    cert = certify_instance(v)
    assert cert.kind == DOMAIN and cert.tight
    assert 0 < cert.epsilon < F(1, 5 * cert.denom_bound)


@pytest.mark.parametrize("v", [(1, 2, 3, 5), (1, 2, 4, 5), (2, 3, 5, 7), (1, 5, 8, 13)])
def test_strict_instances_get_negative_margin(v):
    cert = certify_instance(v)
    assert cert.kind == DOMAIN and cert.epsilon < 0 and not cert.tight


def test_counterexample_is_reported():
    # 1/2 is below mu = 3/5 of the tight zonotope, so no domain exists
    with pytest.raises(ConjectureCounterexample) as info:
        certify_instance((1, 2, 3, 4), F(1, 2))
    cert = info.value.certificate
    assert cert.kind == COSET and cert.epsilon > 0


def test_three_runner_case():
    assert runner_rho(3) == F(1, 2)
    assert certify_instance((1, 2, 3)).tight
    assert not certify_instance((1, 2, 5)).tight


def test_campaign_small(tmp_path):
    out = tmp_path / "c.jsonl"
    report = run_campaign(20, out_path=out)
    assert report.ok and report.tight == TIGHT
    assert report.total == len(brute_vectors(20))
    assert sum(report.depth_histogram.values()) == report.total
    with open(out) as fh:
        check = check_stream(fh)
    assert check.ok and check.records == report.total and check.tight == TIGHT


def test_campaign_parallel_output_identical(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run_campaign(18, jobs=1, out_path=a)
    run_campaign(18, jobs=2, out_path=b)
    assert a.read_bytes() == b.read_bytes()


def test_campaign_stops_on_counterexample(tmp_path):
    out = tmp_path / "c.jsonl"
    with pytest.raises(CampaignError):
        run_campaign(12, out_path=out, rho=F(1, 2))
    lines = out.read_text().splitlines()
    assert len(lines) == 2 and '"coset"' in lines[1]


# checker

@pytest.fixture(scope="module")
def small_file():
    buf = io.StringIO()
    certs = [certify_instance(v) for v in enumerate_volume_vectors(12)]
    write_certificates(buf, Header(F(3, 5), F(-1, 2), 12), certs)
    return buf.getvalue()


def lines_of(text):
    return text.splitlines()


def checked(lines):
    return check_stream(io.StringIO("\n".join(lines) + "\n"))


def tamper(text, index, change):
    lines = lines_of(text)
    lines[index] = certificate_line(change(parse_certificate(lines[index])))
    return checked(lines)


def test_checker_accepts(small_file):
    report = checked(lines_of(small_file))
    assert report.ok and report.tight == [(1, 2, 3, 4)]


def test_checker_voxel_removed(small_file):
    def drop(c):
        return replace(c, voxels=c.voxels[:-1])
    report = tamper(small_file, 1, drop)
    assert not report.ok and report.steps_failed() == {"2c"}


def test_checker_voxel_moved(small_file):
    def move(c):
        level, t, x = c.voxels[0]
        return replace(c, voxels=((level, t, tuple(xi + 3 for xi in x)),) + c.voxels[1:])
    assert tamper(small_file, 2, move).steps_failed() == {"2c"}


def test_checker_epsilon_inflated(small_file):
    # (1,2,3,4) is the first record and carries a positive margin
    def inflate(c):
        return replace(c, epsilon=F(1, 5 * c.denom_bound))
    assert tamper(small_file, 1, inflate).steps_failed() == {"2b"}


def test_checker_wrong_denominator_bound(small_file):
    def fake(c):
        return replace(c, denom_bound=c.denom_bound // 2)
    assert tamper(small_file, 1, fake).steps_failed() == {"2b"}


def test_checker_generator_changed(small_file):
    def bump(c):
        rows = [list(r) for r in c.generators]
        rows[0][0] += 1
        return replace(c, generators=tuple(map(tuple, rows)))
    assert tamper(small_file, 2, bump).steps_failed() == {"2a"}


def test_checker_missing_record(small_file):
    lines = lines_of(small_file)
    del lines[2]
    assert checked(lines).steps_failed() == {"1"}


def test_checker_wrong_rho(small_file):
    lines = lines_of(small_file)
    lines[0] = header_line(Header(F(2, 3), F(-1, 2), 12))
    assert "1" in checked(lines).steps_failed()


def test_checker_counts_counterexample():
    cert = None
    try:
        certify_instance((1, 2, 3, 4), F(1, 2))
    except ConjectureCounterexample as exc:
        cert = exc.certificate
    buf = io.StringIO()
    write_certificates(buf, Header(F(1, 2), F(-1, 2), None), [cert])
    report = check_stream(io.StringIO(buf.getvalue()))
    assert report.counterexamples == [(1, 2, 3, 4)] and not report.ok and not report.failures
