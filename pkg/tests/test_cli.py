import json
import math
import subprocess
import sys
from itertools import combinations

import pytest

from covcert.cli import main


def run(*args):
    return subprocess.run([sys.executable, "-m", "covcert", *args], capture_output=True, text=True)


def test_enumerate(capsys):
    assert main(["enumerate", "--max-sum", "11"]) == 0
    assert capsys.readouterr().out == "1,2,3,4\n1,2,3,5\n"


def test_enumerate_count(capsys):
    assert main(["enumerate", "--max-sum", "40"]) == 0
    brute = [v for v in combinations(range(1, 41), 4) if sum(v) <= 40 and math.gcd(*v) == 1]
    assert capsys.readouterr().out.splitlines() == ["%d,%d,%d,%d" % v for v in brute]


def test_mu_planar(capsys):
    assert main(["mu", "1", "2", "3"]) == 0
    assert capsys.readouterr().out.strip() == "1/2"


def test_mu_verbose(capsys):
    assert main(["mu", "1,2,4", "-v"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "3/7"
    assert out[1].startswith("interval")


def test_mu_hpoly(tmp_path, capsys):
    f = tmp_path / "square.txt"
    f.write_text("# the square [-1/2, 1/2]^2\n2 0 1\n-2 0 1\n0 2 1\n0 -2 1\n")
    assert main(["mu", "--hpoly", str(f)]) == 0
    assert capsys.readouterr().out.strip() == "1/1"


def test_build(capsys):
    assert main(["build", "1", "2", "3", "4"]) == 0
    out = capsys.readouterr().out
    assert "volume vector" in out and "<=" in out


def test_certify_and_check(tmp_path, capsys):
    out = tmp_path / "one.jsonl"
    assert main(["certify", "1", "2", "3", "5", "--out", str(out)]) == 0
    assert "mu < 3/5" in capsys.readouterr().err
    assert main(["check", str(out)]) == 0
    assert capsys.readouterr().out.strip().endswith("OK")


def test_certify_counterexample(capsys):
    assert main(["certify", "1,2,3,4", "--rho", "1/2"]) == 1
    out = capsys.readouterr()
    assert '"coset"' in out.out and "mu > 1/2" in out.err


def test_certify_all_and_tampered_check(tmp_path, capsys):
    out = tmp_path / "c.jsonl"
    assert main(["certify-all", "--max-sum", "13", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "tight candidates: 1" in text
    summary = json.loads(text[text.index("{"):])
    assert summary["tight"] == [[1, 2, 3, 4]]
    assert main(["check", str(out)]) == 0
    capsys.readouterr()

    lines = out.read_text().splitlines()
    rec = json.loads(lines[1])
    rec["gen"][0][0] += 1
    lines[1] = json.dumps(rec)
    out.write_text("\n".join(lines) + "\n")
    assert main(["check", str(out)]) == 1
    assert "[2a]" in capsys.readouterr().out


def test_tight_scan(capsys):
    assert main(["tight-scan", "--max-sum", "15"]) == 0
    assert capsys.readouterr().out.split() == ["1,2,3,4", "1,3,4,6", "1,3,4,7"]


@pytest.mark.parametrize("args", [
    ["mu"],
    ["mu", "2", "4", "6"],
    ["mu", "1", "x"],
    ["enumerate", "--max-sum", "0"],
    ["certify", "1,2,3,4", "--rho", "0"],
    ["certify", "1,2,3,4", "--lll-delta", "1/5"],
    ["certify-all", "--max-sum", "12", "--out", "x", "--jobs", "0"],
    ["check", "/nonexistent/file"],
    ["frobnicate"],
])
def test_usage_errors(args):
    with pytest.raises(SystemExit) as info:
        main(args)
    assert info.value.code == 2


def test_module_entry_point():
    res = run("mu", "1", "2", "3")
    assert res.returncode == 0 and res.stdout.strip() == "1/2"
    assert run("mu").returncode == 2
