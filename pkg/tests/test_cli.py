import json
import subprocess
import sys

import pytest

from heegaard import parse_diagram, validate
from heegaard.cli import SCHEMA, run
from heegaard.domains import check_weak_admissibility
from heegaard.fixtures import fixture_text

from support import CLI_COMMANDS


@pytest.fixture
def fixtures_dir(tmp_path):
    for name in ("s3", "p3", "l31", "s1s2", "block"):
        (tmp_path / f"{name}.hd").write_text(fixture_text(name))
    return tmp_path


def cli(*args):
    return subprocess.run([sys.executable, "-m", "heegaard", *args], capture_output=True, text=True)


def test_validate_example(fixtures_dir):
    status, text = run(["validate", str(fixtures_dir / "l31.hd")])
    assert status == 0 and text.strip().endswith("valid, genus 1, k=3")


def test_wind_example(fixtures_dir):
    out = fixtures_dir / "wound.hd"
    status, text = run(["wind", str(fixtures_dir / "s1s2.hd"), "--out", str(out)])
    assert status == 0
    assert "K=1, new intersections 4/4 budget, admissible" in text
    d = parse_diagram(out.read_text())
    assert validate(d).valid and check_weak_admissibility(d).admissible
    status, text = run(["admissible", str(out)])
    assert status == 0


def test_penner_example():
    status, text = run(["penner", "--n", "1"])
    assert status == 0
    assert "spectral radius (3+√5)/2 ≈ 2.618034, entropy floor 0.962424" in text


@pytest.mark.parametrize("args", CLI_COMMANDS, ids=lambda a: a[0])
def test_json_records(args):
    status, text = run(args + ["--json"])
    assert status == 0, text
    rec = json.loads(text)
    assert rec["schema"] == SCHEMA and rec["command"] == args[0] and rec["ok"] is True
    assert text.strip() == json.dumps(rec, sort_keys=True, ensure_ascii=False)


@pytest.mark.parametrize(
    "args",
    [[], ["frobnicate"], ["random", "--genus", "2"], ["validate", "no/such/file.hd"], ["cover", "s1s2", "--sheets", "2"]],
)
def test_usage_errors_exit_2(args):
    assert run(args)[0] == 2


def test_domain_errors_exit_1(fixtures_dir):
    status, text = run(["cover", "l31", "--class", "1", "--sheets", "3"])
    assert status == 1 and text.startswith("error:")
    bad = fixtures_dir / "bad.hd"
    bad.write_text(fixture_text("l31").replace("genus 1", "genus 2"))
    status, text = run(["validate", str(bad)])
    assert status == 1 and "euler" in text
    status, _ = run(["bounds", "--k", "0,3"])
    assert status == 1
    # an underdetermined tube is a precondition failure
    assert run(["tube", "--depth", "1"])[0] == 1


def test_invalid_file_json_record(fixtures_dir):
    bad = fixtures_dir / "bad.hd"
    bad.write_text(fixture_text("l31").replace("genus 1", "genus 2"))
    status, text = run(["validate", str(bad), "--json"])
    rec = json.loads(text)
    assert status == 1 and rec["ok"] is False


def test_jobs_preserve_order():
    args = ["invariants", "l31", "s1s2", "block", "p3", "s3"]
    assert run(args + ["--jobs", "3"]) == run(args)


def test_entry_point_exit_codes(fixtures_dir):
    r = cli("validate", str(fixtures_dir / "l31.hd"))
    assert r.returncode == 0 and "valid, genus 1, k=3" in r.stdout
    r = cli("random", "--genus", "1")
    assert r.returncode == 2
    r = cli("cover", "l31", "--class", "1", "--sheets", "2")
    assert r.returncode == 1 and r.stderr.startswith("error:")


def test_entry_point_is_deterministic():
    for args in CLI_COMMANDS + [a + ["--json"] for a in CLI_COMMANDS]:
        a = cli(*args)
        b = cli(*args)
        assert a.returncode == b.returncode == 0, a.stderr
        assert a.stdout == b.stdout
