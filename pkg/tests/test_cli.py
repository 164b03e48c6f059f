import json
import shutil
import subprocess
import sys

import jsonschema
import pytest

from markedgroups.cli import DEFAULT_BALL_CAP, load_schema, main

S4 = "perm:(1,2);(1,2,3,4)"
Z2PRES = 'pres:"a,b|[a,b]"'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, schema, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, load_schema(schema))
    return data


def test_ball_json(capsys):
    data = run_json(capsys, "ball", "ball", "zn:2", "--radius", "4")
    assert data["counts_by_length"] == [0, 0, 0, 8]
    assert len(data["relations"]) == 8


def test_ball_text(capsys):
    code, out, _ = run(capsys, "ball", "free:2", "--radius", "5")
    assert code == 0 and "no relations" in out
    code, out, _ = run(capsys, "ball", "lamp:2", "--radius", "2")
    assert "ss" in out.split()


def test_ball_cap(capsys, monkeypatch):
    assert DEFAULT_BALL_CAP == 13120
    code, _, err = run(capsys, "ball", "free:2", "--radius", "9")
    assert code == 2 and "cap" in err
    monkeypatch.setenv("MARKEDGROUPS_BALL_CAP", "10")
    code, _, _ = run(capsys, "ball", "zn:2", "--radius", "2")
    assert code == 2


def test_ball_incomplete_oracle(capsys):
    code, _, err = run(capsys, "ball", Z2PRES, "--radius", "2", "--budget", "5")
    assert code == 3 and "incomplete" in err


def test_ball_presentation_with_discriminator(capsys):
    data = run_json(capsys, "ball", "ball", Z2PRES, "--radius", "4", "--discriminator", "nzab")
    assert data["counts_by_length"] == [0, 0, 0, 8]


@pytest.mark.parametrize(
    "g1, g2, expected", [("zn:2", "free:2", "exact 3"), ("zn:2", "zn:2", "at_least 6"), ("zn:2", "lamp:2", "exact 1")]
)
def test_distance(capsys, g1, g2, expected):
    code, out, _ = run(capsys, "distance", g1, g2, "--max-radius", "6")
    assert code == 0 and out.strip() == expected
    data = run_json(capsys, "distance", "distance", g1, g2, "--max-radius", "6")
    assert f"{data['kind']} {data['radius']}" == expected


def test_lattice_and_discriminate(capsys):
    code, out, _ = run(capsys, "lattice", S4)
    assert code == 0 and out.startswith("order 24: 4 normal subgroups, 1 minimal")
    data = run_json(capsys, "lattice", "lattice", S4)
    assert len(data["normal_subgroups"]) == 4
    assert sum(n["is_minimal"] for n in data["normal_subgroups"]) == 1
    code, out, _ = run(capsys, "lattice", "perm:(1,2)")
    assert "2 normal subgroups" in out
    code, out, _ = run(capsys, "discriminate", S4)
    assert code == 0 and "size 1" in out and "verified" in out
    data = run_json(capsys, "discriminate", "discriminate", S4)
    assert data["verified"] and len(data["elements"]) == 1


def test_non_finite_spec(capsys):
    code, _, _ = run(capsys, "lattice", "zn:2")
    assert code == 2


def test_simmons(capsys):
    args = ["simmons", Z2PRES, "--discriminator", "nzab", "--budget", "100000"]
    code, out, _ = run(capsys, *args, "--word", "abAB", "--certificate")
    assert code == 0 and out.splitlines()[0] == "Trivial" and len(out.splitlines()) == 2
    code, out, _ = run(capsys, *args, "--word", "ab")
    assert code == 0 and out.splitlines()[0] == "Nontrivial"
    code, out, _ = run(capsys, "simmons", Z2PRES, "--discriminator", "nzab", "--budget", "0", "--word", "ab")
    assert code == 4 and out.strip() == "Unknown(0)"
    data = run_json(capsys, "verdict", *args, "--word", "abAB")
    assert data["status"] == "Trivial" and data["certificate"] == [["1", 0, 1]]


def test_simmons_oracle_discriminator(capsys):
    data = run_json(
        capsys, "verdict", "simmons", 'pres:"a,b|a^2,b^3,(ab)^5"', "--word", "abab",
        "--discriminator", "oracle:perm:(1,2)(3,4);(1,3,5)", "--budget", "1000",
    )
    assert data["status"] == "Nontrivial"


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "ball", "zn:2")[0] == 1  # missing --radius
    assert run(capsys, "ball", "nope:2", "--radius", "2")[0] == 1
    assert run(capsys, "simmons", Z2PRES, "--word", "ab", "--discriminator", "what", "--budget", "5")[0] == 1
    assert run(capsys, "simmons", Z2PRES, "--word", "abc", "--discriminator", "nzab", "--budget", "5")[0] == 1


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "topology")
    assert code == 0 and "3/3 checks passed" in out
    data = run_json(capsys, "verify", "verify", "--suite", "topology")
    assert data["ok"]
    assert run(capsys, "verify", "--suite", "nope")[0] == 1


def test_converge_tsv(capsys):
    code, out, _ = run(capsys, "converge", "--target", "zn:2", "--radius", "6", "free:2", "zn:2")
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert rows[0] == ["group", "agreement", "radius"]
    assert rows[1][1:] == ["exact", "3"] and rows[2][1:] == ["at_least", "6"]


def test_output_is_deterministic(capsys):
    first = run(capsys, "ball", "lamp:2", "--radius", "4", "--json")[1]
    assert run(capsys, "ball", "lamp:2", "--radius", "4", "--json")[1] == first


def test_console_script():
    exe = shutil.which("markedgroups")
    cmd = [exe] if exe else [sys.executable, "-m", "markedgroups.cli"]
    res = subprocess.run(cmd + ["distance", "zn:2", "free:2", "--max-radius", "6"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "exact 3"
