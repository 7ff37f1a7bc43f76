import subprocess
import sys
from importlib import resources

import pytest

from discloci.cli import format_machine, main, parse_machine

STEINER = """ring: q u x y
dual: lambda mu nu eps
pairing: symmetric
section: u^2+x^2+y^2
section: x*y
section: u*y
section: u*x
"""


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in {
        "steiner.lsys": STEINER,
        "bp.lsys": "ring: q x y z\nsection: x^2\nsection: x*y\nsection: y^2\n",
        "bad.lsys": "ring: q x y z\nsection: x^2\nsection: x*y+\nsection: y^2\n",
        "fermat.lsys": "ring: q x0 x1 x2\nsection: x0^2\nsection: x1^2\nsection: x2^2\n",
        "cubic.ideal": "ring: q x y z\nx^3 + y^3 + z^3\n",
        "delpezzo.num": "e: 11\nK2: 1\nKL: -2\nL2: 4\nchi: 1\n",
    }.items():
        p = tmp_path / name
        p.write_text(text)
        out[name] = str(p)
    return out


def run(argv, capsys):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_machine_round_trip():
    kv = {"codegree": "3", "equation": "lambda^3 - lambda*mu^2", "empty": "false"}
    assert parse_machine(format_machine(kv)) == kv


def test_steiner_discriminant(files, capsys):
    code, out, _ = run(["discriminant", files["steiner.lsys"], "--field", "q", "--machine"], capsys)
    assert code == 0
    kv = parse_machine(out)
    assert kv["equation"] == "lambda^3 - lambda*mu^2 - lambda*nu^2 + 2*mu*nu*eps - lambda*eps^2"
    assert kv["codegree"] == "3"
    code, out, _ = run(["discriminant", files["steiner.lsys"], "--field", "q"], capsys)
    assert "codegree: 3" in out


def test_every_verb_round_trips(files, capsys):
    cases = [
        ["dual", files["cubic.ideal"], "--dual-names", "a b c"],
        ["discriminant", files["fermat.lsys"]],
        ["jumping-sets", files["fermat.lsys"]],
        ["strata", files["fermat.lsys"]],
        ["codegree", files["fermat.lsys"]],
        ["milnor", "x^3+y^3"],
        ["pencil-verify", files["fermat.lsys"]],
        ["wronskian", "s^3", "t^3"],
        ["invariants", files["delpezzo.num"], "--codegree", "19"],
        ["scan6"],
        ["fixture", "steiner-web"],
    ]
    for argv in cases:
        code, out, err = run(argv + ["--machine"], capsys)
        assert code == 0, (argv, err)
        kv = parse_machine(out)
        assert kv and format_machine(kv) == out


def test_milnor(capsys):
    code, out, _ = run(["milnor", "x^3+y^3", "--machine"], capsys)
    assert code == 0 and parse_machine(out)["mu"] == "4"
    code, out, _ = run(["milnor", "x^2 + y^5", "--point", "0,0", "--machine"], capsys)
    assert parse_machine(out)["mu"] == "4"


def test_invariants(capsys):
    code, out, _ = run(["invariants", "--ruled", "2", "0", "-1", "1", "--machine"], capsys)
    assert code == 0 and parse_machine(out)["c2"] == "8"


def test_input_errors(files, capsys):
    code, _, err = run(["discriminant", files["bp.lsys"]], capsys)
    assert code == 2 and "witness ideal" in err
    code, _, err = run(["discriminant", files["bad.lsys"]], capsys)
    assert code == 2 and "line 3" in err and "column" in err
    code, _, err = run(["milnor", "x^2 + * y"], capsys)
    assert code == 2 and "column" in err
    assert run(["codegree", files["steiner.lsys"], "--field", "gf:12"], capsys)[0] == 2
    assert run(["fixture", "no-such-fixture"], capsys)[0] == 2
    assert run(["invariants"], capsys)[0] == 2


def test_env_default_field(files, capsys, monkeypatch):
    monkeypatch.setenv("DISCLOCI_FIELD", "gf:65537")
    code, out, _ = run(["codegree", files["steiner.lsys"], "--machine"], capsys)
    assert code == 0 and parse_machine(out)["field"] == "gf:65537"
    code, out, _ = run(["codegree", files["steiner.lsys"], "--field", "q", "--machine"], capsys)
    assert parse_machine(out)["field"] == "q"


def test_corrupted_fixture_exits_one(tmp_path, capsys):
    text = resources.files("discloci.catalog").joinpath("fixtures", "cone-web.fix").read_text()
    bad = tmp_path / "cone-web-corrupt.fix"
    bad.write_text(text.replace("hyperplanes: 1 |", "hyperplanes: 2 |"))
    code, out, _ = run(["fixture", str(bad)], capsys)
    assert code == 1
    assert "FAIL hyperplanes" in out
    code, out, _ = run(["fixture", "cone-web"], capsys)
    assert code == 0


def test_fixture_all(capsys):
    code, out, _ = run(["fixture-all", "--field", "gf:32003", "--machine"], capsys)
    kv = parse_machine(out)
    assert code == 0
    assert kv["failed"] == "0"
    assert int(kv["passed"]) + int(kv["documented"]) == int(kv["total"])


def test_byte_identical_runs(files):
    argv = [sys.executable, "-m", "discloci", "discriminant", files["steiner.lsys"], "--seed", "7"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and b"codegree: 3" in a
