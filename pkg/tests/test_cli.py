import json
import subprocess
import sys

import pytest

from leghopf.cli import main
from leghopf.families import C2_31, instantiate


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    assert run(capsys, "count", "--t0", "3", "--t1", "1") == (0, "3\n", "")


def test_count_twisting_and_family(capsys):
    assert run(capsys, "count", "--t0", "1", "--t1", "1", "--twisting", "2", "--diffeo")[1] == "1\n"
    assert run(capsys, "count", "--t0", "-1", "--t1", "-1")[1] == "integral-family\n"


def test_cfrac(capsys):
    assert run(capsys, "cfrac", "-s", "-2/1")[1] == "[-2] N=2\n"
    code, out, _ = run(capsys, "cfrac", "-s", "-16/7", "--format", "json")
    assert code == 0 and json.loads(out)["cfrac"] == [-3, -2, -2, -3]


def test_classify_unique_row(capsys):
    code, out, _ = run(capsys, "classify", "--t0", "1", "--t1", "1")
    assert code == 0 and out.splitlines() == ["(1,0,1,0) d3=1/2 exc/exc"]


def test_classify_json_and_tsv(capsys):
    _, out, _ = run(capsys, "--format", "json", "classify", "--t0", "2", "--t1", "1")
    rows = json.loads(out)
    assert {(r["r0"], r["r1"], r["d3"]) for r in rows} == {(3, 2, "-1/2"), (-3, -2, "-1/2")}
    _, out, _ = run(capsys, "classify", "--t0", "2", "--t1", "1", "--format", "tsv")
    lines = out.splitlines()
    assert lines[0].split("\t")[:5] == ["t0", "r0", "t1", "r1", "d3"] and len(lines) == 3


def test_output_is_stable(capsys):
    a = run(capsys, "table", "--which", "se", "--tmin", "-3", "--tmax", "3")
    b = run(capsys, "table", "--which", "se", "--tmin", "-3", "--tmax", "3")
    assert a == b and a[0] == 0 and a[1]


def test_summary_table(capsys):
    code, out, _ = run(capsys, "table", "--which", "summary", "--tmax", "3")
    assert code == 0 and out


def test_twisting_and_loose(capsys):
    code, out, _ = run(capsys, "twisting", "--t0", "2", "--t1", "1", "-n", "2")
    assert code == 0 and len(out.splitlines()) == 2
    assert run(capsys, "loose", "--start", "-1", "0", "--target", "0", "1")[1] == "stab+ sumK10\n"


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--t0", "0", "--t1", "5", "--format", "json")
    assert code == 0 and json.loads(out)["s1p"] == "-6/5"


def test_family_and_invariants(capsys, tmp_path):
    code, out, _ = run(capsys, "family", "--id", "C2_31", "--side", "L")
    assert code == 0 and "pass" in out
    code, out, _ = run(capsys, "family", "--id", "C2_31", "--side", "L", "--emit")
    path = tmp_path / "d.json"
    path.write_text(out)
    code, out, _ = run(capsys, "invariants", "-f", str(path), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["d3"] == "-1/2"
    assert json.loads(instantiate(C2_31("L")).dumps()) == json.loads(path.read_text())


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["count", "--t0", "x"])
    assert exc.value.code == 2
    err = capsys.readouterr().err
    assert json.loads(err)["error"] == "UsageError"
    code, _, err = run(capsys, "cfrac", "-s", "-1/2")
    assert code == 2 and json.loads(err)["error"] == "OutOfRange"
    code, _, err = run(capsys, "family", "--id", "D", "--n", "1")
    assert code == 2 and json.loads(err)["error"] == "BadParams"


def test_check_failure_exits_1(capsys, tmp_path):
    # a singular diagram: one knot with framing 0
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"knots": [{"tb": 1, "rot": 0, "coeff": -1}], "lk": [[0]],
                                "components": [{"tb": -1, "rot": 0, "lk": [1]}]}))
    code, _, err = run(capsys, "invariants", "-f", str(path))
    assert code == 1 and json.loads(err)["error"] == "SingularMatrix"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "leghopf", "count", "--t0", "5", "--t1", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "8\n"
