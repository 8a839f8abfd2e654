import json
import subprocess
import sys

import pytest

from curvespec.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_text(capsys):
    code, out, _ = run(capsys, "spectrum", "--pairs", "3,2")
    assert code == 0
    rows = out.splitlines()[1:]
    assert [r.split()[0] for r in rows] == ["5/6", "7/6"]


def test_spectrum_json(capsys):
    code, out, _ = run(capsys, "spectrum", "--pairs", "3,2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [(d["alpha"], d["mult"]) for d in data] == [("5/6", 1), ("7/6", 1)]
    assert data[0]["approx"] == "0.833333333333"


def test_spectrum_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--pairs", "5,2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["alpha,mult,approx", "7/10,1,0.7", "9/10,1,0.9", "11/10,1,1.1", "13/10,1,1.3"]


def test_spectrum_gcd_error(capsys):
    code, _, err = run(capsys, "spectrum", "--pairs", "4,2")
    assert code == 1
    assert "gcd" in err


def test_resolution_table(capsys):
    code, out, _ = run(capsys, "resolution", "--pairs", "3,2")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[1:4]]
    assert [r[1] for r in rows] == ["2", "3", "6"]
    assert [r[2] for r in rows] == ["1", "2", "4"]
    assert [r[3] for r in rows] == ["1", "1", "5/6"]
    assert "lct: 5/6" in out


def test_resolution_dot(capsys):
    code, out, _ = run(capsys, "resolution", "--pairs", "3,2", "--dot", "dual")
    assert code == 0
    assert out.count("label=") == 4


def exit_code(argv):
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code


@pytest.mark.parametrize(
    "argv",
    [
        ["resolution", "--pairs", "1,2"],
        ["spectrum"],
        ["spectrum", "--pairs"],
        ["nonsense"],
        ["verify", "--sweep", "q<=3"],
        ["verify", "--pairs", "3,2", "--sweep", "count=1"],
    ],
)
def test_input_errors_exit_1(capsys, argv):
    assert exit_code(argv) == 1
    capsys.readouterr()


def test_guard_exit_3(capsys, monkeypatch):
    assert run(capsys, "resolution", "--pairs", "100001,2")[0] == 3
    monkeypatch.setenv("CURVESPEC_MAX_VERTICES", "3")
    assert run(capsys, "resolution", "--pairs", "5,2")[0] == 3


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--pairs", "3,2;1,2")
    assert code == 0
    assert "3 routes agree on 16 entries" in out


def test_verify_sweep(capsys):
    code, out, _ = run(capsys, "verify", "--sweep", "g<=2,k<=12,n<=5,count=50,seed=7")
    assert code == 0
    assert out.rstrip().endswith("50/50 cases passed")


def test_verify_jobs_same_output(capsys):
    sweep = "g<=2,k<=10,n<=4,count=12,seed=1"
    serial = run(capsys, "verify", "--sweep", sweep)
    parallel = run(capsys, "verify", "--sweep", sweep, "--jobs", "3")
    assert serial == parallel


def test_fault_injection_exit_2(capsys):
    code, out, _ = run(capsys, "verify", "--pairs", "3,2;1,2", "--inject-fault")
    assert code == 2
    assert "MISMATCH" in out and "first:" in out


def test_report(capsys):
    code, out, _ = run(capsys, "report", "--pairs", "3,2")
    assert code == 0
    rep = json.loads(out)
    assert rep["characteristic"]["mu"] == 2
    assert rep["lct"] == "5/6"
    assert rep["variance"]["gap"] == "0"
    code, out, _ = run(capsys, "report", "--pairs", "3,2;1,2")
    rep = json.loads(out)
    assert rep["variance"]["gap"] == "7/7488"
    assert rep["variance"]["V"] == "721/7488"
    assert list(rep) == ["version", "pairs", "characteristic", "spectrum", "resolution", "lct", "variance", "verification"]
    assert set(rep["verification"].values()) == {"pass"}


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert main(["-o", str(target), "report", "--pairs", "3,2"]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["lct"] == "5/6"


@pytest.mark.parametrize(
    "argv",
    [
        ["report", "--pairs", "3,2;1,2"],
        ["spectrum", "--pairs", "7,3;2,3", "--format", "csv"],
        ["resolution", "--pairs", "5,3;2,5", "--dot", "enriques"],
    ],
)
def test_byte_determinism_across_processes(argv):
    cmd = [sys.executable, "-m", "curvespec", *argv]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True, env={"PYTHONHASHSEED": "123", "PATH": ""}).stdout
    assert first == second and first
