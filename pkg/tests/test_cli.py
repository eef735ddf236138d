import json
import subprocess
import sys

import pytest

from hermarea.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["act", "--n", "2", "t_hat", "Gamma[2,1]"], "4/3 * pi^-1 * Gamma[1,0]"),
        (["act", "--n", "2", "--val", "s_hat", "--measure", "B[3,1]"], "4/3 * pi^-1 * B[1,0]"),
        (["glob", "--n", "2", "B[3,1]"], "mu[3,1]"),
        (["poly", "pk", "--k", "2"], "t^2 - s"),
        (["delta", "--n", "2", "vol"], "2 * B[3,1]"),
        (["delta", "--n", "2", "chi"], "0"),
        (["fourier", "--n", "2", "mu[1,0]"], "mu[3,1]"),
        (["conv", "--n", "2", "t_hat", "vol"], "2 * pi^-1 * mu[3,1]"),
        (["frompoly", "--n", "2", "u"], "2 * pi^-1 * mu[2,1]"),
        (["evalball", "--n", "2", "vol"], "1/2 * pi^2"),
        (["bg", "--n", "2", "1"], "B[3,1]"),
        (["bg", "--n", "2", "0", "1"], "Gamma[2,1]"),
        (["angular", "--n", "2", "--classical", "2"], "Delta[2,0] + Delta[2,1]"),
    ],
)
def test_examples(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.strip() == expected


def test_angular_measure(capsys):
    code, out, _ = run(capsys, "angular", "--n", "2", "B[1,0]")
    assert code == 0
    assert "angular: no" in out
    code, out, _ = run(capsys, "angular", "--n", "2", "Delta[1,0]")
    assert "angular: yes" in out


def test_present(capsys):
    code, out, _ = run(capsys, "present", "--n", "3")
    assert code == 0
    assert "NO" not in out


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "t-table", "--n", "3", "--diff-against", "areamod")
    assert code == 0 and "identical" in out
    code, out, _ = run(capsys, "oracle", "t-table", "--n", "2")
    code2, out2, _ = run(capsys, "export", "t-table", "--n", "2")
    assert code == code2 == 0
    assert out == out2


def test_output_is_deterministic(capsys):
    outs = [run(capsys, "export", "s-table", "--n", "3", "--format", "csv")[1] for _ in range(2)]
    assert outs[0] == outs[1] and outs[0].startswith("n,generator,")


def test_export_json_round_trip(capsys, tmp_path):
    path = tmp_path / "t.json"
    code, out, _ = run(capsys, "export", "t-table", "--n", "2", "--out", str(path))
    assert code == 0 and out == ""
    doc = json.loads(path.read_text())
    assert doc["n"] == 2 and doc["generator"] == "t_hat" and doc["entries"]


def test_export_dims_and_basis(capsys):
    _, out, _ = run(capsys, "export", "dims", "--n", "3")
    doc = json.loads(out)
    assert doc["total_area"] == 12 and doc["total_val"] == sum(r["dim_val"] for r in doc["degrees"])
    assert doc["degrees"][-1] == {"k": 6, "dim_val": 1, "dim_area": 0}
    _, out, _ = run(capsys, "export", "basis", "--n", "1")
    doc = json.loads(out)
    assert doc["area"] == [{"kind": "Gamma", "k": 0, "q": 0}, {"kind": "B", "k": 1, "q": 0}]
    _, out, _ = run(capsys, "export", "basis", "--n", "1", "--format", "csv")
    assert out.splitlines()[0] == "space,kind,k,q"


def test_unwritable_out(capsys, tmp_path):
    code, _, err = run(capsys, "export", "dims", "--n", "1", "--out", str(tmp_path / "missing" / "x.json"))
    assert code == 2 and "cannot write" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["act", "--n", "2", "t_hat", "B[2,1]"],
        ["act", "--n", "2", "t_hat"],
        ["glob", "--n", "2", "mu[1,0]"],
        ["mul", "--n", "2", "B[1,0]", "t"],
        ["poly", "fk", "--k", "0"],
        ["angular", "--n", "2", "--classical", "4"],
        ["verify", "--n", "1", "--filter", "nope"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert "error:" in err and out == ""


@pytest.mark.parametrize("argv", [["glob", "--n", "0", "B[1,0]"], ["glob", "--n", "x", "B[1,0]"], []])
def test_argparse_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--filter", "dimensions,binomial", "--timings")
    assert code == 0
    assert out.strip().endswith("4/4 checks passed")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hermarea", "poly", "qk", "--k", "1"], capture_output=True, text=True, check=True
    )
    assert proc.stdout.strip()
