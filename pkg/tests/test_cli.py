import json
import subprocess
import sys

import pytest

from cotorsion.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_pd_and_fd(capsys):
    assert run(capsys, "pd", "S_b") == (0, "1\n", "")
    assert run(capsys, "pd", "--module", "S_b", "--algebra", "T2F2") == (0, "1\n", "")
    assert run(capsys, "fd")[0] == 2
    assert run(capsys, "pd", "S_1", "--algebra", "NakA3J2")[1] == "2\n"
    assert run(capsys, "pd", "S_1", "--algebra", "NakA3J2", "--cutoff", "1")[1] == "> 1\n"
    assert run(capsys, "fd", "P_b")[1] == "0\n"
    assert run(capsys, "fd", "S_1", "--algebra", "NakA3J2", "--test-dim", "2")[1] == "2\n"


def test_ext_and_tor(capsys):
    assert run(capsys, "ext", "S_b", "S_a")[1] == "1\n"
    assert run(capsys, "ext", "S_a", "S_b")[1] == "0\n"
    status, _, err = run(capsys, "tor", "S_a", "S_b")
    assert status == 2 and "right module" in err
    assert run(capsys, "tor", "S_a*", "P_b")[0] == 0


def test_input_errors_exit_two(capsys, tmp_path):
    status, out, err = run(capsys, "pd", "Q")
    assert status == 2 and not out and "no module 'Q'" in err
    assert run(capsys, "pd", "S_b", "--algebra", "nowhere")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "validate", str(bad))[0] == 2
    assert run(capsys, "staircase", "sphere:S_a:0")[0] == 2          # not exact


def test_violations_exit_one(capsys):
    status, out, _ = run(capsys, "check-cotorsion", "--left", "list:S_b", "--right", "list:S_a")
    assert status == 1 and "Ext^1(S_b, S_a)" in out
    assert run(capsys, "check-cotorsion", "--left", "P0", "--right", "P1")[0] == 0
    # e11 + e12 spans a one-dimensional submodule of A touching both summands
    status, out, _ = run(capsys, "zigzag", "A", "--sub", "1,1,0", "--kappa", "1")
    assert status == 1 and out.startswith("BudgetExceeded")
    assert run(capsys, "zigzag", "A", "--sub", "0,0,1", "--kappa", "1")[0] == 2   # kappa < dim N
    status, out, _ = run(capsys, "approx", "S_b", "--left", "P0", "--right", "list:S_b")
    assert status == 1 and "NOTFOUND" in out


def test_check_cert_on_emitted_and_tampered_files(capsys, tmp_path):
    status, out, _ = run(capsys, "staircase", "exact:5", "--algebra", "NakA3J2", "--out", str(tmp_path),
                         "--kappa", "12")
    assert status == 0 and "certificate: accepted" in out
    path = next(tmp_path.glob("*.json"))
    assert run(capsys, "check-cert", str(path))[0] == 0
    doc = json.loads(path.read_text())
    doc["witness"]["bases"][next(iter(doc["witness"]["bases"]))] = []
    path.write_text(json.dumps(doc))
    status, out, _ = run(capsys, "check-cert", str(path))
    assert status == 1 and "rejected" in out


def test_check_cert_names_the_tampered_degree(capsys, tmp_path):
    assert run(capsys, "dw-filtrate", "random:3", "--algebra", "NakA3J2", "--out", str(tmp_path))[0] == 0
    path = tmp_path / "dw-filtration.json"
    doc = json.loads(path.read_text())
    step = doc["witness"]["steps"][1]
    degree = next(m for m, rows in step["bases"].items() if rows)
    row = step["bases"][degree][0]
    row[-1] = (row[-1] + 1) % 2
    path.write_text(json.dumps(doc))
    status, out, _ = run(capsys, "check-cert", str(path))
    assert status == 1 and f"steps[1].bases[{degree}]" in out


def test_json_output_is_deterministic(capsys):
    argv = ("dw-filtrate", "random:3", "--algebra", "NakA3J2", "--json")
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    doc = json.loads(first)
    assert doc["command"] == "dw-filtrate" and doc["status"] == 0


def test_compat_and_lift_commands(capsys):
    status, out, _ = run(capsys, "check-compat")
    assert status == 0 and out.strip().endswith("equal")
    assert run(capsys, "check-compat", "--inner", "P0")[0] == 1
    assert run(capsys, "lift", "--count", "3")[0] == 0
    assert run(capsys, "lift", "--kind", "obstructed", "--count", "2")[0] == 0
    assert run(capsys, "check-thick", "--count", "4")[0] == 0


def test_factor_command(capsys):
    status, out, _ = run(capsys, "factor", "S0(S_b)", "D1(A)")
    assert status == 0 and "p i = f" in out
    assert run(capsys, "factor", "S0(S_b)", "S1(S_b)", "--trivial", "cofibration")[0] == 0


@pytest.mark.slow
def test_demo_passes():
    proc = subprocess.run([sys.executable, "-m", "cotorsion.cli", "demo"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "FAIL" not in proc.stdout
