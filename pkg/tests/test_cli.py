import csv
import subprocess
import sys

import pytest

from wetcasimir.cli import run

SEPS = "--separations=10,100,1000"


def rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_mix_prints_root(capsys):
    assert run(["mix", "4", "1", "0.5"]) == 0
    out = capsys.readouterr().out.strip()
    assert out.startswith("2.17116")
    assert float(out) == pytest.approx(2.171164609606620, rel=1e-13)


def test_force_with_slab_matching_gap_is_zero(tmp_path):
    out = tmp_path / "f.csv"
    assert run(["force", "water", "water", "au", SEPS, "--out", str(out)]) == 0
    data = rows(out)
    assert [float(r["value"]) for r in data] == [0.0, 0.0, 0.0]
    assert {r["value_kind"] for r in data} == {"pressure_Pa"}


def test_metal_gap_between_dielectrics(tmp_path):
    out = tmp_path / "f.csv"
    assert run(["force", "const:2.0", "au", "const:2.0", SEPS, "--out", str(out)]) == 0
    assert all(float(r["value"]) > 0 for r in rows(out))


def test_delta_command(tmp_path):
    out = tmp_path / "d.csv"
    assert run(["delta", "cbr3f", "1.60", SEPS, "--out", str(out)]) == 0
    values = [float(r["value"]) for r in rows(out)]
    assert values[0] > values[1] > values[2] > 0


def test_fig2_orders_liquids(tmp_path):
    out = tmp_path / "fig2.csv"
    assert run(["fig2", "--separations=10,20", "--out", str(out)]) == 0
    at10 = {r["liquid"]: float(r["value"]) for r in rows(out)
            if float(r["separation_nm"]) == 10.0}
    assert at10["water"] < at10["ccl3f"] < at10["cbr3f"]


def test_fig1_and_eps_run(tmp_path):
    out = tmp_path / "fig1.csv"
    assert run(["fig1", "--zeta-points", "7", "--out", str(out)]) == 0
    data = rows(out)
    assert len(data) == 5 * 7
    assert list(data[0]) == ["zeta_over_omega_pD", "eps_ratio", "ambient_index"]
    out = tmp_path / "eps.csv"
    assert run(["eps", "water", "--zeta-points", "5", "--out", str(out)]) == 0
    assert len(rows(out)) == 5


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["force", "au:1.33", "water", "au:1.33", "--d-points", "5"]
    assert run(args + ["--out", str(a)]) == 0
    assert run(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_paper_literal_colecole_changes_output(capsys):
    assert run(["eps", "cbr3f", "--zeta-points", "3"]) == 0
    default = capsys.readouterr().out
    assert run(["eps", "cbr3f", "--zeta-points", "3", "--paper-literal-colecole"]) == 0
    assert capsys.readouterr().out != default


@pytest.mark.parametrize("argv, code", [
    (["frobnicate"], 2),
    (["force", "au", "water"], 2),
    (["mix", "4", "1", "abc"], 2),
    (["force", "au", "water", "au", "--separations=20,10"], 2),
    (["mix", "4", "1", "1.5"], 1),
    (["delta", "water", "1.50"], 1),
    (["force", "au", "glycerol", "au"], 1),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv) == code
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err


def test_failure_leaves_no_output(tmp_path):
    out = tmp_path / "never.csv"
    assert run(["force", "au", "water", "au", SEPS, "--max-evals", "64",
                "--out", str(out)]) == 1
    assert list(tmp_path.iterdir()) == []


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wetcasimir.cli", "mix", "4", "1", "0.5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("2.17116")
