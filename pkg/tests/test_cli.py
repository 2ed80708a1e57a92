import csv
import subprocess
import sys

import numpy as np
import pytest

from cppcopula.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rho_table(capsys):
    code, out, _ = run(capsys, "rho-table")
    assert code == 0
    assert out == "theta,rho\n0,0.7500\n1,0.8696\n2,0.9206\n5,0.9712\n"


def test_rho_table_empty(capsys):
    code, out, _ = run(capsys, "rho-table", "--theta", "")
    assert code == 0 and out == "theta,rho\n"


def test_rho_table_bad_row(capsys):
    code, out, err = run(capsys, "rho-table", "--theta", "1", "--theta", "-2")
    assert code == 1
    assert out == "theta,rho\n1,0.8696\n"
    assert "theta=-2" in err


def test_sample_rows(capsys):
    code, out, _ = run(capsys, "sample", "--copula", "clayton", "--theta", "2", "--n", "3", "--seed", "7")
    rows = list(csv.reader(out.splitlines()))
    assert code == 0 and rows[0] == ["u", "v"] and len(rows) == 4
    vals = np.array(rows[1:], dtype=float)
    assert np.all((vals >= 0) & (vals <= 1))


@pytest.mark.parametrize("args", [["--copula", "band", "--eps", "0.4"], ["--copula", "gaussian", "--tau", "0.8"],
                                  ["--copula", "upper"], ["--copula", "lower"], ["--copula", "indep"]])
def test_sample_families(capsys, args):
    code, out, _ = run(capsys, "sample", "--n", "50", *args)
    assert code == 0 and len(out.splitlines()) == 51


def test_sample_missing_param(capsys):
    code, _, err = run(capsys, "sample", "--copula", "band", "--n", "5")
    assert code == 2 and "--eps" in err


def test_simulate_rows(capsys):
    code, out, _ = run(capsys, "simulate", "--lambda", "5", "--theta", "5", "--n", "10")
    rows = list(csv.reader(out.splitlines()))
    assert code == 0 and rows[0] == ["x", "y", "k"] and len(rows) == 11
    assert all(int(r[2]) >= 0 for r in rows[1:])


def test_simulate_zero_fraction(tmp_path):
    assert main(["simulate", "--lambda", "3", "--n", "1e6", "--out", str(tmp_path)]) == 0
    k = np.loadtxt(tmp_path / "simulate.csv", delimiter=",", skiprows=1, usecols=2)
    p = np.exp(-3.0)
    assert len(k) == 10**6
    assert abs((k == 0).mean() - p) <= 4 * np.sqrt(p * (1 - p) / 1e6)


def test_simulate_shift(capsys):
    code, out, _ = run(capsys, "simulate", "--lambda", "2", "--n", "200", "--shift", "10,0")
    rows = np.array([r for r in csv.reader(out.splitlines()[1:])], dtype=float)
    k = rows[:, 2]
    assert np.all(rows[:, 0] >= 10 * k) and np.all(rows[:, 0] <= 11 * k)


def test_diff_mass_quick(tmp_path):
    assert main(["diff-mass", "--quick", "--lambda", "3", "--theta", "0", "--out", str(tmp_path)]) == 0
    rows = list(csv.DictReader(open(tmp_path / "diff_mass.csv")))
    assert list(rows[0].keys())[:4] == ["lambda", "theta", "mass", "noise_floor"]
    assert len(rows) == 1 and float(rows[0]["mass"]) > 0


def test_noise_floor_command(capsys):
    code, out, _ = run(capsys, "noise-floor", "--quick", "--theta", "0", "--theta", "5")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "tau,noise_floor,raw_noise_floor" and len(lines) == 3


def test_tsv_format(tmp_path):
    assert main(["rho-table", "--theta", "0", "--format", "tsv", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "rho_table.tsv").read_text() == "theta\trho\n0\t0.7500\n"


def test_figures(tmp_path):
    argv = ["figures", "--quick", "--lambda", "3", "--theta", "5", "--out", str(tmp_path)]
    assert main(argv) == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["fig1_clayton_theta5.csv", "fig1_gauss_theta5.csv", "fig2_lambda3.csv",
                     "fig3_dots_lambda3_theta5.csv", "fig3_grid_lambda3_theta5.csv"]
    for name in ("fig1_clayton_theta5.csv", "fig1_gauss_theta5.csv", "fig2_lambda3.csv"):
        pts = np.loadtxt(tmp_path / name, delimiter=",", skiprows=1)
        assert pts.shape == (500, 2) and np.all((pts >= 0) & (pts <= 1))
    grid = np.loadtxt(tmp_path / "fig3_grid_lambda3_theta5.csv", delimiter=",", skiprows=1)
    assert grid.shape == (900, 3)


def test_invalid_config(capsys):
    code, _, err = run(capsys, "diff-mass", "--alpha", "0.5")
    assert code == 2 and "alpha" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cppcopula", "rho-table", "--theta", "0"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "theta,rho\n0,0.7500\n"
