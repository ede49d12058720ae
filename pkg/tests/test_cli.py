import subprocess
import sys

import numpy as np
import pytest

from multiphoton import Outcome
from multiphoton.cli import RunConfig, distribution_csv, format_number, main, peaks_report, sweep_csv

HEADER = "tau,p_excited,p_ground,lambda_plus,lambda_minus,r,w,theta,phi,n_plus,n_minus,q_plus,q_minus"


def read_csv(path):
    text = path.read_bytes().decode()
    lines = text.split("\n")
    assert lines[-1] == ""
    return lines[0].split(","), [line.split(",") for line in lines[1:-1]]


def test_sweep_vacuum(tmp_path):
    out = tmp_path / "vac.csv"
    assert main(["sweep", "--alpha", "0", "--steps", "3", "--tau-end", str(np.pi), "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert ",".join(header) == HEADER
    assert len(rows) == 3
    n_plus = [float(r[header.index("n_plus")]) for r in rows]
    assert n_plus == pytest.approx([0, 1, 0], abs=1e-12)
    # undefined Q and absent psi_minus are empty cells
    assert rows[0][header.index("q_plus")] == ""
    assert rows[0][header.index("n_minus")] == ""


def test_sweep_format(tmp_path):
    out = tmp_path / "s.csv"
    main(["sweep", "--alpha", "2", "--steps", "11", "--tau-end", "1", "--precision", "6", "--out", str(out)])
    data = out.read_bytes()
    assert b"\r" not in data
    header, rows = read_csv(out)
    for row in rows:
        assert len(row) == 13
        for cell in row:
            if cell:
                assert "e" not in cell and len(cell.split(".")[1]) == 6
        p_e, p_g = float(row[1]), float(row[2])
        assert 0 <= p_e <= 1 and 0 <= p_g <= 1
        assert abs(p_e + p_g - 1) <= 1e-6
        l_p, l_m = float(row[3]), float(row[4])
        assert abs(l_p + l_m - 1) <= 1e-6


def test_sweep_byte_identical(tmp_path):
    a, b, c = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    args = ["sweep", "--alpha", "4", "--steps", "300", "--tau-end", "3"]
    main(args + ["--out", str(a)])
    main(args + ["--out", str(b)])
    main(args + ["--out", str(c), "--workers", "4"])
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_sweep_default_row_near_1_75():
    text = sweep_csv(RunConfig(steps=1501))
    lines = text.splitlines()
    header = lines[0].split(",")
    rows = [list(map(lambda x: float(x) if x else None, l.split(","))) for l in lines[1:]]
    near = min(rows, key=lambda r: abs(r[0] - 1.75))
    assert near[header.index("n_plus")] == pytest.approx(18.36, abs=0.05)


def test_distribution_excited_at_zero():
    text = distribution_csv(RunConfig(alpha=4, tau=0.0, outcome=Outcome.EXCITED))
    lines = text.splitlines()
    assert lines[0] == "n,p_initial,p_conditional"
    assert len(lines) == 1 + 67
    for line in lines[1:]:
        _, a, b = line.split(",")
        assert a == b


def test_distribution_ground_vacuum(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["distribution", "--alpha", "0", "--tau", str(np.pi / 2), "--outcome", "Ground", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    p_cond = [float(r[2]) for r in rows]
    assert p_cond[1] == pytest.approx(1)
    assert sum(p_cond) - p_cond[1] == pytest.approx(0, abs=1e-12)


def test_distribution_schmidt_plus_shift(tmp_path):
    out = tmp_path / "d.csv"
    main(["distribution", "--alpha", "4", "--tau", "1.75", "--out", str(out)])
    _, rows = read_csv(out)
    p_init = np.array([float(r[1]) for r in rows])
    p_cond = np.array([float(r[2]) for r in rows])
    assert np.argmax(p_init) in (15, 16)
    assert np.argmax(p_cond) > np.argmax(p_init)
    assert p_cond.sum() == pytest.approx(1, abs=1e-9)


def test_distribution_zero_probability(tmp_path, capsys):
    out = tmp_path / "d.csv"
    code = main(["distribution", "--alpha", "4", "--tau", "0", "--outcome", "Ground", "--out", str(out)])
    assert code != 0
    assert "Ground" in capsys.readouterr().err
    assert not out.exists()


def test_unwritable_path(capsys):
    code = main(["sweep", "--alpha", "1", "--steps", "3", "--out", "/nonexistent-dir/x.csv"])
    assert code != 0
    err = capsys.readouterr().err
    assert err.startswith("multiphoton:") and err.count("\n") == 1


def test_invalid_config(capsys):
    assert main(["sweep", "--steps", "1"]) != 0
    assert main(["sweep", "--n-max", "10", "--alpha", "4"]) != 0
    assert "n_max" in capsys.readouterr().err


def test_peaks_report():
    report = peaks_report(RunConfig())
    lines = [l for l in report.splitlines() if not l.startswith("#")]
    assert lines
    first = [float(x) for x in lines[0].split()]
    tau, n_plus, delta_n, p_e, p_g, l_p, l_m = first
    assert delta_n == pytest.approx(n_plus - 16)
    assert p_e + p_g == pytest.approx(1, abs=1e-11)
    assert l_p + l_m == pytest.approx(1, abs=1e-11)


def test_format_number():
    assert format_number(None, 3) == ""
    assert format_number(-1e-20, 4) == "0.0000"
    assert format_number(-0.5, 2) == "-0.50"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "multiphoton", "sweep", "--alpha", "0", "--steps", "2", "--tau-end", "1", "--precision", "3"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.splitlines()[0] == HEADER
