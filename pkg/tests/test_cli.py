import csv
import io
import json
import subprocess
import sys

import pytest

from quadric_census.cli import run, series_csv
from quadric_census.count import fast_count_w
from quadric_census.mainterm import main_term_w, make_series


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_constants_json(capsys):
    code, out, _ = call(capsys, "constants", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert abs(float(doc["C"]) - 0.616174) <= 5e-7
    assert set(doc) >= {"C", "euler_gamma", "gamma_quarter", "v_gamma1", "zeta_prime_over_zeta_2"}
    assert all(isinstance(v, str) for v in doc.values())
    assert list(doc) == sorted(doc)


def test_constants_csv(capsys):
    code, out, _ = call(capsys, "constants", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert ["C", "0.61617364558794"] in rows or any(r[0] == "C" for r in rows)


def test_non_square_exit_2(capsys):
    code, _, err = call(capsys, "count", "--d", "145", "--t", "100")
    assert code == 2
    assert "square discriminant required" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["kronecker", "--z", "0,1", "--p", "4"],
        ["kronecker", "--z", "0.2,-1"],
        ["kronecker", "--z", "0.2,0"],
        ["eis-check", "--p", "6"],
        ["shear", "--p", "9", "--t", "5"],
        ["count", "--d", "144"],
        ["count", "--d", "144", "--t-grid", "log:100:10:3"],
        ["classify", "--form", "1,1,1"],
        ["orbits", "--n", "0"],
        ["nonsense"],
    ],
)
def test_validation_errors_exit_2(capsys, argv):
    code, _, _ = call(capsys, *argv)
    assert code == 2


def test_count_grid_csv(capsys):
    code, out, _ = call(capsys, "count", "--d", "144", "--t-grid", "log:1000:10000:20", "--format", "csv")
    assert code == 0
    lines = out.split("\n")
    assert lines[0] == "T,count,main,residual"
    assert lines[-1] == ""
    assert len(lines) == 22
    assert "\r" not in out
    for line in lines[1:-1]:
        assert line == line.strip()
        T, count, main, res = line.split(",")
        assert int(count) == fast_count_w(144, float(T)).total
        assert abs(float(main) - main_term_w(144, float(T))) <= 1e-9 * float(main)


def test_csv_formatting_exact():
    # the residual is the float difference, printed to 15 significant digits
    s = make_series(144, "W", [1000.0, 2.5], [24636, 7], [24580.766675462723, 1.0 / 3.0])
    text = series_csv(s)
    assert text == (
        "T,count,main,residual\n"
        "1000,24636,24580.7666754627,55.2333245372756\n"
        "2.5,7,0.333333333333333,6.66666666666667\n"
    )


def test_count_json_and_q(capsys):
    code, out, _ = call(capsys, "count-q", "--d", "1", "--t", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["target"] == "Q"
    assert doc["rows"][0]["count"] == 10


def test_count_svg(capsys, tmp_path):
    path = tmp_path / "fig.svg"
    code, out, _ = call(capsys, "count", "--d", "144", "--t-grid", "log:100:1000:8", "--format", "svg", "--output", str(path))
    assert code == 0 and out == ""
    text = path.read_text()
    assert text.startswith("<svg") and text.rstrip().endswith("</svg>")
    assert text.count("<polyline") == 4


def test_orbits_and_classify(capsys):
    code, out, _ = call(capsys, "orbits", "--n", "2", "--format", "json")
    assert code == 0
    assert [r["rep"] for r in json.loads(out)["reps"]] == [["0", "2", "0"], ["0", "2", "1"]]
    code, out, _ = call(capsys, "orbits", "--n", "2", "--lattice", "Gamma2", "--format", "json")
    assert len(json.loads(out)["reps"]) == 8
    code, out, _ = call(capsys, "classify", "--form", "3,5,0", "--format", "json")
    assert code == 0
    assert json.loads(out)["j"] == 2
    code, out, _ = call(capsys, "classify", "--form", "3/2,2,1/2", "--lattice", "gamma2", "--format", "json")
    assert code == 0
    assert json.loads(out)["kind"] in ("plain", "tilde")


def test_kronecker(capsys):
    code, out, _ = call(capsys, "kronecker", "--z", "0,1", "--format", "json")
    assert code == 0
    assert float(json.loads(out)["value"]) == pytest.approx(1.87428554777, abs=1e-10)


def test_eis_check(capsys):
    code, out, _ = call(capsys, "eis-check", "--p", "3", "--radius", "600")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert max(abs(float(r["diff"])) for r in rows) <= 1e-6
    code, _, _ = call(capsys, "eis-check", "--p", "3", "--radius", "50", "--tol", "1e-15")
    assert code == 3


def test_shear(capsys):
    code, out, _ = call(capsys, "shear", "--delta", "0.05", "--t-grid", "lin:25:400:2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["T"]) for r in rows] == [25.0, 400.0]
    assert abs(float(rows[1]["residual"])) < abs(float(rows[0]["residual"]))
    code, out, _ = call(capsys, "shear", "--delta", "0.05", "--t", "100", "--p", "2", "--two-sided", "--format", "json")
    assert code == 0


def test_fit_roundtrip(capsys, tmp_path):
    path = tmp_path / "w.csv"
    call(capsys, "count", "--d", "144", "--t-grid", "log:1000:10000:20", "--output", str(path))
    code, out, _ = call(capsys, "fit", "--input", str(path))
    assert code == 0
    assert float(out.split()[-1]) <= 0.95
    bad = tmp_path / "bad.csv"
    bad.write_text("T,count,main,residual\n10,1,0.5,0.5\n")
    code, _, _ = call(capsys, "fit", "--input", str(bad))
    assert code == 2


def test_threads_env_fallback(capsys, monkeypatch):
    _, one, _ = call(capsys, "count", "--d", "144", "--t-grid", "log:1000:5000:5")
    monkeypatch.setenv("QUADRIC_CENSUS_THREADS", "4")
    _, four, _ = call(capsys, "count", "--d", "144", "--t-grid", "log:1000:5000:5")
    assert one == four


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quadric_census", "count", "--d", "145", "--t", "100"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "square discriminant required" in proc.stderr
