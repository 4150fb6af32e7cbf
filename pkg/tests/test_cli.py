import json
import math

import pandas as pd
import pytest

from src.cli import main
from src.schema import CliffordSpec, RunReport
from src.spectrum import clifford_spectrum_exact
from src.utils.misc import dumps_report


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.mark.parametrize("r2, weak, strong", [("0.5", 4, 5), ("0.2", 6, 7), ("0.9", 8, 9)])
def test_index_exact_clifford(capsys, r2, weak, strong):
    code, report = run_json(capsys, "index", "clifford", "--r2", r2)
    assert code == 0
    index = report["results"]["index"]
    assert (index["weak_lo"], index["weak_hi"]) == (weak, weak)
    assert (index["strong_lo"], index["strong_hi"]) == (strong, strong)
    assert index["nullity"] == 4
    assert report["settings"]["method"] == "exact"
    assert report["command"] == f"index clifford --r2 {r2}"


def test_index_umbilical(capsys):
    code, report = run_json(capsys, "index", "umbilical", "--n", "3", "--rho", "0.9")
    assert code == 0
    index = report["results"]["index"]
    assert index["weak_lo"] == index["weak_hi"] == 0


def test_index_discrete(capsys):
    code, report = run_json(capsys, "index", "clifford", "--r2", "0.2", "--discrete", "--grid", "32")
    assert code == 0
    index = report["results"]["index"]
    assert (index["weak_lo"], index["weak_hi"]) == (6, 6)
    assert report["settings"]["tau"] == 1e-3
    assert report["results"]["geometry"]["H_constant"] is True


def test_output_is_deterministic(capsys):
    args = ("index", "clifford", "--r2", "0.3")
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert first == second
    assert json.loads(first)["timing_ms"] is None


def test_timing_is_opt_in(capsys):
    code, report = run_json(capsys, "index", "clifford", "--timing")
    assert code == 0
    assert report["timing_ms"] >= 0.0
    assert "--timing" not in report["command"]


def test_csv_and_text_formats(capsys):
    code, out = run(capsys, "spectrum", "clifford", "--r2", "0.2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "eigenvalue,multiplicity,label"
    code, out = run(capsys, "index", "clifford", "--format", "text")
    assert code == 0
    assert out.startswith("command: index clifford --format text")


def test_spectrum_simons(capsys):
    code, report = run_json(capsys, "spectrum", "clifford", "--r2", "0.5", "--simons")
    assert code == 0
    assert report["results"]["simons"]["verdict"] is True
    code, _ = run(capsys, "spectrum", "clifford", "--r2", "0.2", "--simons")
    assert code == 2


def test_report_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out = run(capsys, "index", "clifford", "--report", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["results"]["index"]["weak_lo"] == 4


def test_verify_lemma_passes(capsys):
    code, report = run_json(capsys, "verify", "lemma", "--r2", "0.2", "--grid", "32")
    assert code == 0
    assert report["results"]["passed"] is True
    assert report["results"]["max_residual"] <= 1e-6
    assert report["settings"]["coarse_grid"] == 16


def test_verify_identities_converge(capsys):
    code, report = run_json(capsys, "verify", "identities", "--r2", "0.2", "--grid", "64")
    assert code == 0
    rows = report["results"]["residuals"]["rows"]
    assert len(rows) == 8
    assert all(3.5 <= row["ratio"] <= 4.5 for row in rows)


def test_verify_control_stalls(capsys):
    code, report = run_json(capsys, "verify", "identities", "--family", "control-noncmc", "--grid", "64")
    assert code == 1
    assert report["results"]["passed"] is False
    assert "stall" in report["results"]["residuals"]["diagnosis"]


def test_verify_theorem(capsys):
    code, report = run_json(capsys, "verify", "theorem", "--r2", "0.9", "--grid", "32")
    assert code == 0
    assert report["results"]["verdict"] == "ind_T >= 4"
    assert report["results"]["certificate"]["certified"] is True


def test_verify_theorem_refuses_umbilical(capsys):
    code, out = run(capsys, "verify", "theorem", "--family", "umbilical")
    assert code == 4
    assert out == ""


def test_sweep(capsys, tmp_path):
    csv = tmp_path / "sweep.csv"
    png = tmp_path / "sweep.png"
    code, report = run_json(
        capsys, "sweep", "--r2-values", "0.2,0.5,0.9", "--out", str(csv), "--plot", str(png), "--workers", "2"
    )
    assert code == 0
    df = pd.read_csv(csv)
    assert list(df.columns) == ["r2", "H", "A2", "weak_index", "strong_index", "lambda_min"]
    assert df["weak_index"].tolist() == [6, 4, 8]
    assert df["strong_index"].tolist() == [7, 5, 9]
    assert png.stat().st_size > 0
    assert report["results"]["violations_n_plus_2"] == 0


def _lambda_20(r2):
    report = clifford_spectrum_exact(CliffordSpec.from_r2(1, 1, r2), window=1.0)
    return next(e.eigenvalue for e in report.entries if tuple(e.label) == (2, 0))


def test_sweep_steps_across_closed_form_crossing(capsys):
    # lambda_{2,0} = 3 / r^2 - 1 / (1 - r^2) vanishes at r^2 = 3/4 with multiplicity 2
    assert _lambda_20(0.75) == pytest.approx(0.0, abs=1e-12)
    assert _lambda_20(0.74) > 0.0 > _lambda_20(0.76)
    code, report = run_json(capsys, "sweep", "--r2-values", "0.74,0.76")
    assert code == 0
    rows = report["results"]["rows"]
    assert [row["weak_index"] for row in rows] == [4, 6]
    assert [row["strong_index"] for row in rows] == [5, 7]


def test_report_survives_schema_round_trip(capsys):
    code, out = run(capsys, "index", "clifford", "--r2", "0.2")
    assert code == 0
    report = RunReport.model_validate(json.loads(out))
    assert dumps_report(report.model_dump()) + "\n" == out


def test_verify_identities_on_positions_only_file(capsys, tmp_path):
    sample = tmp_path / "clifford_positions.txt"
    code, _ = run(
        capsys, "validate", "--family", "clifford", "--r2", "0.2", "--grid", "64",
        "--export", str(sample), "--positions-only",
    )
    assert code == 0

    code, report = run_json(capsys, "verify", "identities", "--family", "file", "--file", str(sample))
    assert code == 0
    settings = report["settings"]
    assert settings["grid"] == 64
    assert settings["coarse_grid"] == 32
    assert settings["tolerance"] == pytest.approx(2.0 * (2 * math.pi / 64) ** 2)
    assert "tolerance_rule" in settings
    results = report["results"]
    assert results["passed"] is True
    assert results["residuals"]["diagnosis"] is None
    assert all(3.5 <= row["ratio"] <= 4.5 for row in results["residuals"]["rows"] if row["ratio"] is not None)

def test_validate_export_and_reload(capsys, tmp_path):
    sample = tmp_path / "clifford.txt"
    code, report = run_json(
        capsys, "validate", "--family", "clifford", "--r2", "0.2", "--grid", "16", "--export", str(sample)
    )
    assert code == 0
    assert report["results"]["passed"] is True

    code, report = run_json(capsys, "validate", "--file", str(sample))
    assert code == 0
    assert report["results"]["residuals"]["derivative_source"] == "file"
    assert report["results"]["geometry"]["H_mean"] == pytest.approx(-0.75, abs=1e-10)


@pytest.mark.parametrize("argv", [
    ("index", "torus"),
    ("index", "clifford", "--r2", "1.5"),
    ("index", "control-noncmc", "--exact"),
    ("index", "umbilical", "--discrete"),
    ("index", "umbilical", "--n", "1"),
    ("verify", "lemma", "--family", "umbilical"),
    ("sweep", "--r2-values", ","),
])
def test_usage_errors(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2
    assert out == ""


def test_missing_file(capsys, tmp_path):
    code, _ = run(capsys, "validate", "--file", str(tmp_path / "absent.txt"))
    assert code == 5


def test_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("4 4 1.0\n")
    code, _ = run(capsys, "index", "file", "--file", str(path))
    assert code == 5


def test_degenerate_file(capsys, tmp_path):
    path = tmp_path / "point.txt"
    rows = [f"{i} {j} 1 0 0 0" for i in range(4) for j in range(4)]
    path.write_text("4 4 6.2831853071795862 6.2831853071795862 0\n" + "\n".join(rows) + "\n")
    code, _ = run(capsys, "validate", "--file", str(path))
    assert code == 3
