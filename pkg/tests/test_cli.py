"""Exit codes, output formats and determinism of the command line tool."""

import json
import subprocess
import sys

from ballq import cli, families


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_json_range(capsys):
    code, out, _ = run_cli(capsys, "verify", "--family", "gamma", "--n", "1..3",
                           "--format", "json")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    docs = [json.loads(line) for line in lines]
    assert [doc["n"] for doc in docs] == [1, 2, 3]
    assert all(doc["passed"] for doc in docs)
    assert docs[2]["values"]["cusps"] == 4


def test_verify_markdown_contains_cusps(capsys):
    code, out, _ = run_cli(capsys, "verify", "--family", "gamma", "--n", "3",
                           "--format", "markdown")
    assert code == 0
    assert "cusps: 4" in out


def test_verify_rejects_zero(capsys):
    code, _, err = run_cli(capsys, "verify", "--family", "lambda", "--n", "0")
    assert code == 2
    assert "usage" in err.lower() or "n" in err


def test_verify_rejects_bad_range(capsys):
    code, _, _ = run_cli(capsys, "verify", "--family", "gamma", "--n", "5..2")
    assert code == 2
    code, _, _ = run_cli(capsys, "verify", "--family", "gamma", "--n", "x")
    assert code == 2


def test_usage_error_on_unknown_flag(capsys):
    code = cli.main(["verify", "--family", "gamma"])  # missing --n
    assert code == 2


def test_verify_reports_failure_with_exit_one(capsys, monkeypatch):
    from ballq.families import CheckResult, ConstructionReport

    def broken(n):
        return ConstructionReport(
            family="gamma", n=n, passed=False,
            values={"chi": 0, "k2": 0, "boundary": [], "log_c1_squared": 0,
                    "log_c2": 0, "bmy": "Violation", "cusps": 0, "bdf_type": None,
                    "volume": {"pi_squared_coefficient": "0", "text": "(0)·π²",
                               "approx_display_only": 0.0}},
            checks=(CheckResult("chi", False, 1, 0),),
            assumptions=(), flags=(),
        )

    monkeypatch.setattr(families, "build_gamma_family", broken)
    code, out, _ = run_cli(capsys, "verify", "--family", "gamma", "--n", "1")
    assert code == 1
    assert json.loads(out.strip())["passed"] is False


def test_verify_write_to_file(tmp_path, capsys):
    target = tmp_path / "report.jsonl"
    code, out, _ = run_cli(capsys, "verify", "--family", "lambda", "--n", "1..2",
                           "--out", str(target))
    assert code == 0
    assert out == ""
    lines = target.read_text().strip().splitlines()
    assert len(lines) == 2


def test_verify_io_error(tmp_path, capsys):
    missing_dir = tmp_path / "no" / "such" / "dir" / "x.json"
    code, _, err = run_cli(capsys, "verify", "--family", "gamma", "--n", "1",
                           "--out", str(missing_dir))
    assert code == 3
    assert "cannot write" in err


def test_jobs_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv(cli.JOBS_ENV_VAR, "2")
    code, out, _ = run_cli(capsys, "verify", "--family", "gamma", "--n", "1..2")
    assert code == 0
    assert len(out.strip().splitlines()) == 2
    monkeypatch.setenv(cli.JOBS_ENV_VAR, "zero")
    code, _, _ = run_cli(capsys, "verify", "--family", "gamma", "--n", "1")
    assert code == 2


def test_spectrum_markdown(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--count", "3")
    assert code == 0
    assert "(8/3)·π²" in out
    assert "(16/3)·π²" in out
    assert "(8)·π²" in out
    assert "saturates volume spectrum up to cutoff: True" in out


def test_spectrum_json(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--count", "20", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["rows"]) == 20
    assert doc["saturates_volume_spectrum"] is True
    coefficients = {row["pi_squared_coefficient"] for row in doc["rows"]}
    assert len(coefficients) == 20


def test_spectrum_rejects_zero(capsys):
    code, _, _ = run_cli(capsys, "spectrum", "--count", "0")
    assert code == 2


def test_intersect_slope_curves(capsys):
    code, out, _ = run_cli(capsys, "intersect", "graph:1,0", "graph:r,-1/3+1/3r",
                           "--n", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "points"
    assert doc["count"] == 3
    assert len(doc["points"]) == 3


def test_intersect_identical(capsys):
    code, out, _ = run_cli(capsys, "intersect", "graph:1,0", "graph:1,0", "--n", "2")
    assert code == 0
    assert json.loads(out)["kind"] == "identical"


def test_intersect_level_curves_empty(capsys):
    code, out, _ = run_cli(capsys, "intersect", "graph:0,2/3", "graph:0,1-1/3r",
                           "--n", "4")
    assert code == 0
    assert json.loads(out)["kind"] == "empty"


def test_intersect_with_fiber(capsys):
    code, out, _ = run_cli(capsys, "intersect", "graph:r,-1/3+1/3r", "fiber:0",
                           "--n", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 1
    assert doc["points"][0]["w"] == "2/3+1/3ρ"


def test_intersect_parse_error(capsys):
    code, _, err = run_cli(capsys, "intersect", "graph:bogus", "graph:1,0", "--n", "1")
    assert code == 2
    code, _, _ = run_cli(capsys, "intersect", "blob:1", "graph:1,0", "--n", "1")
    assert code == 2


def test_classify_type_five(capsys):
    code, out, _ = run_cli(capsys, "classify", "--order", "3", "--multiplier", "rho")
    assert code == 0
    assert json.loads(out)["index"] == 5


def test_classify_negation(capsys):
    code, out, _ = run_cli(capsys, "classify", "--order", "2", "--multiplier", "neg")
    assert code == 0
    assert json.loads(out)["index"] == 1


def test_classify_invalid_order(capsys):
    code, out, _ = run_cli(capsys, "classify", "--order", "5", "--multiplier", "rho")
    assert code == 0
    doc = json.loads(out)
    assert doc["invalid"] is True
    assert doc["constraint"] == "lambda-constraint"


def test_classify_unknown_multiplier(capsys):
    code, _, _ = run_cli(capsys, "classify", "--order", "3", "--multiplier", "tau")
    assert code == 2


def test_parallel_output_matches_serial():
    command = [sys.executable, "-m", "ballq", "verify", "--family", "gamma",
               "--n", "1..4", "--format", "json"]
    serial = subprocess.run(command + ["--jobs", "1"], capture_output=True, check=True)
    parallel = subprocess.run(command + ["--jobs", "4"], capture_output=True, check=True)
    assert serial.stdout == parallel.stdout


def test_intersect_two_fibers(capsys):
    code, out, _ = run_cli(capsys, "intersect", "fiber:0", "fiber:0", "--n", "2")
    assert code == 0
    assert json.loads(out)["kind"] == "identical"
    code, out, _ = run_cli(capsys, "intersect", "fiber:0", "fiber:1", "--n", "2")
    assert code == 0
    assert json.loads(out)["kind"] == "empty"


def test_intersect_rejects_bad_level(capsys):
    code, _, _ = run_cli(capsys, "intersect", "graph:1,0", "graph:r,0", "--n", "0")
    assert code == 2


def test_spectrum_out_file(tmp_path, capsys):
    target = tmp_path / "spectrum.json"
    code, out, _ = run_cli(capsys, "spectrum", "--count", "2", "--format", "json",
                           "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["saturates_volume_spectrum"] is True
