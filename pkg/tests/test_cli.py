# tests/test_cli.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
import io
import json

import pytest

from ringstab.cli import EXIT_COMPUTATION, EXIT_OK, EXIT_USAGE, run
from ringstab.core import equilibrium


def _record(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestClassify:
    def test_stable_alternating(self, capsys):
        code, record = _record(capsys, ["classify", "--n", "14", "--ratio", "10"])
        assert code == EXIT_OK
        assert record["command"] == "classify"
        assert record["inputs"] == {"n": 14, "ratio": 10.0}
        assert record["results"]["verdict"] == "stable"
        assert record["results"]["method"] == "block"
        assert record["results"]["zero_mode_count"] == 1

    def test_equal_masses(self, capsys):
        code, record = _record(capsys, ["classify", "--n", "6"])
        assert code == EXIT_OK
        assert record["results"]["verdict"] == "unstable"
        assert record["results"]["failed_conditions"]

    def test_odd_with_ratio_is_usage_error(self, capsys):
        assert run(["classify", "--n", "9", "--ratio", "2"]) == EXIT_USAGE
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "one-parameter" in captured.err

    @pytest.mark.parametrize("value", ["-0.001", "0"])
    def test_nonpositive_zero_tol_is_usage_error(self, capsys, value):
        assert run(["--zero-tol", value, "classify", "--n", "14", "--ratio", "10"]) == EXIT_USAGE
        assert capsys.readouterr().out == ""

    def test_small_n_is_computation_error(self, capsys):
        assert run(["classify", "--n", "2"]) == EXIT_COMPUTATION

    def test_output_is_deterministic(self, capsys):
        run(["classify", "--n", "10", "--ratio", "0.5"])
        first = capsys.readouterr().out
        run(["classify", "--n", "10", "--ratio", "0.5"])
        assert capsys.readouterr().out == first

    def test_numbers_are_strings(self, capsys):
        _, record = _record(capsys, ["classify", "--n", "8"])
        assert all(isinstance(v, str) for v in record["results"]["eigenvalues"])


class TestOtherCommands:
    def test_interval(self, capsys):
        code, record = _record(capsys, ["interval", "--j", "5"])
        assert code == EXIT_OK
        results = record["results"]
        assert results["kind"] == "finite"
        assert float(results["lo"]) == pytest.approx(0.16709497914366, abs=1e-9)
        assert float(results["hi"]) == pytest.approx(5.984620274797297, abs=1e-9)

    def test_interval_unbounded_and_empty(self, capsys):
        _, record = _record(capsys, ["interval", "--j", "9"])
        assert (record["results"]["lo"], record["results"]["hi"]) == ("0", "inf")
        _, record = _record(capsys, ["interval", "--j", "2"])
        assert record["results"]["kind"] == "empty"
        assert record["results"]["lo"] is None

    def test_spectrum(self, capsys):
        code, record = _record(capsys, ["spectrum", "--n", "12", "--ratio", "2"])
        assert code == EXIT_OK
        results = record["results"]
        assert len(results["analytic"]) == len(results["oracle"]) == 12
        assert float(results["max_deviation"]) < 1e-9

    def test_rank(self, capsys):
        code, record = _record(capsys, ["rank", "--n", "8"])
        assert code == EXIT_OK
        assert record["results"]["rank"] == 6
        assert record["results"]["family"]["parameter_count"] == 2
        assert len(record["results"]["f1"]) == 8

    def test_rank_margin_from_config(self, tmp_path, capsys):
        smallest = min(abs(v) for v in equilibrium.f1_table(7) if v != 0.0)
        zero_tol = str(float(smallest) / 5.0)
        assert run(["--zero-tol", zero_tol, "rank", "--n", "7"]) == EXIT_COMPUTATION
        capsys.readouterr()
        path = tmp_path / "narrow.yaml"
        path.write_text("rank_margin: 2\n", encoding="utf-8")
        code, record = _record(capsys, ["--config", str(path), "--zero-tol", zero_tol, "rank", "--n", "7"])
        assert code == EXIT_OK
        assert record["results"]["rank"] == 6
        assert record["results"]["family"]["parameter_count"] == 1

    def test_residual(self, capsys):
        _, record = _record(capsys, ["residual", "--n", "8", "--ratio", "3"])
        assert float(record["results"]["max_abs"]) < 1e-12
        _, record = _record(capsys, ["residual", "--n", "8", "--perturb", "0.05", "--seed", "3"])
        assert float(record["results"]["max_abs"]) > 1e-6

    def test_sweep(self, capsys):
        code, record = _record(capsys, ["sweep", "--n", "8", "--from", "0.1", "--to", "10", "--points", "3"])
        assert code == EXIT_OK
        assert [p["verdict"] for p in record["results"]["points"]] == ["unstable", "stable", "unstable"]

    def test_sweep_bad_range(self):
        assert run(["sweep", "--n", "8", "--from", "5", "--to", "1"]) == EXIT_USAGE

    def test_verify_subset(self, capsys):
        code, record = _record(capsys, ["verify", "--only", "kernel_anchors", "intervals"])
        assert code == EXIT_OK
        assert record["results"]["passed"] is True
        assert [c["name"] for c in record["results"]["checks"]] == ["kernel_anchors", "intervals"]


class TestFnTable:
    def test_csv(self):
        out = io.StringIO()
        assert run(["fn-table", "--fn", "f", "--from", "0.5", "--to", "3.0", "--points", "6"], out=out) == EXIT_OK
        lines = out.getvalue().splitlines()
        assert lines[0] == "phi,value"
        assert len(lines) == 7
        assert lines[-1].startswith("3,")

    def test_singular_point(self):
        out = io.StringIO()
        assert run(["fn-table", "--fn", "F", "--from", "-1", "--to", "1", "--points", "3"], out=out) == EXIT_COMPUTATION

    def test_too_few_points(self):
        assert run(["fn-table", "--fn", "F", "--from", "1", "--to", "2", "--points", "1"]) == EXIT_USAGE


class TestUsage:
    def test_missing_command(self):
        assert run([]) == EXIT_USAGE

    def test_bad_argument(self):
        assert run(["classify", "--n", "seven"]) == EXIT_USAGE

    def test_version(self, capsys):
        assert run(["--version"]) == EXIT_OK
        assert "ringstab" in capsys.readouterr().out

    def test_missing_config(self, tmp_path):
        assert run(["--config", str(tmp_path / "nope.yaml"), "classify", "--n", "7"]) == EXIT_USAGE

    def test_config_file(self, tmp_path, capsys):
        path = tmp_path / "ringstab.yaml"
        path.write_text("zero_tol_factor: 1.0e-6\n", encoding="utf-8")
        code, record = _record(capsys, ["--config", str(path), "classify", "--n", "7"])
        assert code == EXIT_OK
        eigs = [abs(float(v)) for v in record["results"]["eigenvalues"]]
        assert float(record["results"]["zero_tol"]) == pytest.approx(1e-6 * max(eigs), rel=1e-9)

    def test_log_file(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("RINGSTAB_LOG_DIR", str(tmp_path))
        assert run(["--log-level", "DEBUG", "classify", "--n", "7"]) == EXIT_OK
        files = list(tmp_path.glob("ringstab-*.log"))
        assert len(files) == 1
        assert "classify n=7" in files[0].read_text(encoding="utf-8")
