"""End-to-end tests for the command-line interface (in-process)."""

import json

import numpy as np
import pytest

from chebbound.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBound:
    def test_univariate_reference(self, capsys):
        code, out, _ = run(capsys, "bound", "--rho", "2", "--n", "10", "--v", "1")
        assert code == 0
        assert "a          0.00390625" in out
        assert "winner" in out

    def test_json_output(self, capsys):
        code, out, _ = run(
            capsys, "bound", "--rho", "2.3,1.8", "--n", "10,10", "--v", "1",
            "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert np.isclose(doc["b"], 0.015017225907659782)
        assert np.isclose(doc["a"], 0.021431194550049202)
        assert doc["winner"] == "B"
        assert doc["sigma_star"] == [2, 1]  # 1-based in output
        assert doc["published_reference"] == {"a": 0.0066, "b": 0.0018}

    def test_reference_note_in_table(self, capsys):
        _, out, _ = run(capsys, "bound", "--rho", "2.3,1.8", "--n", "10,10", "--v", "1")
        assert "published reference values" in out
        _, out2, _ = run(capsys, "bound", "--rho", "2.0,1.8", "--n", "10,10", "--v", "1")
        assert "published reference values" not in out2

    def test_csv_output(self, capsys):
        code, out, _ = run(
            capsys, "bound", "--rho", "2", "--n", "10", "--v", "1", "--format", "csv"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("rho,n,v,variant,a,b,")
        assert len(lines) == 2

    def test_rho_at_most_one_is_usage_error(self, capsys):
        code, _, err = run(capsys, "bound", "--rho", "1.0", "--n", "5", "--v", "1")
        assert code == 2
        assert "rho must exceed 1" in err

    def test_mismatched_lists(self, capsys):
        code, _, err = run(capsys, "bound", "--rho", "2,3", "--n", "5", "--v", "1")
        assert code == 2
        assert "--rho/--n" in err

    def test_unparseable_list(self, capsys):
        code, _, err = run(capsys, "bound", "--rho", "2;3", "--n", "5,5", "--v", "1")
        assert code == 2

    def test_literal_variant(self, capsys):
        code, out, _ = run(
            capsys, "bound", "--rho", "2.3,1.8", "--n", "10,10", "--v", "1",
            "--variant", "literal", "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["variant"] == "literal"


class TestPlan:
    def test_all_selectors(self, capsys):
        code, out, _ = run(
            capsys, "plan", "--rho", "2.95,9.8", "--v", "1", "--eps", "2e-4",
            "--selector", "all", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"request", "plans", "savings_vs_b"}
        assert doc["plans"]["B"]["budget"] == [10, 5]
        assert doc["plans"]["COMBINED"]["grid_points"] < doc["plans"]["B"]["grid_points"]

    def test_trivial_budget(self, capsys):
        code, out, _ = run(
            capsys, "plan", "--rho", "2", "--v", "1", "--eps", "4", "--selector", "a"
        )
        assert code == 0
        assert "budget           (0)" in out
        assert "grid points      1" in out

    def test_zero_eps_usage_error(self, capsys):
        code, _, err = run(capsys, "plan", "--rho", "2", "--v", "1", "--eps", "0")
        assert code == 2
        assert "--eps" in err

    def test_unknown_selector(self, capsys):
        code, _, err = run(
            capsys, "plan", "--rho", "2", "--v", "1", "--eps", "1e-3",
            "--selector", "fastest",
        )
        assert code == 2

    def test_csv_single(self, capsys):
        code, out, _ = run(
            capsys, "plan", "--rho", "2.95,9.8", "--v", "1", "--eps", "2e-4",
            "--selector", "recursive", "--format", "csv",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "selector,budget,grid_points,certified_bound"
        assert lines[1].startswith("RECURSIVE,9 4,50,")


class TestInterp:
    def test_polynomial_probe_matches(self, capsys):
        code, out, _ = run(
            capsys, "interp", "--function", "poly-cubic-d2", "--n", "3,3",
            "--probe", "0.3,-0.4", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert abs(doc["value"] - doc["true_value"]) < 1e-11
        assert doc["sup_error_estimate"] <= doc["combined"]

    def test_rational_error_below_bound(self, capsys):
        code, out, _ = run(
            capsys, "interp", "--function", "sep-rational-d1", "--n", "20",
            "--probe", "0.5", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["sup_error_estimate"] <= doc["combined"]
        assert doc["probe_error"] <= doc["sup_error_estimate"] + 1e-15

    def test_probe_outside_domain(self, capsys):
        code, _, err = run(
            capsys, "interp", "--function", "poly-cubic-d1", "--n", "3",
            "--probe", "1.5",
        )
        assert code == 2
        assert "outside domain" in err

    def test_unknown_function(self, capsys):
        code, _, err = run(
            capsys, "interp", "--function", "tan-d1", "--n", "3", "--probe", "0.5"
        )
        assert code == 2
        assert "--function" in err

    def test_domain_override(self, capsys):
        code, out, _ = run(
            capsys, "interp", "--function", "poly-cubic-d1", "--domain", "0:2",
            "--n", "3", "--probe", "1.5", "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["domain"] == [[0.0, 2.0]]

    def test_wrong_probe_arity(self, capsys):
        code, _, err = run(
            capsys, "interp", "--function", "exp-d2", "--n", "4,4", "--probe", "0.5"
        )
        assert code == 2
        assert "--probe" in err


class TestVerify:
    def test_quick_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "quick")
        assert code == 0
        assert "failed   0" in out

    def test_csv_stdout(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "quick", "--format", "csv")
        assert code == 0
        assert out.startswith("function_id,dimension,domain,")

    def test_csv_file(self, capsys, tmp_path):
        target = tmp_path / "records.csv"
        code, _, _ = run(capsys, "verify", "--suite", "quick", "--csv", str(target))
        assert code == 0
        lines = target.read_text().strip().split("\n")
        assert len(lines) >= 5

    def test_json_summary(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "quick", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["passed"] is True
        assert doc["failed"] == 0
        assert len(doc["records"]) == doc["total"]


class TestSweep:
    def test_default_format_is_csv(self, capsys):
        code, out, _ = run(capsys, "sweep", "--steps", "12")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "rho,a,b,winner"
        # 12 grid rows plus the bisected crossover row
        assert len(lines) == 14
        assert lines[-1].endswith("CROSSOVER")

    def test_byte_determinism(self, capsys):
        _, first, _ = run(capsys, "sweep", "--steps", "25")
        _, second, _ = run(capsys, "sweep", "--steps", "25")
        assert first == second

    def test_table_summary(self, capsys):
        code, out, _ = run(capsys, "sweep", "--steps", "12", "--format", "table")
        assert code == 0
        assert "crossings    1" in out

    def test_bad_range(self, capsys):
        code, _, err = run(capsys, "sweep", "--rho-range", "0.5:3")
        assert code == 2
        assert "--rho-range" in err

    def test_csv_file(self, capsys, tmp_path):
        target = tmp_path / "scan.csv"
        code, _, _ = run(capsys, "sweep", "--steps", "12", "--csv", str(target))
        assert code == 0
        assert target.read_text().startswith("rho,a,b,winner")


class TestEnvironment:
    def test_thread_cap_garbage(self, capsys, monkeypatch):
        monkeypatch.setenv("CHEBBOUND_THREADS", "many")
        code, _, err = run(capsys, "bound", "--rho", "2", "--n", "10", "--v", "1")
        assert code == 2
        assert "CHEBBOUND_THREADS" in err

    def test_thread_cap_negative(self, capsys, monkeypatch):
        monkeypatch.setenv("CHEBBOUND_THREADS", "-2")
        code, _, _ = run(capsys, "bound", "--rho", "2", "--n", "10", "--v", "1")
        assert code == 2

    def test_thread_cap_valid(self, capsys, monkeypatch):
        monkeypatch.setenv("CHEBBOUND_THREADS", "8")
        code, _, _ = run(capsys, "bound", "--rho", "2", "--n", "10", "--v", "1")
        assert code == 0

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0

    def test_missing_subcommand(self, capsys):
        assert main([]) == 2
