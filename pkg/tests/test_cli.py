import json
import subprocess
import sys

import pytest

from hetalloc.report import CSV_HEADER, parse_report_csv

from conftest import REPO_ROOT, TABLE3, small_scenario_dict


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "hetalloc", *args],
        capture_output=True,
        text=True,
        cwd=str(REPO_ROOT),
    )


class TestRun:
    def test_csv_to_stdout(self):
        proc = run_cli("run", "--scenario", str(TABLE3), "--format", "csv")
        assert proc.returncode == 0, proc.stderr
        lines = proc.stdout.splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 16
        assert proc.stdout.endswith("\n")

    def test_csv_round_trips(self):
        proc = run_cli("run", "--scenario", str(TABLE3), "--format", "csv")
        rows = parse_report_csv(proc.stdout)
        assert [row.user for row in rows] == list(range(15))
        states = [row.system_state for row in rows]
        assert states == sorted(states)

    def test_table_is_default(self):
        proc = run_cli("run", "--scenario", str(TABLE3), "--steps", "2")
        assert proc.returncode == 0
        assert "allocated_units" in proc.stdout.splitlines()[0]

    def test_output_file(self, tmp_path):
        target = tmp_path / "report.csv"
        proc = run_cli(
            "run", "--scenario", str(TABLE3), "--format", "csv", "--output", str(target)
        )
        assert proc.returncode == 0
        assert proc.stdout == ""
        assert target.read_text().startswith(CSV_HEADER)

    def test_allocator_override_changes_result(self):
        base = run_cli("run", "--scenario", str(TABLE3), "--format", "csv")
        other = run_cli(
            "run", "--scenario", str(TABLE3), "--format", "csv", "--allocator", "random"
        )
        assert base.stdout != other.stdout

    def test_steps_override_changes_result(self):
        short = run_cli("run", "--scenario", str(TABLE3), "--format", "csv", "--steps", "1")
        full = run_cli("run", "--scenario", str(TABLE3), "--format", "csv")
        assert short.stdout != full.stdout

    def test_missing_scenario_fails_cleanly(self, tmp_path):
        proc = run_cli("run", "--scenario", str(tmp_path / "nope.scenario"))
        assert proc.returncode == 1
        assert proc.stderr.startswith("ScenarioParseError:")
        assert proc.stderr.count("\n") == 1


class TestValidate:
    def test_valid_scenario(self):
        proc = run_cli("validate", "--scenario", str(TABLE3))
        assert proc.returncode == 0
        assert proc.stdout.strip().endswith("OK")

    def test_invalid_scenario_single_error_line(self, tmp_path):
        data = small_scenario_dict()
        data["allocator"] = "magic"
        data["horizon"] = 0
        path = tmp_path / "bad.scenario"
        path.write_text(json.dumps(data))
        proc = run_cli("validate", "--scenario", str(path))
        assert proc.returncode == 1
        assert proc.stderr.startswith("ScenarioValidationError:")
        assert proc.stderr.count("\n") == 1
        assert "magic" in proc.stderr and "horizon" in proc.stderr


class TestCompare:
    def test_lists_each_allocator(self):
        proc = run_cli(
            "compare", "--scenario", str(TABLE3), "--allocators", "dp,round_robin,maxmin"
        )
        assert proc.returncode == 0, proc.stderr
        lines = proc.stdout.splitlines()
        assert lines[0].startswith("allocator")
        assert [line.split()[0] for line in lines[1:]] == ["dp", "round_robin", "maxmin"]

    def test_unknown_allocator_rejected(self):
        proc = run_cli("compare", "--scenario", str(TABLE3), "--allocators", "dp,magic")
        assert proc.returncode == 1
        assert proc.stderr.startswith("DomainError:")


class TestParser:
    def test_subcommand_required(self):
        proc = run_cli()
        assert proc.returncode == 2

    def test_unknown_format_rejected_by_parser(self):
        proc = run_cli("run", "--scenario", str(TABLE3), "--format", "xml")
        assert proc.returncode == 2
