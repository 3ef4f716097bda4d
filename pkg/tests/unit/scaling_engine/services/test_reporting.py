"""
Tests for the Report Writer
"""

import csv
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent.parent / "src"))

import pytest  # pylint: disable=import-error

from numscale.scaling_engine.config import ScenarioConfig, validate_config  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.exceptions import ReportWriteError  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.models import (  # pylint: disable=import-error,wrong-import-position
    CheckReport,
    CsvArtifact,
    ScenarioResult,
    ScenarioStatus,
)
from numscale.scaling_engine.services.reporting import (  # pylint: disable=import-error,wrong-import-position
    build_summary,
    write_report,
)
from numscale.scaling_engine.utils.formatting import format_cell  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.utils.hashing import generate_config_hash  # pylint: disable=import-error,wrong-import-position


def _report(check_id: str, residual: float, tolerance: float, runtime: float = 0.0) -> CheckReport:
    return CheckReport.evaluate(check_id, "anchor", residual, tolerance, runtime_seconds=runtime)


def _result(runtime: float = 0.0) -> ScenarioResult:
    return ScenarioResult(
        scenario_name="demo",
        status=ScenarioStatus.COMPLETED,
        reports=[_report("demo.exact", 0.0, 0.0, runtime), _report("demo.loose", 0.1, 1e-3, runtime)],
        artifacts=[CsvArtifact("demo_table", ["z", "value"], [[0.1, Fraction(1, 8)], [0.2, True]])],
        duration_seconds=runtime,
    )


class TestSummary:
    """summary.json content."""

    def test_totals(self):
        summary = build_summary([_result()], ScenarioConfig())

        assert summary["totals"] == {"checks": 2, "passed": 1, "failed": 1, "all_passed": False}
        assert summary["seed"] == 0
        assert summary["scenario"] == "full-suite"

    def test_empty_report_is_valid(self):
        summary = build_summary([], None)

        assert summary["totals"]["checks"] == 0
        assert summary["totals"]["all_passed"] is True
        assert summary["config_hash"] is None

    def test_config_hash_tracks_config(self):
        first = build_summary([], ScenarioConfig())["config_hash"]
        second = build_summary([], validate_config({"seed": 1}))["config_hash"]

        assert first != second
        assert first == generate_config_hash(ScenarioConfig().model_dump(mode="json"))

    def test_failed_scenario_is_not_all_passed(self):
        result = ScenarioResult(scenario_name="demo", status=ScenarioStatus.FAILED)
        assert build_summary([result])["totals"]["all_passed"] is False


class TestWriteReport:
    """Files written by write_report."""

    def test_files_written(self, tmp_path):
        paths = write_report([_result()], tmp_path, ScenarioConfig())

        assert [p.name for p in paths] == ["summary.json", "checks.csv", "timings.csv", "demo_table.csv"]
        summary = json.loads((tmp_path / "summary.json").read_text(encoding="utf-8"))
        assert summary["scenarios"][0]["checks"][1]["pass"] is False

    def test_checks_csv(self, tmp_path):
        write_report([_result()], tmp_path)
        with open(tmp_path / "checks.csv", encoding="utf-8", newline="") as handle:
            rows = list(csv.reader(handle))

        assert rows[0] == ["check_id", "residual", "tolerance", "pass"]
        assert rows[1] == ["demo.exact", format_cell(0.0), format_cell(0.0), "true"]
        assert float(rows[2][1]) == 0.1

    def test_artifact_cells(self, tmp_path):
        write_report([_result()], tmp_path)
        lines = (tmp_path / "demo_table.csv").read_text(encoding="utf-8").splitlines()

        assert lines[1].endswith(",0.125")
        assert lines[2].endswith(",true")

    def test_bare_report_list(self, tmp_path):
        write_report([_report("x.one", 0.0, 1.0)], tmp_path)
        summary = json.loads((tmp_path / "summary.json").read_text(encoding="utf-8"))

        assert summary["totals"]["checks"] == 1

    def test_summary_ignores_runtimes(self, tmp_path):
        write_report([_result(runtime=0.5)], tmp_path / "a", ScenarioConfig())
        write_report([_result(runtime=7.25)], tmp_path / "b", ScenarioConfig())

        for name in ("summary.json", "checks.csv", "demo_table.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
        assert (tmp_path / "a" / "timings.csv").read_bytes() != (tmp_path / "b" / "timings.csv").read_bytes()

    def test_non_finite_residual_serialized(self, tmp_path):
        result = ScenarioResult("demo", ScenarioStatus.COMPLETED, reports=[_report("demo.inf", math.inf, 1.0)])
        write_report([result], tmp_path)
        summary = json.loads((tmp_path / "summary.json").read_text(encoding="utf-8"))

        assert summary["scenarios"][0]["checks"][0]["residual"] == "inf"

    @pytest.mark.parametrize("residual", [1 / 3, 0.1 + 0.2, 2.0**-52, 1.2345678901234567e-300])
    def test_summary_floats_parse_back_exactly(self, tmp_path, residual):
        result = ScenarioResult("demo", ScenarioStatus.COMPLETED, reports=[_report("demo.float", residual, 1.0)])
        write_report([result], tmp_path)
        summary = json.loads((tmp_path / "summary.json").read_text(encoding="utf-8"))

        assert summary["scenarios"][0]["checks"][0]["residual"] == residual

    def test_unwritable_directory(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x", encoding="utf-8")

        with pytest.raises(ReportWriteError):
            write_report([_result()], blocker / "out")
