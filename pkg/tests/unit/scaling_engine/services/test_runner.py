"""
Tests for the Scenario Runner
"""

import json
import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent.parent / "src"))

import pytest  # pylint: disable=import-error

from numscale.scaling_engine.config import FULL_SUITE, validate_config  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.exceptions import ConfigurationError  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.models import (  # pylint: disable=import-error,wrong-import-position
    ScenarioPhase,
    ScenarioResult,
    ScenarioStatus,
)
from numscale.scaling_engine.services.runner import (  # pylint: disable=import-error,wrong-import-position
    RunSummary,
    resolve_scenarios,
    run_scenario,
    scenario_names,
    validate_tolerance_keys,
)

AXIOMS_RUN = {"scenario": "axioms", "axioms": {"samples": 20}}


class TestResolution:
    """Scenario names and tolerance keys."""

    def test_full_suite_runs_everything(self):
        assert resolve_scenarios(FULL_SUITE) == scenario_names()[1:]

    def test_single_scenario(self):
        assert resolve_scenarios("pair") == ["pair"]

    def test_unknown_scenario_suggests(self):
        with pytest.raises(ConfigurationError, match="did you mean 'numerals'"):
            resolve_scenarios("numeral")

    def test_tolerance_for_other_scenario_rejected(self):
        cfg = validate_config({"tolerances": {"pair.pauli": 1e-10}})
        with pytest.raises(ConfigurationError) as exc_info:
            validate_tolerance_keys(cfg, ["axioms"])

        assert exc_info.value.violations[0].startswith("tolerances.pair.pauli")

    def test_known_tolerance_accepted(self):
        cfg = validate_config({"tolerances": {"axioms.float_backend": 1e-9}})
        validate_tolerance_keys(cfg, ["axioms"])


class TestExitCode:
    """RunSummary.exit_code."""

    def test_empty_run_passes(self):
        assert RunSummary().exit_code() == 0

    def test_prepare_failure_wins(self):
        summary = RunSummary(
            results=[
                ScenarioResult("a", ScenarioStatus.COMPLETED),
                ScenarioResult("b", ScenarioStatus.FAILED, error_phase=ScenarioPhase.PREPARE),
            ]
        )
        assert summary.exit_code() == 2

    def test_checks_phase_failure(self):
        summary = RunSummary(results=[ScenarioResult("a", ScenarioStatus.FAILED, error_phase=ScenarioPhase.CHECKS)])
        assert summary.exit_code() == 1


class TestRun:
    """Running the axioms scenario end to end."""

    def test_axioms_pass(self):
        summary = run_scenario(validate_config(AXIOMS_RUN), verbose=False)

        assert [r.scenario_name for r in summary.results] == ["axioms"]
        assert summary.all_passed
        assert summary.exit_code() == 0
        assert len(summary.reports) == 22

    def test_report_written(self, tmp_path):
        run_scenario(validate_config(AXIOMS_RUN), out_dir=tmp_path, verbose=False)
        summary = json.loads((tmp_path / "summary.json").read_text(encoding="utf-8"))

        assert summary["scenario"] == "axioms"
        assert summary["totals"]["all_passed"] is True
        assert (tmp_path / "axioms.csv").exists()

    def test_nothing_written_without_out_dir(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        run_scenario(validate_config(AXIOMS_RUN), verbose=False)
        assert list(tmp_path.iterdir()) == []

    def test_tight_tolerance_fails(self):
        cfg = validate_config({**AXIOMS_RUN, "tolerances": {"axioms.float_backend": 1e-300}})
        summary = run_scenario(cfg, verbose=False)

        assert summary.exit_code() == 1

    def test_progress_output(self, capsys):
        run_scenario(validate_config(AXIOMS_RUN), verbose=True)
        assert "22/22 checks passed" in capsys.readouterr().out
