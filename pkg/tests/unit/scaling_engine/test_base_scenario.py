"""
Tests for BaseScenario

Tests the 3-phase pipeline, check recording and tolerance handling with
small stand-in scenarios.
"""

import math
import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent / "src"))

import pytest  # pylint: disable=import-error

from numscale.scaling_engine.base_scenario import BaseScenario  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.config import ScenarioConfig, validate_config  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.exceptions import GridError  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.models import (  # pylint: disable=import-error,wrong-import-position
    CheckReport,
    ScenarioPhase,
    ScenarioStatus,
)


class ArithmeticScenario(BaseScenario):
    """Two checks with fixed residuals"""

    SCENARIO_NAME = "test_arithmetic"
    CHECKS = {
        "test.exact": "1 + 1 = 2",
        "test.approximate": "0.1 + 0.2 = 0.3",
    }
    DEFAULT_TOLERANCES = {"test.exact": 0.0, "test.approximate": 1e-15}
    CONFIG = {"grid": {"n": 16}}

    def prepare(self, cfg: ScenarioConfig) -> ScenarioConfig:
        return cfg

    def run_checks(self, prepared: ScenarioConfig) -> None:
        self._check("test.exact", lambda: abs((1 + 1) - 2))
        self._check("test.approximate", lambda: (abs(0.1 + 0.2 - 0.3), "rounding"))
        self._add_artifact("grid_size", ["n"], [[prepared.grid.n]])


class RaisingCheckScenario(ArithmeticScenario):
    SCENARIO_NAME = "test_raising"

    def run_checks(self, prepared: ScenarioConfig) -> None:
        self._check("test.exact", lambda: 0.0)

        def broken() -> float:
            raise GridError("Coordinate 0.3 is not a node of the grid")

        self._check("test.approximate", broken)


class MissingCheckScenario(ArithmeticScenario):
    SCENARIO_NAME = "test_missing"

    def run_checks(self, prepared: ScenarioConfig) -> None:
        self._check("test.exact", lambda: 0.0)


class UndeclaredCheckScenario(ArithmeticScenario):
    SCENARIO_NAME = "test_undeclared"

    def run_checks(self, prepared: ScenarioConfig) -> None:
        self._check("test.other", lambda: 0.0)


class FailingPrepareScenario(ArithmeticScenario):
    SCENARIO_NAME = "test_failing_prepare"

    def prepare(self, cfg: ScenarioConfig) -> ScenarioConfig:
        raise ValueError("nparticle.refs has 2 entries for n=3")


class TestCheckReport:
    """Pass/fail decision of CheckReport.evaluate."""

    def test_residual_at_tolerance_passes(self):
        assert CheckReport.evaluate("c", "a", residual=1e-3, tolerance=1e-3).passed

    def test_exact_check(self):
        assert CheckReport.evaluate("c", "a", residual=0.0, tolerance=0.0).passed
        assert not CheckReport.evaluate("c", "a", residual=1e-300, tolerance=0.0).passed

    @pytest.mark.parametrize("residual", [math.inf, math.nan])
    def test_non_finite_residual_fails(self, residual):
        assert not CheckReport.evaluate("c", "a", residual=residual, tolerance=1.0).passed

    def test_serialized_without_runtime(self):
        data = CheckReport.evaluate("c", "a", 0.0, 1.0, runtime_seconds=2.5).to_dict()

        assert "runtime_seconds" not in data
        assert data["pass"] is True


class TestPipeline:
    """Execution of the prepare, checks and validate phases."""

    def test_successful_run(self):
        result = ArithmeticScenario(verbose=False).execute(ScenarioConfig())

        assert result.status is ScenarioStatus.COMPLETED
        assert result.is_successful()
        assert [r.check_id for r in result.reports] == ["test.exact", "test.approximate"]
        assert result.reports[1].detail == "rounding"

    def test_scenario_defaults_apply(self):
        result = ArithmeticScenario(verbose=False).execute(ScenarioConfig())
        assert result.artifacts[0].rows == [[16]]

    def test_config_file_beats_scenario_defaults(self):
        result = ArithmeticScenario(verbose=False).execute(validate_config({"grid.n": 32}))
        assert result.artifacts[0].rows == [[32]]

    def test_tolerance_override_fails_check(self):
        """0.1 + 0.2 - 0.3 is about 5.6e-17"""
        cfg = validate_config({"tolerances": {"test.approximate": 1e-20}})
        result = ArithmeticScenario(verbose=False).execute(cfg)

        assert result.status is ScenarioStatus.COMPLETED
        assert not result.is_successful()
        assert result.reports[1].tolerance == 1e-20

    def test_tolerances_reset_between_runs(self):
        scenario = ArithmeticScenario(verbose=False)
        scenario.execute(validate_config({"tolerances": {"test.approximate": 1e-20}}))
        result = scenario.execute(ScenarioConfig())

        assert result.reports[1].tolerance == 1e-15

    def test_raising_measurement_becomes_failed_report(self):
        result = RaisingCheckScenario(verbose=False).execute(ScenarioConfig())

        assert result.status is ScenarioStatus.COMPLETED
        failed = result.reports[1]
        assert not failed.passed
        assert failed.residual == math.inf
        assert failed.detail.startswith("GridError")

    def test_missing_check_fails_validation(self):
        result = MissingCheckScenario(verbose=False).execute(ScenarioConfig())

        assert result.status is ScenarioStatus.FAILED
        assert result.error_phase is ScenarioPhase.VALIDATE
        assert "test.approximate" in result.error_message

    def test_undeclared_check_fails_checks_phase(self):
        result = UndeclaredCheckScenario(verbose=False).execute(ScenarioConfig())

        assert result.status is ScenarioStatus.FAILED
        assert result.error_phase is ScenarioPhase.CHECKS
        assert result.error_type == "CheckExecutionError"

    def test_prepare_error_is_input_failure(self):
        result = FailingPrepareScenario(verbose=False).execute(ScenarioConfig())

        assert result.error_phase is ScenarioPhase.PREPARE
        assert result.error_type == "InputPreparationError"
        assert "nparticle.refs" in result.error_message
        assert result.reports == []

    def test_progress_lines(self, capsys):
        ArithmeticScenario(verbose=True).execute(ScenarioConfig())
        output = capsys.readouterr().out

        assert "test_arithmetic" in output
        assert "test.exact" in output
        assert "2/2 checks passed" in output
