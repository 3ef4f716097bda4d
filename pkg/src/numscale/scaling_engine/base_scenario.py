"""
Base Scenario Module

Provides the abstract base class for all scenarios with a standardized
3-phase execution pipeline (prepare, checks, validate). A failing check
is recorded and the run continues; a failing phase ends the scenario.
"""

import math
import time
from abc import ABC, abstractmethod
from collections.abc import Callable
from typing import Any

import numpy as np

from .config import ScenarioConfig, with_defaults
from .exceptions import (
    CheckExecutionError,
    ConfigurationError,
    InputPreparationError,
    ReportValidationError,
    ScalingEngineException,
)
from .models import (
    CheckReport,
    CsvArtifact,
    ScenarioPhase,
    ScenarioResult,
    ScenarioStatus,
    ValidationResult,
)
from .repositories.input_repository import InputRepository

# What a measurement may return: a residual, or a residual and a note
Measurement = float | tuple[float, str | None]

# Numerical failures a single check absorbs instead of aborting the scenario
CHECK_FAILURES = (
    ScalingEngineException,
    ArithmeticError,
    ValueError,
    np.linalg.LinAlgError,
    RuntimeError,
)


class BaseScenario(ABC):
    """
    Abstract base class for all scenario implementations.

    Implements the 3-phase pipeline:
    1. Prepare: build grids, fields and packets from the configuration
    2. Checks: run every declared check, one CheckReport each
    3. Validate: make sure each declared check id was reported once

    Subclasses must define:
    - SCENARIO_NAME: Unique identifier used on the command line
    - CHECKS: check id -> anchor (the identity under test)
    - DEFAULT_TOLERANCES: check id -> tolerance (0.0 for exact checks)
    - ORDER (optional): position in the full suite
    - CONFIG (optional): scenario defaults, layered under the config file

    Subclasses must implement:
    - prepare(): turn the configuration into domain objects
    - run_checks(): call self._check() once per declared check id
    """

    SCENARIO_NAME: str
    DESCRIPTION: str = ""
    ORDER: int = 100
    CHECKS: dict[str, str] = {}
    DEFAULT_TOLERANCES: dict[str, float] = {}
    CONFIG: dict[str, Any] = {}

    def __init__(self, input_repo: InputRepository | None = None, verbose: bool = True):
        self._input_repo = input_repo or InputRepository()
        self._verbose = verbose
        self._reports: list[CheckReport] = []
        self._artifacts: list[CsvArtifact] = []
        self._tolerances: dict[str, float] = dict(self.DEFAULT_TOLERANCES)

    # =====================================================================
    # CONFIGURATION
    # =====================================================================

    @classmethod
    def check_ids(cls) -> list[str]:
        return list(cls.CHECKS)

    def get_config(self, cfg: ScenarioConfig) -> ScenarioConfig:
        """
        Effective configuration for this scenario.

        Resolution order (right-side precedence):
        1. Scenario defaults (self.CONFIG)
        2. Values set explicitly in the config file or on the command line
        """
        if not self.CONFIG:
            return cfg
        return with_defaults(cfg, self.CONFIG)

    def _apply_tolerances(self, overrides: dict[str, float]) -> None:
        for check_id, tolerance in overrides.items():
            if check_id in self._tolerances:
                self._tolerances[check_id] = tolerance

    def tolerance(self, check_id: str) -> float:
        return self._tolerances[check_id]

    # =====================================================================
    # LOGGING
    # =====================================================================

    def _log(self, message: str) -> None:
        if self._verbose:
            print(message, flush=True)

    # =====================================================================
    # CHECK RECORDING
    # =====================================================================

    def _check(self, check_id: str, measure: Callable[[], Measurement]) -> CheckReport:
        """
        Time a measurement and record it as a CheckReport.

        Exceptions raised by the measurement become a failed report with
        an infinite residual and the error text as detail.

        Raises:
            CheckExecutionError: If check_id is not declared in CHECKS
        """
        if check_id not in self.CHECKS:
            raise CheckExecutionError(
                f"Undeclared check id '{check_id}'", scenario_name=self.SCENARIO_NAME
            )

        started = time.perf_counter()
        detail: str | None = None
        try:
            outcome = measure()
            if isinstance(outcome, tuple):
                residual, detail = outcome
            else:
                residual = outcome
            residual = float(residual)
        except CHECK_FAILURES as e:
            residual = math.inf
            detail = f"{e.__class__.__name__}: {e}"
        runtime = time.perf_counter() - started

        report = CheckReport.evaluate(
            check_id=check_id,
            anchor=self.CHECKS[check_id],
            residual=residual,
            tolerance=self.tolerance(check_id),
            runtime_seconds=runtime,
            detail=detail,
        )
        self._reports.append(report)

        marker = "✅" if report.passed else "❌"
        self._log(
            f"   {marker} {check_id}: residual={report.residual:.3e} "
            f"tolerance={report.tolerance:.1e} ({runtime:.3f}s)"
        )
        if detail and not report.passed:
            self._log(f"      {detail}")
        return report

    def _add_artifact(self, name: str, header: list[str], rows: list[list[Any]]) -> None:
        """Queue a CSV table for the report writer"""
        self._artifacts.append(CsvArtifact(name=name, header=header, rows=rows))

    def _add_packet_artifact(self, name: str, z: np.ndarray, amplitudes: np.ndarray) -> None:
        """z,re,im,abs2 table of a 1D amplitude array"""
        rows = [
            [float(point), float(value.real), float(value.imag), float(abs(value) ** 2)]
            for point, value in zip(z, amplitudes)
        ]
        self._add_artifact(name, ["z", "re", "im", "abs2"], rows)

    # =====================================================================
    # ABSTRACT METHODS (Must be implemented by subclasses)
    # =====================================================================

    @abstractmethod
    def prepare(self, cfg: ScenarioConfig) -> Any:
        """
        Build the scenario inputs from the effective configuration.

        Raises:
            InputPreparationError: If inputs cannot be built
        """
        ...

    def validate_input(self, prepared: Any) -> ValidationResult:
        """Optional extra validation of prepared inputs"""
        return ValidationResult(is_valid=True)

    @abstractmethod
    def run_checks(self, prepared: Any) -> None:
        """Run every declared check through self._check()"""
        ...

    def validate_output(self, reports: list[CheckReport]) -> ValidationResult:
        """Every declared check id reported exactly once, nothing else"""
        result = ValidationResult(is_valid=True)
        reported = [report.check_id for report in reports]
        for check_id in self.CHECKS:
            count = reported.count(check_id)
            if count != 1:
                result.add_error(f"check '{check_id}' reported {count} times")
        return result

    # =====================================================================
    # EXECUTION PIPELINE
    # =====================================================================

    def _phase_prepare(self, cfg: ScenarioConfig) -> Any:
        effective = self.get_config(cfg)
        self._apply_tolerances(effective.tolerances)
        try:
            prepared = self.prepare(effective)
        except ConfigurationError:
            raise
        except (ScalingEngineException, ValueError) as e:
            if isinstance(e, InputPreparationError):
                raise
            raise InputPreparationError(
                f"{e.__class__.__name__}: {e}", scenario_name=self.SCENARIO_NAME
            ) from e

        validation_result = self.validate_input(prepared)
        if not validation_result.is_valid:
            raise InputPreparationError(
                f"Input validation failed: {', '.join(validation_result.errors)}",
                scenario_name=self.SCENARIO_NAME,
            )
        return prepared

    def _phase_checks(self, prepared: Any) -> None:
        self.run_checks(prepared)

    def _phase_validate(self) -> None:
        validation_result = self.validate_output(self._reports)
        if not validation_result.is_valid:
            raise ReportValidationError(
                f"Output validation failed: {', '.join(validation_result.errors)}",
                scenario_name=self.SCENARIO_NAME,
            )

    def execute(self, cfg: ScenarioConfig) -> ScenarioResult:
        """
        Execute the complete 3-phase pipeline.

        Args:
            cfg: Validated run configuration

        Returns:
            ScenarioResult with every check report recorded so far and,
            when a phase failed, the failing phase and error
        """
        self._reports = []
        self._artifacts = []
        self._tolerances = dict(self.DEFAULT_TOLERANCES)

        started = time.perf_counter()
        status = ScenarioStatus.FAILED
        error_message: str | None = None
        error_type: str | None = None
        error_phase: ScenarioPhase | None = None

        self._log("=" * 70)
        self._log(f"🔬 {self.SCENARIO_NAME}: {self.DESCRIPTION}")
        self._log("=" * 70)

        try:
            # Phase 1: Prepare
            prepared = self._phase_prepare(cfg)

            # Phase 2: Checks
            self._phase_checks(prepared)

            # Phase 3: Validate
            self._phase_validate()

            status = ScenarioStatus.COMPLETED

        except (ConfigurationError, InputPreparationError) as e:
            error_phase = ScenarioPhase.PREPARE
            error_type = e.__class__.__name__
            error_message = str(e)
            self._log(f"[ERROR] Prepare failed: {error_message}")

        except CheckExecutionError as e:
            error_phase = ScenarioPhase.CHECKS
            error_type = e.__class__.__name__
            error_message = str(e)
            self._log(f"[ERROR] Checks failed: {error_message}")

        except ReportValidationError as e:
            error_phase = ScenarioPhase.VALIDATE
            error_type = e.__class__.__name__
            error_message = str(e)
            self._log(f"[ERROR] Validation failed: {error_message}")

        except Exception as e:  # pragma: no cover
            error_phase = ScenarioPhase.CHECKS
            error_type = e.__class__.__name__
            error_message = f"Unexpected error: {e}"
            self._log(f"[ERROR] {error_message}")

        duration = time.perf_counter() - started
        passed = sum(report.passed for report in self._reports)
        self._log(f"   {passed}/{len(self._reports)} checks passed in {duration:.2f}s")

        return ScenarioResult(
            scenario_name=self.SCENARIO_NAME,
            status=status,
            reports=list(self._reports),
            artifacts=list(self._artifacts),
            duration_seconds=duration,
            error_message=error_message,
            error_type=error_type,
            error_phase=error_phase,
        )
