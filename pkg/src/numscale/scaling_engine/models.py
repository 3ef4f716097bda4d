"""
Scaling Engine Data Models

Defines data structures for check reports, scenario results and
the physical constants shared by the quantum operators.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class ScenarioStatus(str, Enum):
    """Scenario execution status enumeration"""

    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


class ScenarioPhase(str, Enum):
    """Pipeline phase in which a scenario failed"""

    PREPARE = "prepare"
    CHECKS = "checks"
    VALIDATE = "validate"


@dataclass(frozen=True)
class PhysicalConstants:
    """Planck constant and particle mass used by all operators."""

    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self) -> None:
        if not (self.hbar > 0 and self.mass > 0):
            raise ValueError("hbar and mass must be positive")

    @property
    def kinetic_prefactor(self) -> float:
        """-hbar^2 / 2m"""
        return -(self.hbar**2) / (2.0 * self.mass)


@dataclass
class CheckReport:
    """
    Outcome of a single identity or invariant check.

    A check passes when its residual does not exceed its tolerance.
    Exact checks carry a tolerance of zero.
    """

    check_id: str
    anchor: str
    residual: float
    tolerance: float
    passed: bool
    runtime_seconds: float = 0.0
    detail: str | None = None

    @classmethod
    def evaluate(
        cls,
        check_id: str,
        anchor: str,
        residual: float,
        tolerance: float,
        runtime_seconds: float = 0.0,
        detail: str | None = None,
    ) -> "CheckReport":
        """Build a report, deciding pass/fail from residual and tolerance"""
        residual = float(residual)
        passed = math.isfinite(residual) and residual <= tolerance
        return cls(
            check_id=check_id,
            anchor=anchor,
            residual=residual,
            tolerance=float(tolerance),
            passed=passed,
            runtime_seconds=runtime_seconds,
            detail=detail,
        )

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for serialization (runtime excluded)"""
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "detail": self.detail,
        }


@dataclass
class CsvArtifact:
    """Tabular output produced by a scenario"""

    name: str
    header: list[str]
    rows: list[list[Any]] = field(default_factory=list)


@dataclass
class ScenarioResult:
    """
    Result of a scenario execution.

    Contains status, check reports, artifacts and error information.
    """

    scenario_name: str
    status: ScenarioStatus

    reports: list[CheckReport] = field(default_factory=list)
    artifacts: list[CsvArtifact] = field(default_factory=list)
    duration_seconds: float | None = None

    # Error information (if failed)
    error_message: str | None = None
    error_type: str | None = None
    error_phase: ScenarioPhase | None = None

    def is_successful(self) -> bool:
        """Check if the scenario completed and every check passed"""
        return self.status == ScenarioStatus.COMPLETED and all(
            report.passed for report in self.reports
        )

    def is_failed(self) -> bool:
        """Check if the scenario itself failed"""
        return self.status == ScenarioStatus.FAILED

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for serialization (timings excluded)"""
        return {
            "scenario_name": self.scenario_name,
            "status": self.status.value,
            "checks": [report.to_dict() for report in self.reports],
            "artifacts": [artifact.name for artifact in self.artifacts],
            "error_message": self.error_message,
            "error_type": self.error_type,
            "error_phase": self.error_phase.value if self.error_phase else None,
        }


@dataclass
class ValidationResult:
    """Result of input or output validation"""

    is_valid: bool
    errors: list[str] = field(default_factory=list)

    def add_error(self, error: str) -> None:
        """Add validation error"""
        self.errors.append(error)
        self.is_valid = False

    def __bool__(self) -> bool:
        """Allow boolean evaluation"""
        return self.is_valid
