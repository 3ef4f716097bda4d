"""
Scaling Engine Exception Classes

Defines the exception hierarchy for the scaling engine:
- Algebra and numeral exceptions
- Grid, field and operator exceptions
- Scenario pipeline and reporting exceptions
"""


class ScalingEngineException(Exception):
    """Base exception for all scaling-engine errors"""

    def __init__(self, message: str, scenario_name: str | None = None):
        self.scenario_name = scenario_name
        super().__init__(message)


# Algebra Exceptions


class ScalingLevelError(ScalingEngineException):
    """
    Raised when a scaling factor (structure level) is invalid.

    Examples:
    - Level equal to zero
    - Division by a zero level in a relative structure
    """

    pass


class BackendMismatchError(ScalingEngineException):
    """
    Raised when exact and float values are combined in one operation.

    Examples:
    - Fraction-backed vector scaled by a float scalar
    - Inner product of vectors on different backends
    """

    pass


class DimensionMismatchError(ScalingEngineException):
    """
    Raised when operands do not have compatible shapes.

    Examples:
    - Inner product of vectors with different dimensions
    - Potential array not matching the grid
    - Two packets defined on different grids
    """

    pass


class NumeralParseError(ScalingEngineException):
    """
    Raised when an alphabet numeral string cannot be parsed.

    Examples:
    - Letter outside a..j
    - More than one point
    - No digit letters at all
    """

    def __init__(self, message: str, text: str | None = None, position: int | None = None):
        self.text = text
        self.position = position
        super().__init__(message)


# Grid and Field Exceptions


class GridError(ScalingEngineException):
    """
    Raised when a grid or a coordinate on it is invalid.

    Examples:
    - Point count not a power of two
    - Non-positive spacing
    - Reference coordinate that is not a grid node
    """

    pass


class FieldSpecError(ScalingEngineException):
    """
    Raised when a scaling field specification is unusable.

    Examples:
    - Non-finite alpha or beta samples
    - Sample arrays that do not match their grid
    - Empty point list for an n-point scaling factor
    """

    pass


class SizeLimitError(ScalingEngineException):
    """
    Raised when a multi-particle array would exceed the supported size.

    Examples:
    - More than three particle axes
    - Total point count above the configured cap
    """

    pass


class IntegrationError(ScalingEngineException):
    """
    Raised when time integration cannot proceed.

    Examples:
    - Singular Crank-Nicolson system matrix
    - Non-finite amplitudes after a step
    """

    pass


# Scenario Pipeline Exceptions


class ConfigurationError(ScalingEngineException):
    """
    Raised when a scenario configuration is invalid or missing.

    Carries every violation found so a single run reports all of them.
    """

    def __init__(
        self,
        message: str,
        scenario_name: str | None = None,
        violations: list[str] | None = None,
    ):
        self.violations = violations or []
        super().__init__(message, scenario_name)


class InputPreparationError(ScalingEngineException):
    """
    Raised when a scenario cannot build its inputs from the configuration.

    Examples:
    - Samples file missing or malformed
    - Field kind unsupported by the scenario
    """

    pass


class CheckExecutionError(ScalingEngineException):
    """
    Raised when the check phase of a scenario fails as a whole.

    Individual numerical failures become failed checks instead.
    """

    pass


class ReportValidationError(ScalingEngineException):
    """
    Raised when a scenario's check reports are inconsistent.

    Examples:
    - Declared check id missing from the reports
    - Same check id reported twice
    """

    pass


class ReportWriteError(ScalingEngineException):
    """
    Raised when writing report artifacts fails.

    Examples:
    - Output directory not writable
    - Disk full
    """

    pass
