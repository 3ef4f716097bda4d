"""
Scaling Engine Module

Verification engine for scaled numbers and the complex scaling field,
with a 3-phase scenario pipeline:
- Prepare: configuration sections turned into grids, fields and packets
- Checks: identity residuals measured against their tolerances
- Validate: every declared check reported exactly once

Architecture:
- scaled_numbers, numeral_strings - exact algebra and alphabet numerals
- grid, scaling_field - periodic grids and the field g = exp(gamma)
- qm_single, qm_multi - localized packets and scaled operators
- scenarios/ - individual scenario implementations
- services/ - registry, runner, input builders and report writer
"""

from .base_scenario import BaseScenario
from .config import FULL_SUITE, RunnerSettings, ScenarioConfig, load_config
from .exceptions import (
    BackendMismatchError,
    CheckExecutionError,
    ConfigurationError,
    DimensionMismatchError,
    FieldSpecError,
    GridError,
    InputPreparationError,
    IntegrationError,
    NumeralParseError,
    ReportValidationError,
    ReportWriteError,
    ScalingEngineException,
    ScalingLevelError,
    SizeLimitError,
)
from .grid import Grid1D
from .models import (
    CheckReport,
    PhysicalConstants,
    ScenarioPhase,
    ScenarioResult,
    ScenarioStatus,
)
from .numeral_strings import NumeralBasis, NumeralString, canonical_value, parse, scaled_value
from .qm_multi import PairReference, Statistics, TwoParticlePacket
from .qm_single import LocalizedPacket, WavePacket
from .scaled_numbers import (
    Backend,
    ComplexValue,
    RelativeStructure,
    ScaledNumber,
    ScalingFactor,
    axiom_suite,
)
from .scaling_field import FieldSpec, Profile, ProfileKind
from .services import RunSummary, get_registry, run_scenario, write_report

__all__ = [
    # Base class
    "BaseScenario",
    # Configuration
    "FULL_SUITE",
    "RunnerSettings",
    "ScenarioConfig",
    "load_config",
    # Exceptions
    "ScalingEngineException",
    "ScalingLevelError",
    "BackendMismatchError",
    "DimensionMismatchError",
    "NumeralParseError",
    "GridError",
    "FieldSpecError",
    "SizeLimitError",
    "IntegrationError",
    "ConfigurationError",
    "InputPreparationError",
    "CheckExecutionError",
    "ReportValidationError",
    "ReportWriteError",
    # Models
    "CheckReport",
    "PhysicalConstants",
    "ScenarioPhase",
    "ScenarioResult",
    "ScenarioStatus",
    # Domain
    "Backend",
    "ComplexValue",
    "RelativeStructure",
    "ScaledNumber",
    "ScalingFactor",
    "axiom_suite",
    "NumeralBasis",
    "NumeralString",
    "canonical_value",
    "parse",
    "scaled_value",
    "Grid1D",
    "FieldSpec",
    "Profile",
    "ProfileKind",
    "WavePacket",
    "LocalizedPacket",
    "PairReference",
    "Statistics",
    "TwoParticlePacket",
    # Services
    "RunSummary",
    "get_registry",
    "run_scenario",
    "write_report",
]
