"""
Scenario Configuration

YAML scenario files validated by pydantic models, plus runner settings
read from the environment (prefix NUMSCALE_) and an optional .env file.

Resolution order (right-side precedence):
1. Scenario defaults (BaseScenario.CONFIG)
2. Config file
3. Environment (NUMSCALE_SEED)
4. Command-line flags (--seed, --scenario, --set key=value)
"""

import difflib
import math
from pathlib import Path
from typing import Any, Literal, get_args, get_origin

import yaml
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
    ValidationError,
    field_validator,
    model_validator,
)
from pydantic_settings import BaseSettings, SettingsConfigDict

from .exceptions import ConfigurationError
from .grid import Grid1D
from .models import PhysicalConstants
from .qm_multi import PairReference, Statistics
from .scaled_numbers import RelativeStructure, ScalingFactor
from .scaling_field import Profile, ProfileKind

FULL_SUITE = "full-suite"

# Sections keyed by check id ('pair.pauli'), whose dots are not nesting
CHECK_ID_SECTIONS = frozenset({"tolerances"})


class StrictModel(BaseModel):
    """Base for all config sections: unknown keys are rejected"""

    model_config = ConfigDict(extra="forbid", frozen=True)


class ConstantsConfig(StrictModel):
    hbar: PositiveFloat = 1.0
    mass: PositiveFloat = 1.0

    def build(self) -> PhysicalConstants:
        return PhysicalConstants(hbar=self.hbar, mass=self.mass)


class GridConfig(StrictModel):
    n: int = 512
    dz: PositiveFloat = 0.0390625
    origin: float | None = Field(default=None, description="Defaults to -n*dz/2")

    @field_validator("n")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value < 8 or value & (value - 1):
            raise ValueError("must be a power of two >= 8")
        return value

    def build(self) -> Grid1D:
        origin = -self.n * self.dz / 2 if self.origin is None else self.origin
        return Grid1D(n=self.n, dz=self.dz, origin=origin)


class ProfileConfig(StrictModel):
    kind: ProfileKind = ProfileKind.CONSTANT
    amplitude: float = 0.0
    slope: float = 0.0
    center: float = 0.0
    width: PositiveFloat = 1.0
    wavenumber: float = 1.0
    phase: float = 0.0

    def build(self) -> Profile:
        return Profile(**self.model_dump())


class FieldConfig(StrictModel):
    kind: Literal["closed_form", "samples"] = "closed_form"
    alpha: ProfileConfig = ProfileConfig()
    beta: ProfileConfig = ProfileConfig()
    samples_path: Path | None = Field(default=None, description="CSV with columns z,alpha,beta")

    @model_validator(mode="after")
    def _samples_need_path(self) -> "FieldConfig":
        if self.kind == "samples" and self.samples_path is None:
            raise ValueError("samples_path is required when kind is 'samples'")
        return self


class PacketConfig(StrictModel):
    kind: Literal["gaussian", "samples"] = "gaussian"
    center: float = 0.0
    width: PositiveFloat = 1.0
    k0: float = 0.0
    samples_path: Path | None = Field(default=None, description="CSV with columns z,re,im")

    @model_validator(mode="after")
    def _samples_need_path(self) -> "PacketConfig":
        if self.kind == "samples" and self.samples_path is None:
            raise ValueError("samples_path is required when kind is 'samples'")
        return self


class PotentialConfig(StrictModel):
    kind: Literal["none", "harmonic", "samples"] = "none"
    omega: PositiveFloat = 1.0
    center: float = 0.0
    samples_path: Path | None = Field(default=None, description="CSV with columns z,v")

    @model_validator(mode="after")
    def _samples_need_path(self) -> "PotentialConfig":
        if self.kind == "samples" and self.samples_path is None:
            raise ValueError("samples_path is required when kind is 'samples'")
        return self


class PairPotentialConfig(StrictModel):
    kind: Literal["none", "separable", "coulomb"] = "none"
    omega: PositiveFloat = 1.0
    strength: float = 1.0
    softening: PositiveFloat = 1.0


class ReferenceConfig(StrictModel):
    x: float = 0.0
    w: float = 1.25


class PairReferenceConfig(StrictModel):
    v: float = -0.625
    w: float = 0.625
    statistics: Statistics = Statistics.FERMION

    @field_validator("statistics")
    @classmethod
    def _combinable(cls, value: Statistics) -> Statistics:
        if value is Statistics.NONE:
            raise ValueError("must be 'fermion' or 'boson'")
        return value

    def build(self) -> PairReference:
        return PairReference(v=self.v, w=self.w)


class EvolutionConfig(StrictModel):
    dt: PositiveFloat = 1e-3
    steps: PositiveInt = 100
    intertwined_n: int = 2048


class AxiomsConfig(StrictModel):
    samples: PositiveInt = 1000
    t: list[str | int] | None = Field(default=None, description="[re, im] rational literals")
    s: list[str | int] | None = None

    @field_validator("t", "s")
    @classmethod
    def _pair(cls, value: list[str | int] | None) -> list[str | int] | None:
        if value is not None and not 1 <= len(value) <= 2:
            raise ValueError("must be [re] or [re, im]")
        return value

    def build(self) -> RelativeStructure | None:
        """Fixed structure when both levels are given, random per sample otherwise"""
        if self.t is None or self.s is None:
            return None
        return RelativeStructure(_factor(self.t), _factor(self.s))


def _factor(values: list[str | int]) -> ScalingFactor:
    re, im = (list(values) + [0])[:2]
    return ScalingFactor.of(str(re), str(im))


class NumeralsConfig(StrictModel):
    zero: str = "a.a"
    unit: str = "dbf.aag"
    values: list[str] = ["b.a", "a.aa", "-a.jjhgbi", "dbf.aag", "dfa.ggi", "a.aafgdh"]
    input_path: Path | None = Field(default=None, description="UTF-8 file, one numeral per line")
    random_pairs: PositiveInt = 500


class NParticleConfig(StrictModel):
    n: int = Field(default=3, ge=1, le=3)
    per_axis: int = 32
    refs: list[float] | None = None


class ScenarioConfig(StrictModel):
    """Complete, validated configuration of one run"""

    scenario: str = FULL_SUITE
    seed: NonNegativeInt = 0
    constants: ConstantsConfig = ConstantsConfig()
    grid: GridConfig = GridConfig()
    field: FieldConfig = FieldConfig()
    packet: PacketConfig = PacketConfig()
    packet2: PacketConfig = PacketConfig(center=0.0, width=1.0, k0=1.0)
    potential: PotentialConfig = PotentialConfig()
    pair_potential: PairPotentialConfig = PairPotentialConfig()
    references: ReferenceConfig = ReferenceConfig()
    pair_reference: PairReferenceConfig = PairReferenceConfig()
    evolution: EvolutionConfig = EvolutionConfig()
    axioms: AxiomsConfig = AxiomsConfig()
    numerals: NumeralsConfig = NumeralsConfig()
    nparticle: NParticleConfig = NParticleConfig()
    tolerances: dict[str, PositiveFloat] = {}

    @field_validator("tolerances")
    @classmethod
    def _finite(cls, value: dict[str, float]) -> dict[str, float]:
        for key, tolerance in value.items():
            if not math.isfinite(tolerance):
                raise ValueError(f"tolerance for {key} must be finite")
        return value


class RunnerSettings(BaseSettings):
    """Runner defaults taken from NUMSCALE_* environment variables or .env"""

    model_config = SettingsConfigDict(env_prefix="NUMSCALE_", env_file=".env", extra="ignore")

    out_dir: Path = Path("results")
    seed: NonNegativeInt | None = None


# Loading


def _key_path(key: str, top_level: bool) -> list[str]:
    head, *rest = key.split(".")
    if top_level and head in CHECK_ID_SECTIONS and rest:
        return [head, ".".join(rest)]
    return [head, *rest]


def expand_dotted_keys(raw: dict[str, Any], top_level: bool = True) -> dict[str, Any]:
    """
    {'field.alpha.kind': 'sine'} -> {'field': {'alpha': {'kind': 'sine'}}}

    Keys below 'tolerances' are check ids and keep their dots:
    {'tolerances.pair.pauli': 1e-12} -> {'tolerances': {'pair.pauli': 1e-12}}
    """
    expanded: dict[str, Any] = {}
    for key, value in raw.items():
        path = _key_path(str(key), top_level)
        if isinstance(value, dict) and not (top_level and path[0] in CHECK_ID_SECTIONS):
            value = expand_dotted_keys(value, top_level=False)
        target = expanded
        *parents, leaf = path
        for parent in parents:
            target = target.setdefault(parent, {})
            if not isinstance(target, dict):
                raise ConfigurationError(f"{key}: conflicts with a scalar value", violations=[key])
        if isinstance(value, dict) and isinstance(target.get(leaf), dict):
            target[leaf] = deep_merge(target[leaf], value)
        else:
            target[leaf] = value
    return expanded


def deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Recursive dict merge, override wins"""
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _model_for(loc: tuple[Any, ...]) -> type[BaseModel] | None:
    """Model class owning the last element of a validation error location"""
    model: type[BaseModel] = ScenarioConfig
    for part in loc[:-1]:
        field = model.model_fields.get(str(part))
        if field is None:
            return None
        annotation = field.annotation
        candidates = get_args(annotation) if get_origin(annotation) else (annotation,)
        nested = [c for c in candidates if isinstance(c, type) and issubclass(c, BaseModel)]
        if not nested:
            return None
        model = nested[0]
    return model


def _describe(error: dict[str, Any]) -> str:
    loc = tuple(error["loc"])
    dotted = ".".join(str(part) for part in loc)
    message = error["msg"]
    if error["type"] == "extra_forbidden":
        model = _model_for(loc)
        if model is not None:
            suggestions = difflib.get_close_matches(str(loc[-1]), list(model.model_fields), n=1)
            if suggestions:
                message = f"{message} (did you mean '{suggestions[0]}'?)"
    return f"{dotted}: {message}"


def validate_config(raw: dict[str, Any]) -> ScenarioConfig:
    """
    Validate a raw mapping into a ScenarioConfig.

    Raises:
        ConfigurationError: listing every offending dotted key at once
    """
    try:
        return ScenarioConfig.model_validate(expand_dotted_keys(raw))
    except ValidationError as e:
        violations = [_describe(error) for error in e.errors()]
        raise ConfigurationError(
            "Invalid configuration:\n  " + "\n  ".join(violations),
            violations=violations,
        ) from e


def read_config_file(path: Path) -> dict[str, Any]:
    """Parse a YAML file into a raw mapping"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"Cannot read config file {path}: {e}") from e
    try:
        raw = yaml.safe_load(text) or {}
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Config file {path} is not valid YAML: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigurationError(f"Config file {path} must contain a mapping")
    return raw


def parse_overrides(assignments: list[str]) -> dict[str, Any]:
    """['grid.n=1024', 'field.alpha.kind=sine'] -> nested mapping with YAML-typed values"""
    overrides: dict[str, Any] = {}
    for assignment in assignments:
        key, separator, value = assignment.partition("=")
        if not separator or not key:
            raise ConfigurationError(f"Override {assignment!r} must look like key=value")
        overrides = deep_merge(overrides, expand_dotted_keys({key.strip(): yaml.safe_load(value)}))
    return overrides


def load_config(path: Path, overrides: dict[str, Any] | None = None) -> ScenarioConfig:
    """Read, merge command-line overrides into, and validate a config file"""
    raw = expand_dotted_keys(read_config_file(path))
    return validate_config(deep_merge(raw, overrides or {}))


def with_defaults(cfg: ScenarioConfig, defaults: dict[str, Any]) -> ScenarioConfig:
    """Layer explicitly set values of cfg over scenario defaults"""
    return validate_config(deep_merge(defaults, cfg.model_dump(exclude_unset=True)))
