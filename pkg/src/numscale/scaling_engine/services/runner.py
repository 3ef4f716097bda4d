"""
Scenario Runner

Resolves the scenario(s) named by a configuration, executes them in
full-suite order and hands the results to the report writer.
"""

import difflib
from dataclasses import dataclass, field
from pathlib import Path

from ..config import FULL_SUITE, ScenarioConfig
from ..exceptions import ConfigurationError
from ..models import CheckReport, ScenarioPhase, ScenarioResult
from ..repositories.input_repository import InputRepository
from .registry import get_registry
from .reporting import write_report


@dataclass
class RunSummary:
    """All scenario results of one run"""

    results: list[ScenarioResult] = field(default_factory=list)

    @property
    def reports(self) -> list[CheckReport]:
        return [report for result in self.results for report in result.reports]

    @property
    def all_passed(self) -> bool:
        return all(result.is_successful() for result in self.results)

    @property
    def input_failed(self) -> bool:
        """A scenario could not build its inputs (configuration-level failure)"""
        return any(result.error_phase is ScenarioPhase.PREPARE for result in self.results)

    def exit_code(self) -> int:
        """0 when everything passed, 2 for input/config failures, 1 otherwise"""
        if self.input_failed:
            return 2
        return 0 if self.all_passed else 1


def scenario_names() -> list[str]:
    return [FULL_SUITE, *get_registry().get_registered_scenarios()]


def resolve_scenarios(name: str) -> list[str]:
    """
    Scenario names to run for the configured scenario.

    Raises:
        ConfigurationError: If the name is unknown
    """
    registered = list(get_registry().get_registered_scenarios())
    if name == FULL_SUITE:
        return registered
    if name not in registered:
        suggestions = difflib.get_close_matches(name, [FULL_SUITE, *registered], n=1)
        hint = f" (did you mean '{suggestions[0]}'?)" if suggestions else ""
        raise ConfigurationError(
            f"scenario: unknown scenario '{name}'{hint}",
            violations=[f"scenario: unknown scenario '{name}'"],
        )
    return [name]


def validate_tolerance_keys(cfg: ScenarioConfig, names: list[str]) -> None:
    """
    Every tolerance key must name a check of a scenario being run.

    Raises:
        ConfigurationError: listing every unknown key
    """
    registry = get_registry()
    known = [check_id for name in names for check_id in registry.get_scenario(name).check_ids()]
    violations = []
    for key in cfg.tolerances:
        if key not in known:
            suggestions = difflib.get_close_matches(key, known, n=1)
            hint = f" (did you mean '{suggestions[0]}'?)" if suggestions else ""
            violations.append(f"tolerances.{key}: unknown check id{hint}")
    if violations:
        raise ConfigurationError(
            "Invalid configuration:\n  " + "\n  ".join(violations),
            violations=violations,
        )


def run_scenario(
    cfg: ScenarioConfig,
    out_dir: Path | None = None,
    input_repo: InputRepository | None = None,
    verbose: bool = True,
) -> RunSummary:
    """
    Run the configured scenario (or the full suite) sequentially.

    Args:
        cfg: Validated configuration
        out_dir: Where to write the report; nothing is written when None
        input_repo: Source of sampled inputs, relative to the config file
        verbose: Print progress lines

    Returns:
        RunSummary; its `reports` are the CheckReports of every scenario

    Raises:
        ConfigurationError: For an unknown scenario name or tolerance key
    """
    names = resolve_scenarios(cfg.scenario)
    validate_tolerance_keys(cfg, names)

    registry = get_registry()
    summary = RunSummary()
    for name in names:
        scenario = registry.get_scenario(name)(input_repo=input_repo, verbose=verbose)
        summary.results.append(scenario.execute(cfg))

    if out_dir is not None:
        write_report(summary.results, Path(out_dir), cfg)
        if verbose:
            print(f"📝 Report written to {out_dir}", flush=True)

    if verbose:
        reports = summary.reports
        passed = sum(report.passed for report in reports)
        marker = "✅" if summary.all_passed else "❌"
        print(f"{marker} {passed}/{len(reports)} checks passed", flush=True)
    return summary
