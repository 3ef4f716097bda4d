"""
Scaling Engine Services

Input builders, report writing, the scenario registry and the runner.

Services are implemented as plain functions for simplicity and testability.
"""

from .inputs import build_field, build_packet, build_pair_potential, build_potential
from .reporting import build_summary, write_report
from .registry import Registry, get_registry
from .runner import RunSummary, resolve_scenarios, run_scenario, scenario_names

__all__ = [
    "build_field",
    "build_packet",
    "build_pair_potential",
    "build_potential",
    "build_summary",
    "write_report",
    "Registry",
    "get_registry",
    "RunSummary",
    "resolve_scenarios",
    "run_scenario",
    "scenario_names",
]
