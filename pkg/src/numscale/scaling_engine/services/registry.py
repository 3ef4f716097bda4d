"""
Scenario Registry

A class-based registry that maps scenario names to their class
implementations. Scenario modules under scenarios/ are discovered and
registered on the first lookup.
"""

import importlib
import inspect
from pathlib import Path

from ..base_scenario import BaseScenario


class Registry:
    """
    A singleton registry for scenario classes.

    Scenarios are registered once and looked up by name from the runner
    and the CLI, decoupling scenario implementations from orchestration.
    """

    _instance = None
    _registry: dict[str, type[BaseScenario]] = {}
    _discovered: bool = False

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._registry = {}
            cls._instance._discovered = False
        return cls._instance

    def _ensure_discovered(self) -> None:
        if not self._discovered:
            self._discovered = True
            discover_scenarios()

    def register_scenario(self, scenario_class: type[BaseScenario]) -> None:
        """
        Register a scenario class under its SCENARIO_NAME.

        Raises:
            ValueError: If the class doesn't define SCENARIO_NAME
        """
        if not getattr(scenario_class, "SCENARIO_NAME", None):
            raise ValueError(
                f"Scenario class {scenario_class.__name__} must define a SCENARIO_NAME."
            )

        scenario_name = scenario_class.SCENARIO_NAME
        existing = self._registry.get(scenario_name)
        if existing is not None and existing is not scenario_class:
            print(f"⚠️  Warning: Scenario '{scenario_name}' is already registered. Overwriting.")

        self._registry[scenario_name] = scenario_class

    def get_scenario(self, scenario_name: str) -> type[BaseScenario]:
        """
        Retrieve a registered scenario class by name.

        Raises:
            ValueError: If the scenario is not registered
        """
        self._ensure_discovered()
        if scenario_name not in self._registry:
            raise ValueError(f"Scenario '{scenario_name}' not found in registry.")
        return self._registry[scenario_name]

    def is_scenario_registered(self, scenario_name: str) -> bool:
        self._ensure_discovered()
        return scenario_name in self._registry

    def get_registered_scenarios(self) -> dict[str, type[BaseScenario]]:
        """Registered scenarios in full-suite order (ORDER, then name)"""
        self._ensure_discovered()
        ordered = sorted(self._registry.items(), key=lambda item: (item[1].ORDER, item[0]))
        return dict(ordered)

    def clear_registry(self) -> None:
        """Clear all registered scenarios (mainly for testing)."""
        self._registry.clear()


def get_registry() -> Registry:
    """
    Returns the singleton instance of the Registry.
    """
    return Registry()


def discover_scenarios() -> None:
    """Import every module under scenarios/ and register its BaseScenario subclasses"""
    scenarios_dir = Path(__file__).parent.parent / "scenarios"
    if not scenarios_dir.exists():
        print("⚠️  Scenarios directory not found")
        return

    for py_file in sorted(scenarios_dir.rglob("*.py")):
        if py_file.name.startswith("_"):
            continue

        relative_path = py_file.relative_to(scenarios_dir)
        module_parts = list(relative_path.parts[:-1]) + [relative_path.stem]
        full_module_path = f"..scenarios.{'.'.join(module_parts)}"

        try:
            module = importlib.import_module(full_module_path, package=__package__)
        except ImportError as e:
            print(f"⚠️  Could not import {full_module_path}: {e}")
            continue

        for _, obj in inspect.getmembers(module, inspect.isclass):
            if (
                obj is not BaseScenario
                and issubclass(obj, BaseScenario)
                and not inspect.isabstract(obj)
                and getattr(obj, "SCENARIO_NAME", None)
            ):
                get_registry().register_scenario(obj)

