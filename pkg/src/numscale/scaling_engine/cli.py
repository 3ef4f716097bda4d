"""
Command-Line Interface

    run --config <path> --out <dir> [--seed N] [--scenario NAME] [--set key=value ...] [--quiet]
    list-scenarios

Exit codes: 0 when every check passes, 1 when a check fails, 2 for
configuration or input errors.
"""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from dotenv import load_dotenv
from pydantic import ValidationError

from .config import (
    RunnerSettings,
    ScenarioConfig,
    deep_merge,
    expand_dotted_keys,
    parse_overrides,
    read_config_file,
    validate_config,
)
from .exceptions import ConfigurationError, ReportWriteError
from .repositories.input_repository import InputRepository
from .services.registry import get_registry
from .services.runner import run_scenario, scenario_names

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="numscale",
        description="Run scaled-number and scaling-field verification scenarios",
    )
    subcommands = parser.add_subparsers(dest="command", required=True)

    run = subcommands.add_parser("run", help="Run a scenario or the full suite")
    run.add_argument("--config", type=Path, default=None, help="YAML scenario file (defaults when omitted)")
    run.add_argument("--out", type=Path, default=None, help="Output directory (default: NUMSCALE_OUT_DIR or ./results)")
    run.add_argument("--seed", type=int, default=None, help="Seed overriding the config file and NUMSCALE_SEED")
    run.add_argument("--scenario", default=None, help="Scenario name overriding the config file")
    run.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a dotted config key, e.g. grid.n=1024 (repeatable)",
    )
    run.add_argument("--quiet", action="store_true", help="Suppress progress lines")

    subcommands.add_parser("list-scenarios", help="List registered scenarios in suite order")
    return parser


def resolve_config(args: argparse.Namespace, settings: RunnerSettings) -> ScenarioConfig:
    """
    Merge the config file, environment and command-line flags.

    Resolution order (right-side precedence):
    1. Config file (scenario defaults are layered under it per scenario)
    2. NUMSCALE_SEED
    3. --seed, --scenario, --set
    """
    raw: dict[str, Any] = expand_dotted_keys(read_config_file(args.config)) if args.config else {}
    if settings.seed is not None:
        raw = deep_merge(raw, {"seed": settings.seed})

    overrides = parse_overrides(args.overrides)
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.scenario is not None:
        overrides["scenario"] = args.scenario
    return validate_config(deep_merge(raw, overrides))


def _list_scenarios() -> int:
    registry = get_registry()
    for name in scenario_names():
        if registry.is_scenario_registered(name):
            scenario = registry.get_scenario(name)
            print(f"{name:<12} {len(scenario.CHECKS):>3} checks  {scenario.DESCRIPTION}")
        else:
            print(f"{name:<12}             every scenario in order")
    return EXIT_OK


def _run(args: argparse.Namespace) -> int:
    try:
        settings = RunnerSettings()
    except ValidationError as e:
        print(f"[ERROR] Invalid NUMSCALE_* environment: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    try:
        cfg = resolve_config(args, settings)
        base_dir = args.config.parent if args.config else Path.cwd()
        summary = run_scenario(
            cfg,
            out_dir=args.out or settings.out_dir,
            input_repo=InputRepository(base_dir),
            verbose=not args.quiet,
        )
    except ConfigurationError as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except ReportWriteError as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED

    for result in summary.results:
        if result.error_message:
            print(f"[ERROR] {result.scenario_name}: {result.error_message}", file=sys.stderr)
    return summary.exit_code()


def main(argv: Sequence[str] | None = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    if args.command == "list-scenarios":
        return _list_scenarios()
    return _run(args)


if __name__ == "__main__":
    sys.exit(main())
