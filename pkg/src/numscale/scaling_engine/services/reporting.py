"""
Report Writer

Writes a run's results into an output directory:

    summary.json    scenarios, checks, config hash and seed (no timings)
    checks.csv      check_id,residual,tolerance,pass
    timings.csv     check_id,runtime_seconds
    <artifact>.csv  plot-ready tables emitted by the scenarios

Everything except timings.csv is byte-identical across reruns with the
same configuration and seed.
"""

from pathlib import Path
from typing import Any

from ..config import ScenarioConfig
from ..models import CheckReport, ScenarioResult, ScenarioStatus
from ..repositories.artifact_repository import ArtifactRepository
from ..utils.hashing import generate_config_hash

SUMMARY_FILE = "summary.json"
CHECKS_FILE = "checks.csv"
TIMINGS_FILE = "timings.csv"
CHECKS_HEADER = ["check_id", "residual", "tolerance", "pass"]


def _as_results(reports: list[CheckReport] | list[ScenarioResult]) -> list[ScenarioResult]:
    """Plain report lists are wrapped into a single anonymous result"""
    if reports and isinstance(reports[0], CheckReport):
        return [ScenarioResult(scenario_name="checks", status=ScenarioStatus.COMPLETED, reports=list(reports))]
    return list(reports)


def build_summary(results: list[ScenarioResult], cfg: ScenarioConfig | None = None) -> dict[str, Any]:
    reports = [report for result in results for report in result.reports]
    passed = sum(report.passed for report in reports)
    config = cfg.model_dump(mode="json") if cfg is not None else None
    return {
        "config_hash": generate_config_hash(config) if config is not None else None,
        "seed": cfg.seed if cfg is not None else None,
        "scenario": cfg.scenario if cfg is not None else None,
        "totals": {
            "checks": len(reports),
            "passed": passed,
            "failed": len(reports) - passed,
            "all_passed": passed == len(reports) and all(r.status is ScenarioStatus.COMPLETED for r in results),
        },
        "scenarios": [result.to_dict() for result in results],
    }


def write_report(
    reports: list[CheckReport] | list[ScenarioResult],
    out_dir: Path,
    cfg: ScenarioConfig | None = None,
) -> list[Path]:
    """
    Write summary.json, checks.csv, timings.csv and every artifact CSV.

    Args:
        reports: Scenario results, or a bare list of CheckReports
        out_dir: Output directory, created if missing
        cfg: Configuration recorded in the summary (hash and seed)

    Returns:
        Paths of the written files, summary first

    Raises:
        ReportWriteError: If a file cannot be written
    """
    results = _as_results(reports)
    repo = ArtifactRepository(out_dir)
    all_reports = [report for result in results for report in result.reports]

    written = [repo.write_json(SUMMARY_FILE, build_summary(results, cfg))]
    written.append(
        repo.write_csv(
            CHECKS_FILE,
            CHECKS_HEADER,
            [[r.check_id, r.residual, r.tolerance, r.passed] for r in all_reports],
        )
    )
    written.append(
        repo.write_csv(
            TIMINGS_FILE,
            ["check_id", "runtime_seconds"],
            [[r.check_id, r.runtime_seconds] for r in all_reports],
        )
    )
    for result in results:
        for artifact in result.artifacts:
            written.append(repo.write_csv(f"{artifact.name}.csv", artifact.header, artifact.rows))
    return written
