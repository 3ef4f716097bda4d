"""
Tests for the Grid Scenarios

Full runs of the localization, operator, momentum, evolution, pair and
n-particle scenarios with their built-in defaults, plus the input errors
each of them turns into a PREPARE failure.
"""

import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent.parent / "src"))

import pytest  # pylint: disable=import-error

from numscale.scaling_engine.config import validate_config  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.models import (  # pylint: disable=import-error,wrong-import-position
    ScenarioPhase,
    ScenarioStatus,
)
from numscale.scaling_engine.scenarios.evolve import EvolveScenario  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.scenarios.localize import LocalizeScenario  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.scenarios.momentum import MomentumScenario  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.scenarios.nparticle import NParticleScenario  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.scenarios.operators import OperatorsScenario  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.scenarios.pair import PairScenario  # pylint: disable=import-error,wrong-import-position

GRID_SCENARIOS = [
    LocalizeScenario,
    OperatorsScenario,
    MomentumScenario,
    EvolveScenario,
    PairScenario,
    NParticleScenario,
]


def _failures(result) -> list[str]:
    return [f"{r.check_id}: residual={r.residual:.3e} tol={r.tolerance:.1e} {r.detail or ''}" for r in result.reports if not r.passed]


@pytest.mark.slow
@pytest.mark.timeout(600)
@pytest.mark.parametrize("scenario_class", GRID_SCENARIOS, ids=lambda cls: cls.SCENARIO_NAME)
def test_defaults_pass(scenario_class):
    result = scenario_class(verbose=False).execute(validate_config({}))

    assert result.status is ScenarioStatus.COMPLETED, result.error_message
    assert not _failures(result), _failures(result)
    assert {r.check_id for r in result.reports} == set(scenario_class.CHECKS)


@pytest.mark.slow
@pytest.mark.parametrize("scenario_class", [PairScenario, NParticleScenario], ids=lambda cls: cls.SCENARIO_NAME)
def test_multi_particle_runs_within_ten_seconds(scenario_class):
    result = scenario_class(verbose=False).execute(validate_config({}))

    assert result.is_successful(), _failures(result)
    assert result.duration_seconds < 10.0


@pytest.mark.slow
def test_intertwining_check_within_five_seconds():
    result = OperatorsScenario(verbose=False).execute(validate_config({}))
    report = next(r for r in result.reports if r.check_id == "operators.intertwining_order2")

    assert report.passed
    assert report.runtime_seconds < 5.0


class TestLocalizeScenario:
    """Reference points and artifacts."""

    def test_reference_off_grid(self):
        result = LocalizeScenario(verbose=False).execute(validate_config({"references": {"w": 0.01}}))

        assert result.status is ScenarioStatus.FAILED
        assert result.error_phase is ScenarioPhase.PREPARE
        assert "references.w" in result.error_message
        assert "references.x" not in result.error_message

    def test_packet_artifacts(self):
        result = LocalizeScenario(verbose=False).execute(validate_config({}))
        names = [artifact.name for artifact in result.artifacts]

        assert names == ["localize_packet", "localize_x", "localize_w"]


class TestClosedFormRequirement:
    """Convergence scenarios cannot refine sampled inputs."""

    @pytest.mark.parametrize("scenario_class", [OperatorsScenario, EvolveScenario, PairScenario])
    def test_sampled_field_rejected(self, scenario_class):
        cfg = validate_config({"field": {"kind": "samples", "samples_path": "field.csv"}})
        result = scenario_class(verbose=False).execute(cfg)

        assert result.error_phase is ScenarioPhase.PREPARE
        assert "closed-form" in result.error_message


class TestNParticleScenario:
    """Reference handling and smaller runs."""

    def test_reference_count(self):
        cfg = validate_config({"nparticle": {"n": 2, "refs": [0.0]}})
        result = NParticleScenario(verbose=False).execute(cfg)

        assert result.error_phase is ScenarioPhase.PREPARE
        assert "nparticle.refs" in result.error_message

    def test_two_particles(self):
        cfg = validate_config({"nparticle": {"n": 2, "per_axis": 16, "refs": [-2.5, 2.5]}})
        result = NParticleScenario(verbose=False).execute(cfg)

        assert result.is_successful(), _failures(result)
        assert len(result.artifacts[0].rows) == 16
