"""
Tests for Input Builders and the Input Repository
"""

# pylint: disable=redefined-outer-name  # pytest fixtures

import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent.parent / "src"))

import numpy as np  # pylint: disable=import-error
import pytest  # pylint: disable=import-error

from numscale.scaling_engine.config import (  # pylint: disable=import-error,wrong-import-position
    FieldConfig,
    PacketConfig,
    PairPotentialConfig,
    PotentialConfig,
)
from numscale.scaling_engine.exceptions import InputPreparationError  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.grid import Grid1D  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.models import PhysicalConstants  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.qm_single import gaussian_packet  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.repositories.input_repository import InputRepository  # pylint: disable=import-error,wrong-import-position
from numscale.scaling_engine.services.inputs import (  # pylint: disable=import-error,wrong-import-position
    build_field,
    build_packet,
    build_pair_potential,
    build_potential,
)
from numscale.scaling_engine.utils.formatting import format_float  # pylint: disable=import-error,wrong-import-position


@pytest.fixture
def grid():
    return Grid1D.centered(32, 8.0)


@pytest.fixture
def repo(tmp_path):
    return InputRepository(tmp_path)


def _write_csv(path: Path, header: list[str], columns: list[np.ndarray]) -> None:
    lines = [",".join(header)]
    lines += [",".join(format_float(value) for value in row) for row in zip(*columns)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


class TestInputRepository:
    """CSV columns and numeral files."""

    def test_read_columns(self, repo, tmp_path):
        _write_csv(tmp_path / "v.csv", ["z", "v"], [np.array([0.0, 0.5]), np.array([1.0, 2.0])])
        columns = repo.read_columns(Path("v.csv"), ["v"])

        assert np.array_equal(columns["v"], [1.0, 2.0])

    def test_missing_file(self, repo):
        with pytest.raises(InputPreparationError):
            repo.read_columns(Path("absent.csv"), ["z"])

    def test_missing_column(self, repo, tmp_path):
        _write_csv(tmp_path / "v.csv", ["z", "v"], [np.array([0.0]), np.array([1.0])])
        with pytest.raises(InputPreparationError, match="alpha"):
            repo.read_columns(Path("v.csv"), ["z", "alpha"])

    def test_non_finite_values(self, repo, tmp_path):
        (tmp_path / "v.csv").write_text("z,v\n0.0,nan\n", encoding="utf-8")
        with pytest.raises(InputPreparationError, match="non-finite"):
            repo.read_columns(Path("v.csv"), ["v"])

    def test_read_numerals(self, repo, tmp_path):
        (tmp_path / "numerals.txt").write_text("b.a\n\n  dbf.aag  \n", encoding="utf-8")
        assert repo.read_numerals(Path("numerals.txt")) == ["b.a", "dbf.aag"]

    def test_absolute_path_kept(self, tmp_path):
        assert InputRepository(Path("/elsewhere")).resolve(tmp_path / "x.csv") == tmp_path / "x.csv"


class TestBuilders:
    """Domain objects from config sections."""

    def test_sampled_field_matches_closed_form(self, grid, repo, tmp_path):
        closed = build_field(
            FieldConfig(alpha={"kind": "gaussian", "amplitude": 0.3}, beta={"kind": "linear", "slope": 0.1}),
            grid,
            repo,
        )
        gamma = closed.gamma_on(grid)
        _write_csv(tmp_path / "field.csv", ["z", "alpha", "beta"], [grid.z, gamma.real, gamma.imag])

        sampled = build_field(FieldConfig(kind="samples", samples_path=Path("field.csv")), grid, repo)

        assert sampled.is_sampled
        assert np.array_equal(sampled.gamma_on(grid), gamma)

    def test_sampled_field_on_wrong_grid(self, grid, repo, tmp_path):
        _write_csv(tmp_path / "field.csv", ["z", "alpha", "beta"], [grid.z + 0.1, np.zeros(32), np.zeros(32)])
        with pytest.raises(InputPreparationError, match="grid nodes"):
            build_field(FieldConfig(kind="samples", samples_path=Path("field.csv")), grid, repo)

    def test_sampled_packet(self, grid, repo, tmp_path):
        psi = gaussian_packet(grid, center=0.5, k0=1.0).amplitudes
        _write_csv(tmp_path / "packet.csv", ["z", "re", "im"], [grid.z, psi.real, psi.imag])

        packet = build_packet(PacketConfig(kind="samples", samples_path=Path("packet.csv")), grid, repo)

        assert np.array_equal(packet.amplitudes, psi)

    def test_gaussian_packet(self, grid, repo):
        packet = build_packet(PacketConfig(center=1.0), grid, repo)
        assert grid.z[np.argmax(np.abs(packet.amplitudes))] == 1.0

    def test_potentials(self, grid, repo):
        constants = PhysicalConstants()

        assert build_potential(PotentialConfig(), grid, constants, repo) is None
        harmonic = build_potential(PotentialConfig(kind="harmonic", omega=2.0), grid, constants, repo)
        assert harmonic[grid.index_of(1.0)] == pytest.approx(2.0)

    def test_pair_potentials(self, grid):
        constants = PhysicalConstants()

        assert build_pair_potential(PairPotentialConfig(), grid, constants) is None
        assert build_pair_potential(PairPotentialConfig(kind="coulomb"), grid, constants).shape == (32, 32)
        separable = build_pair_potential(PairPotentialConfig(kind="separable"), grid, constants)
        assert np.array_equal(separable, separable.T)
