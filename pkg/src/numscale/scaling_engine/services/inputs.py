"""
Input Builders

Turns validated config sections into domain objects: grids, scaling
fields, wave packets and potentials. Sampled inputs come through the
InputRepository.
"""

import numpy as np

from ..config import (
    FieldConfig,
    PacketConfig,
    PairPotentialConfig,
    PotentialConfig,
)
from ..exceptions import InputPreparationError
from ..grid import Grid1D
from ..models import PhysicalConstants
from ..qm_multi import separable_potential, softened_coulomb
from ..qm_single import WavePacket, gaussian_packet, harmonic_potential
from ..repositories.input_repository import InputRepository
from ..scaling_field import FieldSpec


def _check_nodes(z: np.ndarray, grid: Grid1D, source: str) -> None:
    if z.shape != (grid.n,) or not np.allclose(z, grid.z, rtol=0.0, atol=1e-9 * grid.dz):
        raise InputPreparationError(f"{source}: z column does not match the configured grid nodes")


def build_field(spec: FieldConfig, grid: Grid1D, repo: InputRepository) -> FieldSpec:
    if spec.kind == "samples":
        columns = repo.read_columns(spec.samples_path, ["z", "alpha", "beta"])
        _check_nodes(columns["z"], grid, str(spec.samples_path))
        return FieldSpec.sampled(grid, columns["alpha"], columns["beta"])
    return FieldSpec.closed_form(spec.alpha.build(), spec.beta.build())


def build_packet(spec: PacketConfig, grid: Grid1D, repo: InputRepository) -> WavePacket:
    if spec.kind == "samples":
        columns = repo.read_columns(spec.samples_path, ["z", "re", "im"])
        _check_nodes(columns["z"], grid, str(spec.samples_path))
        return WavePacket(columns["re"] + 1j * columns["im"], grid)
    return gaussian_packet(grid, spec.center, spec.width, spec.k0)


def build_potential(
    spec: PotentialConfig,
    grid: Grid1D,
    constants: PhysicalConstants,
    repo: InputRepository,
) -> np.ndarray | None:
    match spec.kind:
        case "harmonic":
            return harmonic_potential(grid, spec.omega, constants, spec.center)
        case "samples":
            columns = repo.read_columns(spec.samples_path, ["z", "v"])
            _check_nodes(columns["z"], grid, str(spec.samples_path))
            return columns["v"]
    return None


def build_pair_potential(
    spec: PairPotentialConfig,
    grid: Grid1D,
    constants: PhysicalConstants,
) -> np.ndarray | None:
    match spec.kind:
        case "separable":
            return separable_potential(harmonic_potential(grid, spec.omega, constants))
        case "coulomb":
            return softened_coulomb(grid, spec.strength, spec.softening)
    return None
