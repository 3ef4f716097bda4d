"""
Evolution Scenario

Crank-Nicolson time evolution: free Gaussian spreading against its
closed form and against exact lattice propagation, norm conservation
for g = 1, and the intertwining of scaled and plain evolutions.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..base_scenario import BaseScenario
from ..config import ScenarioConfig
from ..grid import Grid1D, relative_residual
from ..models import PhysicalConstants
from ..qm_single import (
    WavePacket,
    evolve,
    free_gaussian_reference,
    gaussian_packet,
    lattice_free_propagation,
    norm_history,
)
from ..scaling_field import FieldSpec
from ..services.inputs import build_field, build_potential
from ._common import require_closed_form

# 64-unit interval with a wide packet; the field is gentle and periodic on it
EVOLUTION_DEFAULTS: dict = {
    "grid": {"n": 512, "dz": 0.125},
    "packet": {"kind": "gaussian", "center": 0.0, "width": 4.0, "k0": 0.0},
    "field": {
        "kind": "closed_form",
        "alpha": {"kind": "gaussian", "amplitude": 0.1, "center": 0.0, "width": 6.0},
        "beta": {"kind": "sine", "amplitude": 0.05, "wavenumber": 2 * math.pi / 32},
    },
}


@dataclass
class EvolutionInputs:
    cfg: ScenarioConfig
    grid: Grid1D
    field: FieldSpec
    packet: WavePacket
    potential: np.ndarray | None
    constants: PhysicalConstants
    dt: float
    steps: int

    @property
    def duration(self) -> float:
        return self.dt * self.steps


class EvolveScenario(BaseScenario):
    """Time evolution with and without the scaling field"""

    SCENARIO_NAME = "evolve"
    DESCRIPTION = "Crank-Nicolson evolution, free spreading and intertwined evolution"
    ORDER = 60
    CONFIG = EVOLUTION_DEFAULTS

    CHECKS = {
        "evolve.free_gaussian": "i hbar d_t psi = -hbar^2/2m d^2 psi, free Gaussian closed form",
        "evolve.free_lattice": "Crank-Nicolson vs exact lattice propagator",
        "evolve.norm_drift": "g = 1: |psi(t)|^2 conserved per step",
        "evolve.intertwined": "exp(-i H~_x t) e^gamma psi = e^gamma exp(-i H~^x t) psi",
    }
    DEFAULT_TOLERANCES = {
        "evolve.free_gaussian": 1e-6,
        "evolve.free_lattice": 1e-6,
        "evolve.norm_drift": 1e-10,
        "evolve.intertwined": 1e-6,
    }

    def prepare(self, cfg: ScenarioConfig) -> EvolutionInputs:
        require_closed_form(cfg, self.SCENARIO_NAME)
        grid = cfg.grid.build()
        constants = cfg.constants.build()
        packet = cfg.packet
        return EvolutionInputs(
            cfg=cfg,
            grid=grid,
            field=build_field(cfg.field, grid, self._input_repo),
            packet=gaussian_packet(grid, packet.center, packet.width, packet.k0, normalize=False),
            potential=build_potential(cfg.potential, grid, constants, self._input_repo),
            constants=constants,
            dt=cfg.evolution.dt,
            steps=cfg.evolution.steps,
        )

    def run_checks(self, prepared: EvolutionInputs) -> None:
        grid, psi, c = prepared.grid, prepared.packet, prepared.constants
        flat = FieldSpec.zero()
        free = evolve(psi, flat, None, c, prepared.dt, prepared.steps)

        self._check("evolve.free_gaussian", lambda: self._free_gaussian(prepared, free))
        self._check(
            "evolve.free_lattice",
            lambda: relative_residual(
                free.amplitudes - lattice_free_propagation(psi, prepared.duration, c).amplitudes,
                psi.amplitudes,
                grid.dz,
            ),
        )
        self._check("evolve.norm_drift", lambda: self._norm_drift(prepared))
        self._check("evolve.intertwined", lambda: self._intertwined(prepared))

        self._add_packet_artifact("evolve_initial", grid.z, psi.amplitudes)
        self._add_packet_artifact("evolve_free_final", grid.z, free.amplitudes)

    @staticmethod
    def _free_gaussian(prepared: EvolutionInputs, free: WavePacket) -> float:
        packet = prepared.cfg.packet
        reference = free_gaussian_reference(
            prepared.grid, packet.center, packet.width, packet.k0, prepared.duration, prepared.constants
        )
        return relative_residual(free.amplitudes - reference.amplitudes, reference.amplitudes, prepared.grid.dz)

    def _norm_drift(self, prepared: EvolutionInputs) -> float:
        norms = norm_history(
            prepared.packet,
            FieldSpec.zero(),
            prepared.potential,
            prepared.constants,
            prepared.dt,
            prepared.steps,
        )
        self._add_artifact(
            "evolve_norms",
            ["step", "norm2"],
            [[step, float(norm)] for step, norm in enumerate(norms)],
        )
        return float(np.max(np.abs(np.diff(norms))) / norms[0])

    def _intertwined(self, prepared: EvolutionInputs) -> tuple[float, str]:
        """Evolve on a finer grid over the same interval so the O(h^2) gap stays below tolerance"""
        coarse = prepared.grid
        n = prepared.cfg.evolution.intertwined_n
        grid = Grid1D(n=n, dz=coarse.length / n, origin=coarse.origin)
        f, c = prepared.field, prepared.constants
        packet = prepared.cfg.packet
        psi = gaussian_packet(grid, packet.center, packet.width, packet.k0)
        V = build_potential(prepared.cfg.potential, grid, c, self._input_repo)
        weight = np.exp(f.gamma_on(grid))

        plain = evolve(psi.with_amplitudes(weight * psi.amplitudes), f, V, c, prepared.dt, prepared.steps, scaled=False)
        scaled = evolve(psi, f, V, c, prepared.dt, prepared.steps, scaled=True)
        expected = weight * scaled.amplitudes
        residual = relative_residual(plain.amplitudes - expected, expected, grid.dz)
        return residual, f"n={n} dz={grid.dz}"
