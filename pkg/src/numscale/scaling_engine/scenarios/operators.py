"""
Operators Scenario

Covariant derivative, canonical momentum, scaled kinetic energy and the
Hamiltonian on a single packet. Identities that only hold in the
continuum are verified by halving the grid spacing.
"""

from dataclasses import dataclass

import numpy as np

from ..base_scenario import BaseScenario
from ..config import ScenarioConfig
from ..grid import Grid1D, central_first, relative_residual
from ..models import PhysicalConstants
from ..qm_single import (
    WavePacket,
    canonical_momentum_apply,
    covariant_derivative,
    hamiltonian_apply,
    harmonic_ground_state,
    harmonic_potential,
    localization_commutes_check,
    plane_wave,
    scaled_kinetic_apply,
    transport_quotient_derivative,
)
from ..scaling_field import FieldSpec, Profile, ProfileKind
from ..services.inputs import build_field, build_packet, build_potential
from ._common import (
    CONVERGENCE_TOLERANCE,
    SMOOTH_FIELD,
    convergence,
    max_abs_difference,
    require_closed_form,
)

PLANE_WAVE_MODE = 4


@dataclass
class OperatorInputs:
    cfg: ScenarioConfig
    grid: Grid1D
    field: FieldSpec
    packet: WavePacket
    packet2: WavePacket
    potential: np.ndarray | None
    constants: PhysicalConstants
    x: float


class OperatorsScenario(BaseScenario):
    """Operator identities of the scaled one-particle Hamiltonian"""

    SCENARIO_NAME = "operators"
    DESCRIPTION = "Covariant derivative, momentum, kinetic and Hamiltonian identities"
    ORDER = 40
    CONFIG = {**SMOOTH_FIELD, "potential": {"kind": "harmonic", "omega": 1.0}}

    CHECKS = {
        "operators.intertwining_order2": "H~_x(e^gamma psi) = e^gamma H~^x psi, residual O(h^2)",
        "operators.localization_commutes_order2": "(H~ psi)_{g,x} = H~_x psi_{g,x}, residual O(h^2)",
        "operators.potential_commutes": "(V psi)_{g,x} = V psi_{g,x}",
        "operators.g1_exact": "g = 1: H~^x = H~_x and localization commutes exactly",
        "operators.covariant_reduces": "Gamma = 0: D psi = d psi",
        "operators.covariantly_constant_order2": "D e^{-gamma} = 0 to O(h^2)",
        "operators.transport_quotient_order1": "D psi = lim (C psi(z+h) - psi(z))/h, agreement O(h)",
        "operators.momentum_intertwining_order2": "-i hbar d(e^gamma psi) = e^gamma p~ psi, residual O(h^2)",
        "operators.plane_wave_momentum": "Gamma = 0: p~ e^{ikz} = hbar sin(k dz)/dz e^{ikz}",
        "operators.constant_connection_momentum": "Gamma = c: p~ e^{ikz} = (hbar sin(k dz)/dz - i hbar c) e^{ikz}",
        "operators.kinetic_composition_order2": "K~ = p~ p~ / 2m, residual O(h^2)",
        "operators.harmonic_ground_state_order2": "H psi_0 = hbar omega/2 psi_0, residual O(h^2)",
        "operators.linearity": "H~(a psi + b phi) = a H~ psi + b H~ phi",
    }
    DEFAULT_TOLERANCES = {
        "operators.intertwining_order2": CONVERGENCE_TOLERANCE,
        "operators.localization_commutes_order2": CONVERGENCE_TOLERANCE,
        "operators.potential_commutes": 1e-14,
        "operators.g1_exact": 0.0,
        "operators.covariant_reduces": 0.0,
        "operators.covariantly_constant_order2": CONVERGENCE_TOLERANCE,
        "operators.transport_quotient_order1": CONVERGENCE_TOLERANCE,
        "operators.momentum_intertwining_order2": CONVERGENCE_TOLERANCE,
        "operators.plane_wave_momentum": 1e-12,
        "operators.constant_connection_momentum": 1e-12,
        "operators.kinetic_composition_order2": CONVERGENCE_TOLERANCE,
        "operators.harmonic_ground_state_order2": CONVERGENCE_TOLERANCE,
        "operators.linearity": 1e-12,
    }

    def prepare(self, cfg: ScenarioConfig) -> OperatorInputs:
        require_closed_form(cfg, self.SCENARIO_NAME)
        grid = cfg.grid.build()
        constants = cfg.constants.build()
        grid.index_of(cfg.references.x)
        return OperatorInputs(
            cfg=cfg,
            grid=grid,
            field=build_field(cfg.field, grid, self._input_repo),
            packet=build_packet(cfg.packet, grid, self._input_repo),
            packet2=build_packet(cfg.packet2, grid, self._input_repo),
            potential=build_potential(cfg.potential, grid, constants, self._input_repo),
            constants=constants,
            x=cfg.references.x,
        )

    # Inputs rebuilt on a refined grid

    def _packet_on(self, prepared: OperatorInputs, grid: Grid1D) -> WavePacket:
        return build_packet(prepared.cfg.packet, grid, self._input_repo)

    def _potential_on(self, prepared: OperatorInputs, grid: Grid1D) -> np.ndarray | None:
        return build_potential(prepared.cfg.potential, grid, prepared.constants, self._input_repo)

    def run_checks(self, prepared: OperatorInputs) -> None:
        grid, f, psi, V, c = (
            prepared.grid,
            prepared.field,
            prepared.packet,
            prepared.potential,
            prepared.constants,
        )

        def intertwining(g: Grid1D) -> float:
            packet = self._packet_on(prepared, g)
            weight = np.exp(f.gamma_on(g))
            potential = self._potential_on(prepared, g)
            lhs = hamiltonian_apply(packet.with_amplitudes(weight * packet.amplitudes), f, potential, c, scaled=False)
            rhs = weight * hamiltonian_apply(packet, f, potential, c, scaled=True).amplitudes
            return relative_residual(lhs.amplitudes - rhs, packet.amplitudes, g.dz)

        def commutation(g: Grid1D) -> float:
            return localization_commutes_check(
                self._packet_on(prepared, g), f, self._potential_on(prepared, g), prepared.x, c
            )

        def covariantly_constant(g: Grid1D) -> float:
            section = WavePacket(np.exp(-f.gamma_on(g)), g)
            return float(np.max(np.abs(covariant_derivative(section, f).amplitudes)))

        def transport_gap(g: Grid1D) -> float:
            packet = self._packet_on(prepared, g)
            gap = transport_quotient_derivative(packet, f).amplitudes - covariant_derivative(packet, f).amplitudes
            return relative_residual(gap, packet.amplitudes, g.dz)

        def momentum_intertwining(g: Grid1D) -> float:
            packet = self._packet_on(prepared, g)
            weight = np.exp(f.gamma_on(g))
            lhs = -1j * c.hbar * central_first(weight * packet.amplitudes, g.dz)
            rhs = weight * canonical_momentum_apply(packet, f, c).amplitudes
            return relative_residual(lhs - rhs, packet.amplitudes, g.dz)

        def kinetic_composition(g: Grid1D) -> float:
            packet = self._packet_on(prepared, g)
            twice = canonical_momentum_apply(canonical_momentum_apply(packet, f, c), f, c)
            composed = twice.amplitudes / (2.0 * c.mass)
            return relative_residual(
                scaled_kinetic_apply(packet, f, c).amplitudes - composed, packet.amplitudes, g.dz
            )

        def ground_state(g: Grid1D) -> float:
            omega = prepared.cfg.potential.omega
            state, energy = harmonic_ground_state(g, omega, c)
            applied = hamiltonian_apply(state, FieldSpec.zero(), harmonic_potential(g, omega, c), c)
            return relative_residual(applied.amplitudes - energy * state.amplitudes, state.amplitudes, g.dz)

        self._check("operators.intertwining_order2", lambda: convergence(intertwining, grid))
        self._check("operators.localization_commutes_order2", lambda: convergence(commutation, grid))
        self._check(
            "operators.potential_commutes",
            lambda: localization_commutes_check(psi, f, V, prepared.x, c, include_kinetic=False),
        )
        self._check("operators.g1_exact", lambda: self._g1_exact(prepared))
        self._check(
            "operators.covariant_reduces",
            lambda: max_abs_difference(
                covariant_derivative(psi, FieldSpec.zero()).amplitudes, central_first(psi.amplitudes, grid.dz)
            ),
        )
        self._check("operators.covariantly_constant_order2", lambda: convergence(covariantly_constant, grid))
        self._check("operators.transport_quotient_order1", lambda: convergence(transport_gap, grid, order=1))
        self._check("operators.momentum_intertwining_order2", lambda: convergence(momentum_intertwining, grid))
        self._check("operators.plane_wave_momentum", lambda: self._plane_wave(prepared, 0j))
        self._check(
            "operators.constant_connection_momentum",
            lambda: self._plane_wave(prepared, 0.25 + 0.5j),
        )
        self._check("operators.kinetic_composition_order2", lambda: convergence(kinetic_composition, grid))
        self._check("operators.harmonic_ground_state_order2", lambda: convergence(ground_state, grid))
        self._check("operators.linearity", lambda: self._linearity(prepared))

        self._add_packet_artifact("operators_packet", grid.z, psi.amplitudes)
        self._add_packet_artifact(
            "operators_hamiltonian", grid.z, hamiltonian_apply(psi, f, V, c, scaled=True).amplitudes
        )

    @staticmethod
    def _g1_exact(prepared: OperatorInputs) -> float:
        psi, V, c = prepared.packet, prepared.potential, prepared.constants
        flat = FieldSpec.zero()
        scaled = hamiltonian_apply(psi, flat, V, c, scaled=True).amplitudes
        plain = hamiltonian_apply(psi, flat, V, c, scaled=False).amplitudes
        return max(
            max_abs_difference(scaled, plain),
            localization_commutes_check(psi, flat, V, prepared.x, c),
        )

    @staticmethod
    def _plane_wave(prepared: OperatorInputs, connection: complex) -> float:
        """p~ on a lattice plane wave under the constant connection Gamma = connection"""
        grid, c = prepared.grid, prepared.constants
        k = 2 * np.pi * PLANE_WAVE_MODE / grid.length
        wave = plane_wave(grid, k)
        f = FieldSpec.closed_form(
            Profile(ProfileKind.LINEAR, slope=connection.real),
            Profile(ProfileKind.LINEAR, slope=connection.imag),
        )
        expected = (c.hbar * np.sin(k * grid.dz) / grid.dz - 1j * c.hbar * connection) * wave.amplitudes
        applied = canonical_momentum_apply(wave, f, c).amplitudes
        return relative_residual(applied - expected, wave.amplitudes, grid.dz)

    @staticmethod
    def _linearity(prepared: OperatorInputs) -> float:
        psi, phi, f, V, c = (
            prepared.packet,
            prepared.packet2,
            prepared.field,
            prepared.potential,
            prepared.constants,
        )
        a, b = 0.75 - 0.5j, -1.25 + 2.0j
        combined = hamiltonian_apply(a * psi + b * phi, f, V, c).amplitudes
        separate = a * hamiltonian_apply(psi, f, V, c).amplitudes + b * hamiltonian_apply(phi, f, V, c).amplitudes
        return relative_residual(combined - separate, separate, psi.grid.dz)
