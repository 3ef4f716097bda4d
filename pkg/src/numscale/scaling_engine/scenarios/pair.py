"""
Pair Scenario

Two particles on the product grid: Slater combinations of orthonormal
orbitals, pair localization with the arithmetic-mean exponent, the
two-particle momentum and Hamiltonian operators and the 2D momentum
convolution.
"""

from dataclasses import dataclass

import numpy as np

from ..base_scenario import BaseScenario
from ..config import ScenarioConfig
from ..grid import Grid1D, central_first, forward_dft, relative_residual
from ..models import PhysicalConstants
from ..qm_multi import (
    PairReference,
    Statistics,
    TwoParticlePacket,
    convolve_pair_momentum,
    localize_pair,
    orthonormalize,
    pair_exponent,
    pair_hamiltonian_apply,
    pair_localization_commutes_check,
    pair_momentum_apply,
    pair_momentum_representation,
    product_state,
    separable_potential,
    slater_combine,
)
from ..qm_single import WavePacket, hamiltonian_apply, harmonic_potential, localize_packet
from ..scaling_field import FieldSpec
from ..services.inputs import build_field, build_packet, build_pair_potential
from ._common import (
    CONVERGENCE_TOLERANCE,
    SMOOTH_FIELD,
    convergence,
    max_abs_difference,
    require_closed_form,
)

PAIR_DEFAULTS: dict = {
    **SMOOTH_FIELD,
    "grid": {"n": 256, "dz": 0.078125},
    "pair_potential": {"kind": "coulomb", "strength": 1.0, "softening": 1.0},
}


@dataclass
class PairInputs:
    cfg: ScenarioConfig
    grid: Grid1D
    field: FieldSpec
    orbitals: tuple[WavePacket, WavePacket]
    state: TwoParticlePacket
    potential: np.ndarray | None
    constants: PhysicalConstants
    ref: PairReference


def _exchange_residual(p: TwoParticlePacket) -> float:
    scale = float(np.max(np.abs(p.amplitudes)))
    return p.exchange_asymmetry() / scale if scale else p.exchange_asymmetry()


class PairScenario(BaseScenario):
    """Two-particle localization and operator identities"""

    SCENARIO_NAME = "pair"
    DESCRIPTION = "Slater states, pair localization, pair operators and 2D momentum kernel"
    ORDER = 70
    CONFIG = PAIR_DEFAULTS

    CHECKS = {
        "pair.fermion_antisymmetry": "psi_F(z, z') = -psi_F(z', z)",
        "pair.boson_symmetry": "psi_B(z, z') = psi_B(z', z)",
        "pair.pauli_exclusion": "Slater_F(phi, phi) = 0",
        "pair.orthonormal_orbitals": "<phi_i|phi_j> = delta_ij, |psi_F|^2 = 1",
        "pair.coincident_exponent": "gamma_2(z, z) = gamma(z)",
        "pair.localize_formula": "psi_{g,v,w} = exp(gamma_2(z, z') - gamma_2(z_v, z_w)) psi",
        "pair.g1_identity": "g = 1: psi_{g,v,w} = psi",
        "pair.product_factorization": "product states localize with exp(gamma/2) per particle",
        "pair.statistics_preserved": "localization keeps exchange symmetry",
        "pair.momentum_intertwining_order2": "-i hbar (d_1 + d_2)(e^gamma_2 psi) = e^gamma_2 (p~_1 + p~_2) psi, O(h^2)",
        "pair.commutes_order2": "(H~ psi)_{g,v,w} = H~_{v,w} psi_{g,v,w}, residual O(h^2)",
        "pair.separable_factorization": "H~ (phi_1 phi_2) = (H~_1 phi_1) phi_2 + phi_1 (H~_1 phi_2) with Gamma/2",
        "pair.convolution_2d": "psi^_{g,v,w} = e^{-gamma_2(z_v, z_w)}/L^2 sum G(p-p', q-q') psi^(p', q')",
        "pair.g1_plain_dft": "g = 1: psi^_{g,v,w} = 2D DFT of psi",
    }
    DEFAULT_TOLERANCES = {
        "pair.fermion_antisymmetry": 0.0,
        "pair.boson_symmetry": 0.0,
        "pair.pauli_exclusion": 1e-15,
        "pair.orthonormal_orbitals": 1e-12,
        "pair.coincident_exponent": 0.0,
        "pair.localize_formula": 1e-13,
        "pair.g1_identity": 0.0,
        "pair.product_factorization": 1e-13,
        "pair.statistics_preserved": 1e-14,
        "pair.momentum_intertwining_order2": CONVERGENCE_TOLERANCE,
        "pair.commutes_order2": CONVERGENCE_TOLERANCE,
        "pair.separable_factorization": 1e-12,
        "pair.convolution_2d": 1e-10,
        "pair.g1_plain_dft": 0.0,
    }

    def prepare(self, cfg: ScenarioConfig) -> PairInputs:
        require_closed_form(cfg, self.SCENARIO_NAME)
        grid = cfg.grid.build()
        constants = cfg.constants.build()
        ref = cfg.pair_reference.build()
        ref.validate(grid)
        orbitals = self._orbitals_on(cfg, grid)
        return PairInputs(
            cfg=cfg,
            grid=grid,
            field=build_field(cfg.field, grid, self._input_repo),
            orbitals=orbitals,
            state=slater_combine(*orbitals, cfg.pair_reference.statistics),
            potential=build_pair_potential(cfg.pair_potential, grid, constants),
            constants=constants,
            ref=ref,
        )

    def _orbitals_on(self, cfg: ScenarioConfig, grid: Grid1D) -> tuple[WavePacket, WavePacket]:
        return orthonormalize(
            build_packet(cfg.packet, grid, self._input_repo),
            build_packet(cfg.packet2, grid, self._input_repo),
        )

    def _state_on(self, prepared: PairInputs, grid: Grid1D) -> TwoParticlePacket:
        return slater_combine(*self._orbitals_on(prepared.cfg, grid), prepared.cfg.pair_reference.statistics)

    def run_checks(self, prepared: PairInputs) -> None:
        grid, f, p, ref, c = prepared.grid, prepared.field, prepared.state, prepared.ref, prepared.constants
        phi1, phi2 = prepared.orbitals

        self._check(
            "pair.fermion_antisymmetry",
            lambda: _exchange_residual(slater_combine(phi1, phi2, Statistics.FERMION)),
        )
        self._check(
            "pair.boson_symmetry",
            lambda: _exchange_residual(slater_combine(phi1, phi2, Statistics.BOSON)),
        )
        self._check("pair.pauli_exclusion", lambda: self._pauli(phi1))
        self._check("pair.orthonormal_orbitals", lambda: self._orthonormal(prepared))
        self._check(
            "pair.coincident_exponent",
            lambda: max_abs_difference(np.diagonal(pair_exponent(f, grid)), f.gamma_on(grid)),
        )
        self._check("pair.localize_formula", lambda: self._localize_formula(prepared))
        self._check(
            "pair.g1_identity",
            lambda: max_abs_difference(localize_pair(p, FieldSpec.zero(), ref).amplitudes, p.amplitudes),
        )
        self._check("pair.product_factorization", lambda: self._product_factorization(prepared))
        self._check(
            "pair.statistics_preserved",
            lambda: max(
                _exchange_residual(localize_pair(slater_combine(phi1, phi2, statistics), f, ref))
                for statistics in (Statistics.FERMION, Statistics.BOSON)
            ),
        )

        def momentum_intertwining(g: Grid1D) -> float:
            state = self._state_on(prepared, g)
            weight = np.exp(pair_exponent(f, g))
            weighted = weight * state.amplitudes
            lhs = -1j * c.hbar * (central_first(weighted, g.dz, axis=0) + central_first(weighted, g.dz, axis=1))
            rhs = weight * pair_momentum_apply(state, f, c).amplitudes
            return relative_residual(lhs - rhs, state.amplitudes, g.dz)

        def commutation(g: Grid1D) -> float:
            potential = build_pair_potential(prepared.cfg.pair_potential, g, c)
            return pair_localization_commutes_check(self._state_on(prepared, g), f, potential, ref, c)

        self._check("pair.momentum_intertwining_order2", lambda: convergence(momentum_intertwining, grid))
        self._check("pair.commutes_order2", lambda: convergence(commutation, grid))
        self._check("pair.separable_factorization", lambda: self._separable(prepared))
        self._check(
            "pair.convolution_2d",
            lambda: self._convolution(prepared),
        )
        self._check(
            "pair.g1_plain_dft",
            lambda: max_abs_difference(
                pair_momentum_representation(p, FieldSpec.zero(), ref),
                forward_dft(p.amplitudes, grid, axes=(0, 1)),
            ),
        )

        rho1, rho2 = localize_pair(p, f, ref).marginals()
        self._add_artifact(
            "pair_marginals",
            ["z", "rho1", "rho2"],
            [[float(z), float(a), float(b)] for z, a, b in zip(grid.z, rho1, rho2)],
        )

    @staticmethod
    def _pauli(phi: WavePacket) -> float:
        scale = float(np.max(np.abs(product_state(phi, phi).amplitudes)))
        return float(np.max(np.abs(slater_combine(phi, phi, Statistics.FERMION).amplitudes))) / scale

    @staticmethod
    def _orthonormal(prepared: PairInputs) -> float:
        phi1, phi2 = prepared.orbitals
        dz = prepared.grid.dz
        gram = [
            abs(np.vdot(phi1.amplitudes, phi1.amplitudes) * dz - 1.0),
            abs(np.vdot(phi2.amplitudes, phi2.amplitudes) * dz - 1.0),
            abs(np.vdot(phi1.amplitudes, phi2.amplitudes) * dz),
            abs(prepared.state.norm_squared() - 1.0),
        ]
        return float(max(gram))

    @staticmethod
    def _localize_formula(prepared: PairInputs) -> float:
        grid, f, p, ref = prepared.grid, prepared.field, prepared.state, prepared.ref
        gamma = f.gamma_on(grid)
        iv, iw = ref.validate(grid)
        expected = np.exp(pair_exponent(f, grid) - (gamma[iv] + gamma[iw]) / 2) * p.amplitudes
        return relative_residual(localize_pair(p, f, ref).amplitudes - expected, expected, grid.dz)

    @staticmethod
    def _product_factorization(prepared: PairInputs) -> float:
        grid, f, ref = prepared.grid, prepared.field, prepared.ref
        phi1, phi2 = prepared.orbitals
        half = f.scaled(0.5)
        expected = np.outer(
            localize_packet(phi1, half, ref.v).amplitudes,
            localize_packet(phi2, half, ref.w).amplitudes,
        )
        localized = localize_pair(product_state(phi1, phi2), f, ref).amplitudes
        return relative_residual(localized - expected, expected, grid.dz)

    @staticmethod
    def _separable(prepared: PairInputs) -> float:
        """Harmonic V(z) + V(z') so that the pair Hamiltonian splits per particle"""
        grid, f, c = prepared.grid, prepared.field, prepared.constants
        phi1, phi2 = prepared.orbitals
        V = harmonic_potential(grid, prepared.cfg.pair_potential.omega, c)
        half = f.scaled(0.5)
        combined = pair_hamiltonian_apply(product_state(phi1, phi2), f, separable_potential(V), c).amplitudes
        split = np.outer(hamiltonian_apply(phi1, half, V, c).amplitudes, phi2.amplitudes) + np.outer(
            phi1.amplitudes, hamiltonian_apply(phi2, half, V, c).amplitudes
        )
        return relative_residual(combined - split, split, grid.dz)

    @staticmethod
    def _convolution(prepared: PairInputs) -> float:
        grid, f, p, ref = prepared.grid, prepared.field, prepared.state, prepared.ref
        localized_hat = pair_momentum_representation(p, f, ref)
        convolved = convolve_pair_momentum(f, forward_dft(p.amplitudes, grid, axes=(0, 1)), grid, ref)
        return relative_residual(convolved - localized_hat, localized_hat, grid.dz)
