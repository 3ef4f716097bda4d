"""
Momentum Scenario

Momentum-space picture of a localized packet: the kernel of exp(gamma)
on the lattice of momentum differences, the convolution it induces and
its first-order expansion for weak fields.
"""

from dataclasses import dataclass

import numpy as np

from ..base_scenario import BaseScenario
from ..config import ScenarioConfig
from ..grid import Grid1D, forward_dft, relative_residual
from ..models import PhysicalConstants
from ..qm_single import (
    WavePacket,
    convolve_momentum,
    linearized_kernel,
    localize_packet,
    momentum_kernel,
    momentum_representation,
)
from ..scaling_field import FieldSpec
from ..services.inputs import build_field, build_packet
from ._common import SMOOTH_FIELD, max_abs_difference

WEAK_FIELD_SCALES = (1e-2, 1e-3)


@dataclass
class MomentumInputs:
    grid: Grid1D
    field: FieldSpec
    packet: WavePacket
    constants: PhysicalConstants
    x: float


class MomentumScenario(BaseScenario):
    """Momentum kernel and convolution identities"""

    SCENARIO_NAME = "momentum"
    DESCRIPTION = "Momentum kernel of exp(gamma) and the localized momentum representation"
    ORDER = 50
    CONFIG = SMOOTH_FIELD

    CHECKS = {
        "momentum.kernel_delta": "gamma = 0: <p|e^gamma|q> = L delta_{pq}",
        "momentum.convolution": "psi^_{g,x}(p) = e^{-gamma(z_x)}/L sum_q <p|e^gamma|q> psi^(q)",
        "momentum.first_order_scaling": "<p|e^{eps gamma}|q> - (L delta + eps gamma^) = O(eps^2)",
        "momentum.g1_plain_dft": "g = 1: psi^_{g,x} = psi^",
    }
    DEFAULT_TOLERANCES = {
        "momentum.kernel_delta": 1e-12,
        "momentum.convolution": 1e-10,
        "momentum.first_order_scaling": 1.0,
        "momentum.g1_plain_dft": 0.0,
    }

    def prepare(self, cfg: ScenarioConfig) -> MomentumInputs:
        grid = cfg.grid.build()
        grid.index_of(cfg.references.x)
        return MomentumInputs(
            grid=grid,
            field=build_field(cfg.field, grid, self._input_repo),
            packet=build_packet(cfg.packet, grid, self._input_repo),
            constants=cfg.constants.build(),
            x=cfg.references.x,
        )

    def run_checks(self, prepared: MomentumInputs) -> None:
        grid, f, psi, x = prepared.grid, prepared.field, prepared.packet, prepared.x
        localized = localize_packet(psi, f, x)
        psi_hat = momentum_representation(localized)

        self._check("momentum.kernel_delta", lambda: self._kernel_delta(grid))
        self._check("momentum.convolution", lambda: self._convolution(prepared, psi_hat))
        self._check("momentum.first_order_scaling", lambda: self._first_order(prepared))
        self._check(
            "momentum.g1_plain_dft",
            lambda: max_abs_difference(
                momentum_representation(localize_packet(psi, FieldSpec.zero(), x)),
                forward_dft(psi.amplitudes, grid),
            ),
        )

        momenta = grid.momenta(prepared.constants.hbar)
        self._add_artifact(
            "momentum_localized",
            ["p", "re", "im", "abs2"],
            [
                [float(p), float(value.real), float(value.imag), float(abs(value) ** 2)]
                for p, value in zip(momenta, psi_hat)
            ],
        )

    @staticmethod
    def _kernel_delta(grid: Grid1D) -> float:
        kernel = momentum_kernel(FieldSpec.zero(), grid)
        delta = np.zeros(kernel.shape, dtype=complex)
        delta[grid.n - 1] = grid.length
        return max_abs_difference(kernel, delta) / grid.length

    @staticmethod
    def _convolution(prepared: MomentumInputs, psi_hat: np.ndarray) -> float:
        grid, f = prepared.grid, prepared.field
        gamma_x = f.gamma_on(grid)[grid.index_of(prepared.x)]
        plain_hat = forward_dft(prepared.packet.amplitudes, grid)
        convolved = np.exp(-gamma_x) * convolve_momentum(momentum_kernel(f, grid), plain_hat, grid)
        return relative_residual(convolved - psi_hat, psi_hat, grid.dz)

    @staticmethod
    def _first_order(prepared: MomentumInputs) -> tuple[float, str]:
        """Error ratio between the two weak-field scales; 100 for a quadratic remainder"""
        grid, f = prepared.grid, prepared.field
        errors = []
        for scale in WEAK_FIELD_SCALES:
            weak = f.scaled(scale)
            errors.append(float(np.linalg.norm(momentum_kernel(weak, grid) - linearized_kernel(weak, grid))))
        expected = (WEAK_FIELD_SCALES[0] / WEAK_FIELD_SCALES[1]) ** 2
        ratio = errors[0] / errors[1]
        residual = max(ratio / expected, expected / ratio) - 1.0
        return residual, f"errors={errors[0]:.6e},{errors[1]:.6e} ratio={ratio:.4f}"
