"""
Localization Scenario

Localization of a single packet into the fiber of a reference point,
reference translation, and the scaling-field identities behind them:
connection cocycle, coincident and permuted multi-point exponents,
chart lifts and the order of the sampled gradient.
"""

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from ..base_scenario import BaseScenario
from ..config import ScenarioConfig
from ..exceptions import GridError
from ..grid import Grid1D, relative_residual
from ..models import ValidationResult
from ..qm_single import WavePacket, localize_packet, translate_reference
from ..scaling_field import (
    FieldSpec,
    Profile,
    ProfileKind,
    connection_ratio,
    gamma_at,
    gradient_Gamma,
    lift_to_chart,
    n_point_gamma,
    pair_gamma,
)
from ..services.inputs import build_field, build_packet
from ._common import (
    CONVERGENCE_TOLERANCE,
    SMOOTH_FIELD,
    convergence,
    max_abs_difference,
    pure_phase,
)


@dataclass
class LocalizeInputs:
    grid: Grid1D
    field: FieldSpec
    packet: WavePacket
    x: float
    w: float


def _gradient_reference_field(f: FieldSpec, grid: Grid1D) -> FieldSpec:
    """The configured field when closed-form, a periodic sine otherwise"""
    if f.is_closed_form:
        return f
    wavenumber = 2 * np.pi * 2 / grid.length
    return FieldSpec.closed_form(Profile(ProfileKind.SINE, amplitude=1.0, wavenumber=wavenumber))


def _gradient_error(f: FieldSpec, grid: Grid1D) -> float:
    numerical = gradient_Gamma(f, grid, numerical=True).gamma
    return float(np.max(np.abs(numerical - f.analytic_gradient(grid.z))))


class LocalizeScenario(BaseScenario):
    """Single-packet localization identities"""

    SCENARIO_NAME = "localize"
    DESCRIPTION = "Localized packets, reference translation and field exponents"
    ORDER = 30
    CONFIG = SMOOTH_FIELD

    CHECKS = {
        "localize.identity_g1": "g = 1: psi_{g,x} = psi",
        "localize.pure_phase_modulus": "alpha = 0: |psi_{g,x}(z)| = |psi(z)|",
        "localize.spike": "psi = delta_{z0}: psi_{g,x}(z0) = exp(gamma(z0) - gamma(z_x))",
        "localize.translate_roundtrip": "M(x,w) M(w,x) psi_{g,x} = psi_{g,x}",
        "localize.translate_direct": "M(w,x) psi_{g,x} = psi_{g,w}",
        "localize.translate_argmax": "argmax |psi_{g,w}| = argmax |psi_{g,x}|",
        "localize.connection_cocycle": "C(x,y) C(y,w) = C(x,w), C(x,y) = exp(gamma(y) - gamma(x))",
        "localize.pair_coincident": "gamma_2(x,x) = gamma(x)",
        "localize.n_point_consistency": "gamma_n over (x,y) = gamma_2(x,y)",
        "localize.n_point_permutation": "gamma_n invariant under permutation of points",
        "localize.chart_lift": "g_x(z_y) = g(y), lifts share samples and Gamma",
        "localize.gradient_order2": "Gamma = d gamma/dz, central differences of order h^2",
    }
    DEFAULT_TOLERANCES = {
        "localize.identity_g1": 0.0,
        "localize.pure_phase_modulus": 1e-14,
        "localize.spike": 1e-14,
        "localize.translate_roundtrip": 1e-13,
        "localize.translate_direct": 1e-13,
        "localize.translate_argmax": 0.0,
        "localize.connection_cocycle": 1e-12,
        "localize.pair_coincident": 0.0,
        "localize.n_point_consistency": 0.0,
        "localize.n_point_permutation": 0.0,
        "localize.chart_lift": 0.0,
        "localize.gradient_order2": CONVERGENCE_TOLERANCE,
    }

    def prepare(self, cfg: ScenarioConfig) -> LocalizeInputs:
        grid = cfg.grid.build()
        return LocalizeInputs(
            grid=grid,
            field=build_field(cfg.field, grid, self._input_repo),
            packet=build_packet(cfg.packet, grid, self._input_repo),
            x=cfg.references.x,
            w=cfg.references.w,
        )

    def validate_input(self, prepared: LocalizeInputs) -> ValidationResult:
        """Both reference points must be grid nodes"""
        result = ValidationResult(is_valid=True)
        for key, point in (("references.x", prepared.x), ("references.w", prepared.w)):
            try:
                prepared.grid.index_of(point)
            except GridError as e:
                result.add_error(f"{key}: {e}")
        return result

    def run_checks(self, prepared: LocalizeInputs) -> None:
        grid, f, psi, x, w = prepared.grid, prepared.field, prepared.packet, prepared.x, prepared.w
        y = float(grid.z[grid.n // 4])

        self._check(
            "localize.identity_g1",
            lambda: max_abs_difference(localize_packet(psi, FieldSpec.zero(), x).amplitudes, psi.amplitudes),
        )
        self._check(
            "localize.pure_phase_modulus",
            lambda: max_abs_difference(
                np.abs(localize_packet(psi, pure_phase(f, grid), x).amplitudes), np.abs(psi.amplitudes)
            ),
        )
        self._check("localize.spike", lambda: self._spike(prepared))

        localized = localize_packet(psi, f, x)
        self._check(
            "localize.translate_roundtrip",
            lambda: relative_residual(
                translate_reference(translate_reference(localized, w), x).amplitudes - localized.amplitudes,
                localized.amplitudes,
                grid.dz,
            ),
        )
        self._check(
            "localize.translate_direct",
            lambda: relative_residual(
                translate_reference(localized, w).amplitudes - localize_packet(psi, f, w).amplitudes,
                localized.amplitudes,
                grid.dz,
            ),
        )
        self._check(
            "localize.translate_argmax",
            lambda: float(
                np.argmax(np.abs(translate_reference(localized, w).amplitudes))
                != np.argmax(np.abs(localized.amplitudes))
            ),
        )
        self._check(
            "localize.connection_cocycle",
            lambda: abs(connection_ratio(f, x, y) * connection_ratio(f, y, w) - connection_ratio(f, x, w))
            / abs(connection_ratio(f, x, w)),
        )
        self._check("localize.pair_coincident", lambda: abs(pair_gamma(f, x, x) - gamma_at(f, x)))
        self._check(
            "localize.n_point_consistency",
            lambda: abs(n_point_gamma(f, [x, y]) - pair_gamma(f, x, y)),
        )
        self._check(
            "localize.n_point_permutation",
            lambda: max(
                abs(n_point_gamma(f, list(order)) - n_point_gamma(f, [x, y, w]))
                for order in permutations([x, y, w])
            ),
        )
        self._check("localize.chart_lift", lambda: self._chart_lift(prepared))

        reference_field = _gradient_reference_field(f, grid)
        self._check(
            "localize.gradient_order2",
            lambda: convergence(lambda g: _gradient_error(reference_field, g), grid),
        )

        self._add_packet_artifact("localize_packet", grid.z, psi.amplitudes)
        self._add_packet_artifact("localize_x", grid.z, localized.amplitudes)
        self._add_packet_artifact("localize_w", grid.z, translate_reference(localized, w).amplitudes)

    @staticmethod
    def _spike(prepared: LocalizeInputs) -> float:
        grid, f = prepared.grid, prepared.field
        index = grid.index_of(prepared.w)
        spike = np.zeros(grid.n, dtype=complex)
        spike[index] = 1.0
        localized = localize_packet(WavePacket(spike, grid), f, prepared.x).amplitudes
        gamma = f.gamma_on(grid)
        expected = np.exp(gamma[index] - gamma[grid.index_of(prepared.x)])
        others = np.delete(localized, index)
        return max(abs(localized[index] - expected) / abs(expected), float(np.max(np.abs(others))))

    @staticmethod
    def _chart_lift(prepared: LocalizeInputs) -> float:
        grid, f, x, w = prepared.grid, prepared.field, prepared.x, prepared.w
        at_x, at_w = lift_to_chart(f, x), lift_to_chart(f, w)
        gamma = f.gamma_on(grid)
        index = grid.index_of(w)
        read_back = abs(np.exp(at_x.gamma_on(grid))[index] - np.exp(gamma)[index])
        samples = max_abs_difference(at_x.gamma_on(grid), at_w.gamma_on(grid))
        gradients = max_abs_difference(gradient_Gamma(at_x, grid).gamma, gradient_Gamma(f, grid).gamma)
        return max(read_back, samples, gradients)
