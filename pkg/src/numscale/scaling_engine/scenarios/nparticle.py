"""
N-Particle Scenario

Rank-n localization for up to three particles with the n-point mean
exponent, its agreement with the one- and two-particle forms and the
size cap on the product grid.
"""

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from ..base_scenario import BaseScenario
from ..config import ScenarioConfig
from ..exceptions import SizeLimitError
from ..grid import Grid1D, relative_residual
from ..qm_multi import (
    MAX_PARTICLES,
    MAX_TOTAL_POINTS,
    PairReference,
    TwoParticlePacket,
    localize_n,
    localize_pair,
)
from ..qm_single import WavePacket, localize_packet
from ..scaling_field import FieldSpec
from ..services.inputs import build_field
from ._common import SMOOTH_FIELD, max_abs_difference


@dataclass
class NParticleInputs:
    grid: Grid1D
    field: FieldSpec
    amplitudes: np.ndarray
    refs: list[float]
    rng_seed: int


def _random_amplitudes(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


class NParticleScenario(BaseScenario):
    """Localization of states with up to three particles"""

    SCENARIO_NAME = "nparticle"
    DESCRIPTION = "Rank-n localization with the n-point geometric mean"
    ORDER = 80
    CONFIG = SMOOTH_FIELD

    CHECKS = {
        "nparticle.consistency_n1": "n = 1 agrees with single-particle localization",
        "nparticle.consistency_n2": "n = 2 agrees with pair localization",
        "nparticle.reference_permutation": "permuting the references leaves the result unchanged",
        "nparticle.axis_permutation": "L(psi o sigma, refs o sigma) = L(psi, refs) o sigma",
        "nparticle.g1_identity": "g = 1: localization is the identity",
        "nparticle.size_guard": "more than 3 particles or 2^20 points is rejected",
        "nparticle.rank_localization": "psi_g = exp(mean_j gamma(z_j) - mean_j gamma(r_j)) psi",
    }
    DEFAULT_TOLERANCES = {
        "nparticle.consistency_n1": 0.0,
        "nparticle.consistency_n2": 0.0,
        "nparticle.reference_permutation": 0.0,
        "nparticle.axis_permutation": 1e-14,
        "nparticle.g1_identity": 0.0,
        "nparticle.size_guard": 0.0,
        "nparticle.rank_localization": 1e-14,
    }

    def prepare(self, cfg: ScenarioConfig) -> NParticleInputs:
        settings = cfg.nparticle
        grid = Grid1D.centered(settings.per_axis, cfg.grid.build().length)
        defaults = [cfg.pair_reference.v, cfg.pair_reference.w, cfg.references.x]
        refs = list(settings.refs) if settings.refs is not None else defaults[: settings.n]
        if len(refs) != settings.n:
            raise ValueError(f"nparticle.refs has {len(refs)} entries for n={settings.n}")
        for ref in refs:
            grid.index_of(ref)
        rng = np.random.default_rng(cfg.seed)
        return NParticleInputs(
            grid=grid,
            field=build_field(cfg.field, grid, self._input_repo),
            amplitudes=_random_amplitudes(rng, (grid.n,) * settings.n),
            refs=refs,
            rng_seed=cfg.seed,
        )

    def run_checks(self, prepared: NParticleInputs) -> None:
        grid, f, amplitudes, refs = prepared.grid, prepared.field, prepared.amplitudes, prepared.refs
        rng = np.random.default_rng(prepared.rng_seed + 1)
        localized = localize_n(amplitudes, f, grid, refs)

        self._check("nparticle.consistency_n1", lambda: self._consistency_n1(prepared, rng))
        self._check("nparticle.consistency_n2", lambda: self._consistency_n2(prepared, rng))
        self._check(
            "nparticle.reference_permutation",
            lambda: max(
                max_abs_difference(localize_n(amplitudes, f, grid, list(order)), localized)
                for order in permutations(refs)
            ),
        )
        self._check("nparticle.axis_permutation", lambda: self._axis_permutation(prepared, localized))
        self._check(
            "nparticle.g1_identity",
            lambda: max_abs_difference(localize_n(amplitudes, FieldSpec.zero(), grid, refs), amplitudes),
        )
        self._check("nparticle.size_guard", lambda: self._size_guard(grid, f))
        self._check("nparticle.rank_localization", lambda: self._rank_localization(prepared, localized))

        density = np.abs(localized) ** 2
        marginal = density.sum(axis=tuple(range(1, density.ndim))) * grid.dz ** (density.ndim - 1)
        self._add_artifact(
            "nparticle_marginal",
            ["z", "rho1"],
            [[float(z), float(rho)] for z, rho in zip(grid.z, marginal)],
        )

    @staticmethod
    def _consistency_n1(prepared: NParticleInputs, rng: np.random.Generator) -> float:
        grid, f = prepared.grid, prepared.field
        x = prepared.refs[0]
        psi = WavePacket(_random_amplitudes(rng, (grid.n,)), grid)
        return max_abs_difference(localize_n(psi.amplitudes, f, grid, [x]), localize_packet(psi, f, x).amplitudes)

    @staticmethod
    def _consistency_n2(prepared: NParticleInputs, rng: np.random.Generator) -> float:
        grid, f = prepared.grid, prepared.field
        v, w = (prepared.refs * 2)[:2]
        p = TwoParticlePacket(_random_amplitudes(rng, (grid.n, grid.n)), grid)
        return max_abs_difference(
            localize_n(p.amplitudes, f, grid, [v, w]),
            localize_pair(p, f, PairReference(v=v, w=w)).amplitudes,
        )

    @staticmethod
    def _axis_permutation(prepared: NParticleInputs, localized: np.ndarray) -> float:
        grid, f, amplitudes, refs = prepared.grid, prepared.field, prepared.amplitudes, prepared.refs
        worst = 0.0
        for order in permutations(range(amplitudes.ndim)):
            permuted = localize_n(np.transpose(amplitudes, order), f, grid, [refs[axis] for axis in order])
            expected = np.transpose(localized, order)
            worst = max(worst, relative_residual(permuted - expected, expected, grid.dz))
        return worst

    @staticmethod
    def _size_guard(grid: Grid1D, f: FieldSpec) -> tuple[float, str | None]:
        """Count oversize inputs that were accepted"""
        per_axis = round(MAX_TOTAL_POINTS ** (1 / MAX_PARTICLES)) * 2
        oversize = {
            "rank 4": (np.broadcast_to(np.complex128(0), (grid.n,) * (MAX_PARTICLES + 1)), [0.0] * 4),
            f"{per_axis}^3 points": (
                np.broadcast_to(np.complex128(0), (per_axis,) * MAX_PARTICLES),
                [0.0] * MAX_PARTICLES,
            ),
        }
        accepted = []
        for label, (amplitudes, refs) in oversize.items():
            try:
                localize_n(amplitudes, f, grid, refs)
            except SizeLimitError:
                continue
            accepted.append(label)
        return float(len(accepted)), (f"accepted: {', '.join(accepted)}" if accepted else None)

    @staticmethod
    def _rank_localization(prepared: NParticleInputs, localized: np.ndarray) -> float:
        """Exponent assembled with an open mesh, independent of localize_n"""
        grid, f, amplitudes, refs = prepared.grid, prepared.field, prepared.amplitudes, prepared.refs
        gamma = f.gamma_on(grid)
        rank = amplitudes.ndim
        mesh = np.ix_(*([gamma] * rank))
        exponent = sum(mesh) / rank - np.mean([gamma[grid.index_of(r)] for r in refs])
        expected = np.exp(exponent) * amplitudes
        return relative_residual(localized - expected, expected, grid.dz)
