"""
Two-Particle and Small-n States

Entangled two-particle packets on the product grid, Slater
combinations, pair localization with the arithmetic-mean exponent
gamma_2(z, z') = (gamma(z) + gamma(z'))/2, pair momentum and Hamiltonian
operators with half of Gamma per particle, the two-particle momentum
convolution and rank-n localization for n <= 3.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import DimensionMismatchError, SizeLimitError
from .grid import Grid1D, central_first, central_second, discrete_norm, forward_dft, relative_residual
from .models import PhysicalConstants
from .qm_single import (
    DEFAULT_CONSTANTS,
    WavePacket,
    kernel_from_samples,
    kernel_toeplitz,
)
from .scaling_field import FieldSpec, gradient_derivative, gradient_Gamma, mean_exponent

MAX_PARTICLES = 3
MAX_TOTAL_POINTS = 2**20


class Statistics(str, Enum):
    """Exchange symmetry of a two-particle state"""

    FERMION = "fermion"
    BOSON = "boson"
    NONE = "none"


@dataclass(frozen=True, eq=False)
class TwoParticlePacket:
    """Amplitudes psi(z, z') on grid x grid with a statistics tag"""

    amplitudes: np.ndarray
    grid: Grid1D
    statistics: Statistics = Statistics.NONE

    def __post_init__(self) -> None:
        amplitudes = np.array(self.amplitudes, dtype=complex)
        expected = (self.grid.n, self.grid.n)
        if amplitudes.shape != expected:
            raise DimensionMismatchError(f"Pair amplitudes have shape {amplitudes.shape}, expected {expected}")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)
        object.__setattr__(self, "statistics", Statistics(self.statistics))

    def exchange_asymmetry(self) -> float:
        """max |psi(z,z') -/+ psi(z',z)| for the tagged statistics, 0 when untagged"""
        swapped = self.amplitudes.T
        match self.statistics:
            case Statistics.FERMION:
                return float(np.max(np.abs(self.amplitudes + swapped)))
            case Statistics.BOSON:
                return float(np.max(np.abs(self.amplitudes - swapped)))
        return 0.0

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.grid.dz**2)

    def marginals(self) -> tuple[np.ndarray, np.ndarray]:
        """Single-particle densities obtained by integrating out the other coordinate"""
        density = np.abs(self.amplitudes) ** 2
        return density.sum(axis=1) * self.grid.dz, density.sum(axis=0) * self.grid.dz

    def with_amplitudes(self, amplitudes: np.ndarray) -> "TwoParticlePacket":
        return TwoParticlePacket(amplitudes, self.grid, self.statistics)


@dataclass(frozen=True)
class PairReference:
    """Reference pair (v, w) of grid coordinates"""

    v: float
    w: float

    def validate(self, grid: Grid1D) -> tuple[int, int]:
        return grid.index_of(self.v), grid.index_of(self.w)


def product_state(psi1: WavePacket, psi2: WavePacket) -> TwoParticlePacket:
    """psi1(z) psi2(z')"""
    if psi1.grid != psi2.grid:
        raise DimensionMismatchError("Orbitals live on different grids")
    return TwoParticlePacket(np.outer(psi1.amplitudes, psi2.amplitudes), psi1.grid)


def orthonormalize(psi1: WavePacket, psi2: WavePacket) -> tuple[WavePacket, WavePacket]:
    """
    Gram-Schmidt on two orbitals with the inner product dz * sum conj(a) b.

    Raises:
        DimensionMismatchError: if the orbitals live on different grids
        ValueError: if an orbital vanishes or the two are linearly dependent
    """
    if psi1.grid != psi2.grid:
        raise DimensionMismatchError("Orbitals live on different grids")
    dz = psi1.grid.dz
    norm1 = discrete_norm(psi1.amplitudes, dz)
    if norm1 == 0.0:
        raise ValueError("Cannot orthonormalize a zero orbital")
    first = psi1.amplitudes / norm1
    overlap = np.vdot(first, psi2.amplitudes) * dz
    remainder = psi2.amplitudes - overlap * first
    norm2 = discrete_norm(remainder, dz)
    if norm2 <= 1e-12 * discrete_norm(psi2.amplitudes, dz):
        raise ValueError("Orbitals are linearly dependent")
    return psi1.with_amplitudes(first), psi2.with_amplitudes(remainder / norm2)


def slater_combine(psi1: WavePacket, psi2: WavePacket, statistics: Statistics) -> TwoParticlePacket:
    """
    (psi1(z) psi2(z') -/+ psi1(z') psi2(z)) / sqrt(2).

    Fermions take the minus sign, bosons the plus sign. The result is
    exactly antisymmetric or symmetric.
    """
    statistics = Statistics(statistics)
    direct = product_state(psi1, psi2).amplitudes
    match statistics:
        case Statistics.FERMION:
            combined = direct - direct.T
        case Statistics.BOSON:
            combined = direct + direct.T
        case _:
            raise ValueError("slater_combine needs fermion or boson statistics")
    packet = TwoParticlePacket(combined / np.sqrt(2.0), psi1.grid, statistics)
    if packet.exchange_asymmetry() != 0.0:
        raise ArithmeticError("Slater combination lost its exchange symmetry")
    return packet


# Localization


def _localize_axes(amplitudes: np.ndarray, gamma: np.ndarray, reference_gammas: Sequence[complex]) -> np.ndarray:
    """Multiply by exp((sum_j gamma(z_j))/n - mean of the reference exponents)"""
    rank = amplitudes.ndim
    exponent = np.zeros((1,) * rank, dtype=complex)
    for axis in range(rank):
        shape = [1] * rank
        shape[axis] = gamma.size
        exponent = exponent + gamma.reshape(shape) if axis else gamma.reshape(shape)
    exponent = exponent / rank - mean_exponent(reference_gammas)
    return np.exp(exponent) * amplitudes


def pair_exponent(f: FieldSpec, grid: Grid1D) -> np.ndarray:
    """gamma_2(z, z') over the product grid"""
    gamma = f.gamma_on(grid)
    return (gamma[:, None] + gamma[None, :]) / 2


def localize_pair(p: TwoParticlePacket, f: FieldSpec, ref: PairReference) -> TwoParticlePacket:
    """psi_{g,v,w}(z, z') = exp(gamma_2(z, z') - gamma_2(z_v, z_w)) psi(z, z')"""
    iv, iw = ref.validate(p.grid)
    gamma = f.gamma_on(p.grid)
    return p.with_amplitudes(_localize_axes(p.amplitudes, gamma, [gamma[iv], gamma[iw]]))


def localize_n(
    amplitudes: np.ndarray,
    f: FieldSpec,
    grid: Grid1D,
    refs: Sequence[float],
) -> np.ndarray:
    """
    Rank-n localization with the n-point mean exponent.

    Raises:
        SizeLimitError: for more than three axes or more than 2^20 points
        DimensionMismatchError: if refs or axis lengths do not match
    """
    amplitudes = np.asarray(amplitudes, dtype=complex)
    rank = amplitudes.ndim
    if not 1 <= rank <= MAX_PARTICLES:
        raise SizeLimitError(f"localize_n supports 1 to {MAX_PARTICLES} particles, got {rank}")
    if amplitudes.size > MAX_TOTAL_POINTS:
        raise SizeLimitError(f"{amplitudes.size} points exceed the cap of {MAX_TOTAL_POINTS}")
    if amplitudes.shape != (grid.n,) * rank:
        raise DimensionMismatchError(f"Amplitudes of shape {amplitudes.shape} do not match the grid")
    if len(refs) != rank:
        raise DimensionMismatchError(f"{len(refs)} references given for {rank} particles")
    gamma = f.gamma_on(grid)
    return _localize_axes(amplitudes, gamma, [gamma[grid.index_of(r)] for r in refs])


# Operators


def _half_gradient(f: FieldSpec, grid: Grid1D) -> np.ndarray:
    return gradient_Gamma(f, grid).gamma / 2


def pair_momentum_apply(
    p: TwoParticlePacket,
    f: FieldSpec,
    c: PhysicalConstants = DEFAULT_CONSTANTS,
) -> TwoParticlePacket:
    """(p~_1 + p~_2) psi with p~_j = -i hbar (d_j + Gamma(z_j)/2)"""
    dz = p.grid.dz
    half = _half_gradient(f, p.grid)
    derivatives = central_first(p.amplitudes, dz, axis=0) + central_first(p.amplitudes, dz, axis=1)
    connection = (half[:, None] + half[None, :]) * p.amplitudes
    return p.with_amplitudes(-1j * c.hbar * (derivatives + connection))


def _axis_kinetic(
    amplitudes: np.ndarray,
    f: FieldSpec,
    grid: Grid1D,
    axis: int,
    c: PhysicalConstants,
    scaled: bool,
) -> np.ndarray:
    second = central_second(amplitudes, grid.dz, axis=axis)
    if not scaled:
        return c.kinetic_prefactor * second
    shape = [1, 1]
    shape[axis] = grid.n
    half = _half_gradient(f, grid).reshape(shape)
    half_derivative = (gradient_derivative(f, grid) / 2).reshape(shape)
    bracket = (
        second
        + half_derivative * amplitudes
        + 2.0 * half * central_first(amplitudes, grid.dz, axis=axis)
        + half**2 * amplitudes
    )
    return c.kinetic_prefactor * bracket


def _require_pair_potential(V2: np.ndarray | None, grid: Grid1D) -> np.ndarray:
    if V2 is None:
        return np.zeros((grid.n, grid.n))
    V2 = np.asarray(V2, dtype=float)
    if V2.shape != (grid.n, grid.n):
        raise DimensionMismatchError(f"Pair potential has shape {V2.shape}, expected {(grid.n, grid.n)}")
    return V2


def pair_hamiltonian_apply(
    p: TwoParticlePacket,
    f: FieldSpec,
    V2: np.ndarray | None,
    c: PhysicalConstants = DEFAULT_CONSTANTS,
    scaled: bool = True,
) -> TwoParticlePacket:
    """K~_1 + K~_2 + V2, each kinetic term the scaled form with Gamma/2 (or Gamma dropped)"""
    V2 = _require_pair_potential(V2, p.grid)
    kinetic = _axis_kinetic(p.amplitudes, f, p.grid, 0, c, scaled) + _axis_kinetic(
        p.amplitudes, f, p.grid, 1, c, scaled
    )
    return p.with_amplitudes(kinetic + V2 * p.amplitudes)


def separable_potential(V: np.ndarray) -> np.ndarray:
    """V(z) + V(z')"""
    return V[:, None] + V[None, :]


def softened_coulomb(grid: Grid1D, strength: float, softening: float) -> np.ndarray:
    """strength / sqrt((z - z')^2 + softening^2)"""
    separation = grid.z[:, None] - grid.z[None, :]
    return strength / np.sqrt(separation**2 + softening**2)


def pair_localization_commutes_check(
    p: TwoParticlePacket,
    f: FieldSpec,
    V2: np.ndarray | None,
    ref: PairReference,
    c: PhysicalConstants = DEFAULT_CONSTANTS,
) -> float:
    """||localize_pair(H~^{v,w} psi) - H~_{v,w}(localize_pair psi)|| / ||psi||"""
    scaled_side = localize_pair(pair_hamiltonian_apply(p, f, V2, c, scaled=True), f, ref)
    plain_side = pair_hamiltonian_apply(localize_pair(p, f, ref), f, V2, c, scaled=False)
    return relative_residual(scaled_side.amplitudes - plain_side.amplitudes, p.amplitudes, p.grid.dz)


# Momentum space


def pair_kernel(f: FieldSpec, grid: Grid1D) -> np.ndarray:
    """
    Momentum kernel of exp(gamma_2) on the (2n-1) x (2n-1) lattice of differences.

    exp(gamma_2) factorizes into exp(gamma/2) per particle, so the kernel
    is the outer product of two single-particle kernels.
    """
    half = kernel_from_samples(np.exp(f.gamma_on(grid) / 2), grid)
    return np.outer(half, half)


def pair_momentum_representation(p: TwoParticlePacket, f: FieldSpec, ref: PairReference) -> np.ndarray:
    """2D DFT of the localized pair packet"""
    return forward_dft(localize_pair(p, f, ref).amplitudes, p.grid, axes=(0, 1))


def convolve_pair_momentum(
    f: FieldSpec,
    psi_hat: np.ndarray,
    grid: Grid1D,
    ref: PairReference,
) -> np.ndarray:
    """
    exp(-gamma_2(z_v, z_w)) / L^2 * sum_{p', q'} G(p - p', q - q') psi_hat(p', q').

    Evaluated with dense Toeplitz matrices of the per-particle kernels.
    """
    iv, iw = ref.validate(grid)
    gamma = f.gamma_on(grid)
    half = kernel_toeplitz(kernel_from_samples(np.exp(gamma / 2), grid), grid)
    reference = np.exp(-mean_exponent([gamma[iv], gamma[iw]]))
    return reference * (half @ psi_hat @ half.T) / grid.length**2
