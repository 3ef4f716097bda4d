"""
Single-Particle Quantum Mechanics with a Scaling Field

Wave packets on a periodic Grid1D, localization into the fiber of a
reference point, the covariant derivative D = d + Gamma, the canonical
momentum -i*hbar*D, scaled and unscaled kinetic and Hamiltonian operators,
momentum-space kernels of exp(gamma) and Crank-Nicolson time evolution.

Nothing here renormalizes: the scaling field is not unitary, so norms
are reported and never restored.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy import fft
from scipy.sparse.linalg import splu

from .exceptions import DimensionMismatchError, IntegrationError
from .grid import (
    Grid1D,
    central_first,
    central_second,
    discrete_norm,
    forward_dft,
    inverse_dft,
    relative_residual,
)
from .models import PhysicalConstants
from .scaling_field import FieldSpec, gradient_derivative, gradient_Gamma

DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True, eq=False)
class WavePacket:
    """Complex amplitudes over a grid; read-only and finite"""

    amplitudes: np.ndarray
    grid: Grid1D

    def __post_init__(self) -> None:
        amplitudes = np.array(self.amplitudes, dtype=complex)
        if amplitudes.shape != (self.grid.n,):
            raise DimensionMismatchError(
                f"Amplitudes have shape {amplitudes.shape}, grid expects ({self.grid.n},)"
            )
        if not np.all(np.isfinite(amplitudes)):
            raise DimensionMismatchError("Wave packet amplitudes must be finite")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    def norm_squared(self) -> float:
        """sum |psi|^2 * dz"""
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.grid.dz)

    def with_amplitudes(self, amplitudes: np.ndarray) -> "WavePacket":
        return WavePacket(amplitudes, self.grid)

    def __add__(self, other: "WavePacket") -> "WavePacket":
        _require_same_grid(self, other)
        return self.with_amplitudes(self.amplitudes + other.amplitudes)

    def __sub__(self, other: "WavePacket") -> "WavePacket":
        _require_same_grid(self, other)
        return self.with_amplitudes(self.amplitudes - other.amplitudes)

    def __rmul__(self, scalar: complex) -> "WavePacket":
        return self.with_amplitudes(scalar * self.amplitudes)


@dataclass(frozen=True, eq=False)
class LocalizedPacket:
    """Packet expressed in the fiber of the reference point x"""

    packet: WavePacket
    reference: float
    field: FieldSpec

    def __post_init__(self) -> None:
        self.packet.grid.index_of(self.reference)

    @property
    def amplitudes(self) -> np.ndarray:
        return self.packet.amplitudes

    @property
    def grid(self) -> Grid1D:
        return self.packet.grid


def _require_same_grid(a: WavePacket, b: WavePacket) -> None:
    if a.grid != b.grid:
        raise DimensionMismatchError("Packets live on different grids")


def norm_squared(psi: WavePacket) -> float:
    return psi.norm_squared()


# Packet and potential builders


def gaussian_packet(
    grid: Grid1D,
    center: float = 0.0,
    width: float = 1.0,
    k0: float = 0.0,
    normalize: bool = True,
) -> WavePacket:
    """(pi w^2)^(-1/4) exp(-(z-c)^2/(2w^2) + i k0 (z-c)), optionally normalized on the grid"""
    shifted = grid.z - center
    amplitudes = np.exp(-(shifted**2) / (2.0 * width**2) + 1j * k0 * shifted)
    amplitudes = amplitudes * (np.pi * width**2) ** -0.25
    if normalize:
        amplitudes = amplitudes / discrete_norm(amplitudes, grid.dz)
    return WavePacket(amplitudes, grid)


def plane_wave(grid: Grid1D, k: float) -> WavePacket:
    return WavePacket(np.exp(1j * k * grid.z), grid)


def harmonic_potential(
    grid: Grid1D,
    omega: float,
    c: PhysicalConstants = DEFAULT_CONSTANTS,
    center: float = 0.0,
) -> np.ndarray:
    """m omega^2 (z - center)^2 / 2"""
    return 0.5 * c.mass * omega**2 * (grid.z - center) ** 2


def harmonic_ground_state(
    grid: Grid1D,
    omega: float,
    c: PhysicalConstants = DEFAULT_CONSTANTS,
    center: float = 0.0,
) -> tuple[WavePacket, float]:
    """Ground state exp(-m omega (z-c)^2 / 2 hbar) and its energy hbar*omega/2"""
    width = np.sqrt(c.hbar / (c.mass * omega))
    return gaussian_packet(grid, center, width), 0.5 * c.hbar * omega


# Localization


def _gamma_with_reference(f: FieldSpec, grid: Grid1D, x: float) -> tuple[np.ndarray, complex]:
    gamma = f.gamma_on(grid)
    return gamma, gamma[grid.index_of(x)]


def localize_packet(psi: WavePacket, f: FieldSpec, x: float) -> LocalizedPacket:
    """psi_{g,x}(z) = exp(gamma(z) - gamma(z_x)) psi(z)"""
    gamma, gamma_x = _gamma_with_reference(f, psi.grid, x)
    amplitudes = np.exp(gamma - gamma_x) * psi.amplitudes
    return LocalizedPacket(psi.with_amplitudes(amplitudes), x, f)


def translate_reference(lp: LocalizedPacket, w: float) -> LocalizedPacket:
    """Move to the fiber of w: multiply by exp(gamma(z_x) - gamma(z_w)); support is unchanged"""
    gamma = lp.field.gamma_on(lp.grid)
    factor = np.exp(gamma[lp.grid.index_of(lp.reference)] - gamma[lp.grid.index_of(w)])
    return LocalizedPacket(lp.packet.with_amplitudes(factor * lp.amplitudes), w, lp.field)


# Operators


def covariant_derivative(psi: WavePacket, f: FieldSpec) -> WavePacket:
    """D psi = d psi + Gamma psi with central differences and periodic wrap"""
    derivative = central_first(psi.amplitudes, psi.grid.dz)
    gradient = gradient_Gamma(f, psi.grid).gamma
    return psi.with_amplitudes(derivative + gradient * psi.amplitudes)


def transport_quotient_derivative(psi: WavePacket, f: FieldSpec) -> WavePacket:
    """
    One-sided derivative that first transports psi(z+h) into the fiber at z:

        (exp(gamma(z+h) - gamma(z)) psi(z+h) - psi(z)) / h

    Agrees with covariant_derivative to first order in h.
    """
    gamma = f.gamma_on(psi.grid)
    transported = np.exp(np.roll(gamma, -1) - gamma) * np.roll(psi.amplitudes, -1)
    return psi.with_amplitudes((transported - psi.amplitudes) / psi.grid.dz)


def canonical_momentum_apply(
    psi: WavePacket,
    f: FieldSpec,
    c: PhysicalConstants = DEFAULT_CONSTANTS,
) -> WavePacket:
    """p~ psi = -i hbar D psi"""
    return psi.with_amplitudes(-1j * c.hbar * covariant_derivative(psi, f).amplitudes)


def scaled_kinetic_apply(
    psi: WavePacket,
    f: FieldSpec,
    c: PhysicalConstants = DEFAULT_CONSTANTS,
) -> WavePacket:
    """K~ psi = (-hbar^2/2m) [d^2 psi + (d Gamma) psi + 2 Gamma d psi + Gamma^2 psi]"""
    grid = psi.grid
    amplitudes = psi.amplitudes
    gradient = gradient_Gamma(f, grid).gamma
    bracket = (
        central_second(amplitudes, grid.dz)
        + gradient_derivative(f, grid) * amplitudes
        + 2.0 * gradient * central_first(amplitudes, grid.dz)
        + gradient**2 * amplitudes
    )
    return psi.with_amplitudes(c.kinetic_prefactor * bracket)


def _plain_kinetic(psi: WavePacket, c: PhysicalConstants) -> np.ndarray:
    return c.kinetic_prefactor * central_second(psi.amplitudes, psi.grid.dz)


def _require_potential(V: np.ndarray | None, grid: Grid1D) -> np.ndarray:
    if V is None:
        return np.zeros(grid.n)
    V = np.asarray(V, dtype=float)
    if V.shape != (grid.n,):
        raise DimensionMismatchError(f"Potential has shape {V.shape}, grid expects ({grid.n},)")
    return V


def hamiltonian_apply(
    psi: WavePacket,
    f: FieldSpec,
    V: np.ndarray | None,
    c: PhysicalConstants = DEFAULT_CONSTANTS,
    scaled: bool = True,
) -> WavePacket:
    """H~^x = K~^x + V when scaled, H~_x = K~_x + V (Gamma dropped) otherwise"""
    V = _require_potential(V, psi.grid)
    if scaled:
        kinetic = scaled_kinetic_apply(psi, f, c).amplitudes
    else:
        kinetic = _plain_kinetic(psi, c)
    return psi.with_amplitudes(kinetic + V * psi.amplitudes)


def potential_apply(psi: WavePacket, V: np.ndarray | None) -> WavePacket:
    return psi.with_amplitudes(_require_potential(V, psi.grid) * psi.amplitudes)


def localization_commutes_check(
    psi: WavePacket,
    f: FieldSpec,
    V: np.ndarray | None,
    x: float,
    c: PhysicalConstants = DEFAULT_CONSTANTS,
    include_kinetic: bool = True,
) -> float:
    """
    ||localize(H~^x psi) - H~_x(localize psi)|| / ||psi||.

    With include_kinetic=False only the potential is applied on both sides.
    """
    if include_kinetic:
        scaled_side = hamiltonian_apply(psi, f, V, c, scaled=True)
        localized = localize_packet(psi, f, x).packet
        plain_side = hamiltonian_apply(localized, f, V, c, scaled=False)
    else:
        scaled_side = potential_apply(psi, V)
        plain_side = potential_apply(localize_packet(psi, f, x).packet, V)
    lhs = localize_packet(scaled_side, f, x).amplitudes
    return relative_residual(lhs - plain_side.amplitudes, psi.amplitudes, psi.grid.dz)


# Momentum space


def kernel_offsets(grid: Grid1D) -> np.ndarray:
    """Momentum-difference offsets m = -(n-1)..(n-1) indexing kernel vectors"""
    return np.arange(-(grid.n - 1), grid.n)


def kernel_from_samples(samples: np.ndarray, grid: Grid1D) -> np.ndarray:
    """<p|F|q> = dz sum_z exp(-i(p-q)z/hbar) F(z) for every lattice difference p-q"""
    offsets = kernel_offsets(grid)
    transformed = fft.fft(samples)
    return grid.dz * grid.momentum_phase(offsets) * transformed[offsets % grid.n]


def momentum_kernel(f: FieldSpec, grid: Grid1D) -> np.ndarray:
    """
    Momentum matrix elements of exp(gamma), indexed by momentum difference.

    Index i holds the entry for p - q = 2*pi*hbar*(i - n + 1)/L. With
    gamma = 0 the kernel is L at zero difference and 0 elsewhere.
    """
    return kernel_from_samples(np.exp(f.gamma_on(grid)), grid)


def linearized_kernel(f: FieldSpec, grid: Grid1D) -> np.ndarray:
    """Kernel of 1 + gamma: L*delta plus the transform of gamma"""
    return kernel_from_samples(1.0 + f.gamma_on(grid), grid)


def momentum_representation(lp: LocalizedPacket) -> np.ndarray:
    """DFT of the localized amplitudes on the ascending momentum lattice"""
    return forward_dft(lp.amplitudes, lp.grid)


def kernel_toeplitz(kernel: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Dense matrix T[p, q] = K(p - q) on the ascending momentum lattice"""
    k = np.arange(grid.n)
    return kernel[(k[:, None] - k[None, :]) + grid.n - 1]


def convolve_momentum(kernel: np.ndarray, psi_hat: np.ndarray, grid: Grid1D) -> np.ndarray:
    """(1/L) sum_q K(p - q) psi_hat(q), evaluated as a dense Toeplitz product"""
    return kernel_toeplitz(kernel, grid) @ psi_hat / grid.length


# Time evolution


def _shift_matrix(n: int) -> sp.csr_matrix:
    """(S psi)[j] = psi[j+1] with periodic wrap"""
    return sp.diags([np.ones(n - 1), np.ones(1)], [1, -(n - 1)], shape=(n, n), format="csr")


def hamiltonian_matrix(
    grid: Grid1D,
    f: FieldSpec,
    V: np.ndarray | None,
    c: PhysicalConstants = DEFAULT_CONSTANTS,
    scaled: bool = True,
) -> sp.csr_matrix:
    """Sparse matrix of the same stencil hamiltonian_apply uses"""
    V = _require_potential(V, grid)
    shift = _shift_matrix(grid.n)
    back = shift.T.tocsr()
    identity = sp.identity(grid.n, dtype=complex, format="csr")
    first = (shift - back) / (2.0 * grid.dz)
    second = (shift - 2.0 * identity + back) / grid.dz**2

    operator = second
    if scaled:
        gradient = gradient_Gamma(f, grid).gamma
        operator = (
            second
            + sp.diags(gradient_derivative(f, grid))
            + 2.0 * sp.diags(gradient) @ first
            + sp.diags(gradient**2)
        )
    return (c.kinetic_prefactor * operator + sp.diags(V.astype(complex))).tocsr()


class CrankNicolsonPropagator:
    """
    (I + i dt H / 2hbar) psi_{n+1} = (I - i dt H / 2hbar) psi_n

    The left-hand matrix is factorized once; H may be non-Hermitian.
    """

    def __init__(self, hamiltonian: sp.spmatrix, dt: float, c: PhysicalConstants = DEFAULT_CONSTANTS):
        if not dt > 0:
            raise IntegrationError(f"Time step must be positive, got {dt}")
        n = hamiltonian.shape[0]
        identity = sp.identity(n, dtype=complex, format="csc")
        half_step = 0.5j * dt / c.hbar * sp.csc_matrix(hamiltonian)
        self.dt = dt
        self._explicit = (identity - half_step).tocsr()
        try:
            self._implicit = splu((identity + half_step).tocsc())
        except RuntimeError as e:
            raise IntegrationError(f"Crank-Nicolson matrix is singular: {e}") from e

    def step(self, amplitudes: np.ndarray) -> np.ndarray:
        result = self._implicit.solve(self._explicit @ amplitudes)
        if not np.all(np.isfinite(result)):
            raise IntegrationError("Non-finite amplitudes after Crank-Nicolson step")
        return result


def evolve(
    psi: WavePacket,
    f: FieldSpec,
    V: np.ndarray | None,
    c: PhysicalConstants,
    dt: float,
    steps: int,
    scaled: bool = True,
) -> WavePacket:
    """Crank-Nicolson evolution of i hbar d_t psi = H psi for `steps` steps"""
    propagator = CrankNicolsonPropagator(hamiltonian_matrix(psi.grid, f, V, c, scaled), dt, c)
    amplitudes = np.array(psi.amplitudes)
    for _ in range(steps):
        amplitudes = propagator.step(amplitudes)
    return psi.with_amplitudes(amplitudes)


def norm_history(
    psi: WavePacket,
    f: FieldSpec,
    V: np.ndarray | None,
    c: PhysicalConstants,
    dt: float,
    steps: int,
    scaled: bool = True,
) -> np.ndarray:
    """norm^2 before the first step and after every step"""
    propagator = CrankNicolsonPropagator(hamiltonian_matrix(psi.grid, f, V, c, scaled), dt, c)
    amplitudes = np.array(psi.amplitudes)
    norms = [psi.norm_squared()]
    for _ in range(steps):
        amplitudes = propagator.step(amplitudes)
        norms.append(float(np.sum(np.abs(amplitudes) ** 2) * psi.grid.dz))
    return np.array(norms)


def free_gaussian_reference(
    grid: Grid1D,
    center: float,
    width: float,
    k0: float,
    t: float,
    c: PhysicalConstants = DEFAULT_CONSTANTS,
) -> WavePacket:
    """Closed-form free evolution of the continuum Gaussian built by gaussian_packet(normalize=False)"""
    spread = 1.0 + 1j * c.hbar * t / (c.mass * width**2)
    shifted = grid.z - center
    exponent = (
        -(shifted**2) / (2.0 * width**2) + 1j * k0 * shifted - 1j * c.hbar * k0**2 * t / (2.0 * c.mass)
    ) / spread
    amplitudes = (np.pi * width**2) ** -0.25 / np.sqrt(spread) * np.exp(exponent)
    return WavePacket(amplitudes, grid)


def lattice_free_propagation(psi: WavePacket, t: float, c: PhysicalConstants = DEFAULT_CONSTANTS) -> WavePacket:
    """Exact free evolution under the central-difference kinetic operator, done in momentum space"""
    grid = psi.grid
    k = grid.momenta(c.hbar) / c.hbar
    energy = c.hbar**2 / c.mass * (1.0 - np.cos(k * grid.dz)) / grid.dz**2
    psi_hat = forward_dft(psi.amplitudes, grid)
    return psi.with_amplitudes(inverse_dft(np.exp(-1j * energy * t / c.hbar) * psi_hat, grid))
