"""
Periodic 1D Grids

Uniform periodic grids with power-of-two point counts, second-order
central differences and the discrete Fourier transform used for
momentum representations:

    psi_hat(p_k) = dz * sum_j exp(-i p_k z_j / hbar) psi(z_j)
    psi(z_j)     = (1/L) * sum_k exp(+i p_k z_j / hbar) psi_hat(p_k)

with p_k = 2*pi*hbar*k / L for k in [-n/2, n/2), stored in ascending order.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import fft

from .exceptions import GridError

MIN_POINTS = 8
NODE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Grid1D:
    """Periodic grid z_j = origin + j*dz, j = 0..n-1"""

    n: int
    dz: float
    origin: float = 0.0

    def __post_init__(self) -> None:
        if self.n < MIN_POINTS or self.n & (self.n - 1):
            raise GridError(f"Grid size must be a power of two >= {MIN_POINTS}, got {self.n}")
        if not (np.isfinite(self.dz) and self.dz > 0):
            raise GridError(f"Grid spacing must be positive, got {self.dz}")
        if not np.isfinite(self.origin):
            raise GridError("Grid origin must be finite")

    @classmethod
    def centered(cls, n: int, length: float) -> "Grid1D":
        """Grid of the given length starting at -length/2"""
        return cls(n=n, dz=length / n, origin=-length / 2)

    @property
    def length(self) -> float:
        return self.n * self.dz

    @cached_property
    def z(self) -> np.ndarray:
        points = self.origin + self.dz * np.arange(self.n)
        points.setflags(write=False)
        return points

    def refined(self) -> "Grid1D":
        """Same interval with twice the points"""
        return Grid1D(n=2 * self.n, dz=self.dz / 2, origin=self.origin)

    def index_of(self, coordinate: float) -> int:
        """
        Index of the node at the given coordinate.

        Raises:
            GridError: if the coordinate is not a grid node
        """
        position = (coordinate - self.origin) / self.dz
        index = int(round(position))
        if abs(position - index) > NODE_TOLERANCE or not 0 <= index < self.n:
            raise GridError(f"Coordinate {coordinate} is not a node of the grid")
        return index

    def momenta(self, hbar: float = 1.0) -> np.ndarray:
        """Lattice momenta p_k in ascending order"""
        k = np.arange(-self.n // 2, self.n // 2)
        return 2.0 * np.pi * hbar * k / self.length

    def momentum_phase(self, offsets: np.ndarray) -> np.ndarray:
        """exp(-2*pi*i*m*origin/L) for integer momentum offsets m"""
        return np.exp(-2j * np.pi * offsets * self.origin / self.length)


def central_first(values: np.ndarray, dz: float, axis: int = -1) -> np.ndarray:
    """(f[j+1] - f[j-1]) / 2dz with periodic wrap"""
    if values.shape[axis] < 3:
        raise GridError("Central differences need at least 3 points")
    return (np.roll(values, -1, axis=axis) - np.roll(values, 1, axis=axis)) / (2.0 * dz)


def central_second(values: np.ndarray, dz: float, axis: int = -1) -> np.ndarray:
    """(f[j+1] - 2f[j] + f[j-1]) / dz^2 with periodic wrap"""
    if values.shape[axis] < 3:
        raise GridError("Central differences need at least 3 points")
    return (np.roll(values, -1, axis=axis) - 2.0 * values + np.roll(values, 1, axis=axis)) / dz**2


def forward_first(values: np.ndarray, dz: float, axis: int = -1) -> np.ndarray:
    """(f[j+1] - f[j]) / dz with periodic wrap"""
    return (np.roll(values, -1, axis=axis) - values) / dz


def _offsets(grid: Grid1D) -> np.ndarray:
    return np.arange(-grid.n // 2, grid.n // 2)


def forward_dft(values: np.ndarray, grid: Grid1D, axes: Sequence[int] = (-1,)) -> np.ndarray:
    """Position samples to momentum amplitudes along the given axes"""
    result = np.asarray(values, dtype=complex)
    phase = grid.momentum_phase(_offsets(grid))
    for axis in axes:
        transformed = fft.fftshift(fft.fft(result, axis=axis), axes=axis)
        shape = [1] * transformed.ndim
        shape[axis] = grid.n
        result = grid.dz * transformed * phase.reshape(shape)
    return result


def inverse_dft(values: np.ndarray, grid: Grid1D, axes: Sequence[int] = (-1,)) -> np.ndarray:
    """Momentum amplitudes back to position samples along the given axes"""
    result = np.asarray(values, dtype=complex)
    phase = np.conj(grid.momentum_phase(_offsets(grid)))
    for axis in axes:
        shape = [1] * result.ndim
        shape[axis] = grid.n
        shifted = fft.ifftshift(result * phase.reshape(shape), axes=axis)
        result = fft.ifft(shifted, axis=axis) / grid.dz
    return result


def discrete_norm(values: np.ndarray, dz: float) -> float:
    """sqrt(sum |f|^2 * dz^d) over all axes"""
    return float(np.sqrt(np.sum(np.abs(values) ** 2) * dz**values.ndim))


def relative_residual(residual: np.ndarray, reference: np.ndarray, dz: float) -> float:
    """||residual|| / ||reference|| in the discrete L2 norm"""
    scale = discrete_norm(reference, dz)
    if scale == 0:
        return discrete_norm(residual, dz)
    return discrete_norm(residual, dz) / scale


def convergence_ratio(coarse_residual: float, fine_residual: float) -> float:
    """Residual ratio on halving the spacing; 4 for second order, 2 for first"""
    if fine_residual == 0:
        return float("inf")
    return coarse_residual / fine_residual
