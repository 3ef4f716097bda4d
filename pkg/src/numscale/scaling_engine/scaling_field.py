"""
Scaling Field

The complex scalar field g = exp(gamma), gamma = alpha + i*beta, its
gradient connection Gamma = A + iB and the connection ratios built from
it. Multi-point scaling factors are formed in exponent space and
exponentiated last.

A field is either a closed form (one profile for alpha, one for beta)
or sampled on a Grid1D. Charts are the identity on the common grid, so
lifting a field to a reference point only changes its reference tag.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .exceptions import FieldSpecError, GridError
from .grid import Grid1D, central_first, central_second


class ProfileKind(str, Enum):
    """Closed-form shape of a real field component"""

    CONSTANT = "constant"
    LINEAR = "linear"
    GAUSSIAN = "gaussian"
    SINE = "sine"


@dataclass(frozen=True)
class Profile:
    """
    Real closed-form profile.

    constant: amplitude
    linear:   amplitude + slope*(z - center)
    gaussian: amplitude * exp(-(z - center)^2 / (2 width^2))
    sine:     amplitude * sin(wavenumber*z + phase)
    """

    kind: ProfileKind = ProfileKind.CONSTANT
    amplitude: float = 0.0
    slope: float = 0.0
    center: float = 0.0
    width: float = 1.0
    wavenumber: float = 1.0
    phase: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ProfileKind(self.kind))
        values = (self.amplitude, self.slope, self.center, self.width, self.wavenumber, self.phase)
        if not all(math.isfinite(v) for v in values):
            raise FieldSpecError("Profile parameters must be finite")
        if self.kind is ProfileKind.GAUSSIAN and self.width <= 0:
            raise FieldSpecError("Gaussian profile width must be positive")

    def scaled(self, factor: float) -> "Profile":
        return replace(self, amplitude=factor * self.amplitude, slope=factor * self.slope)

    def _derivatives(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        zeros = np.zeros_like(z)
        match self.kind:
            case ProfileKind.CONSTANT:
                return self.amplitude + zeros, zeros, zeros
            case ProfileKind.LINEAR:
                return self.amplitude + self.slope * (z - self.center), self.slope + zeros, zeros
            case ProfileKind.GAUSSIAN:
                u = (z - self.center) / self.width
                value = self.amplitude * np.exp(-0.5 * u**2)
                return value, -u / self.width * value, (u**2 - 1) / self.width**2 * value
            case ProfileKind.SINE:
                argument = self.wavenumber * z + self.phase
                k = self.wavenumber
                return (
                    self.amplitude * np.sin(argument),
                    self.amplitude * k * np.cos(argument),
                    -self.amplitude * k**2 * np.sin(argument),
                )

    def value(self, z: np.ndarray) -> np.ndarray:
        return self._derivatives(np.asarray(z, dtype=float))[0]

    def derivative(self, z: np.ndarray) -> np.ndarray:
        return self._derivatives(np.asarray(z, dtype=float))[1]

    def second_derivative(self, z: np.ndarray) -> np.ndarray:
        return self._derivatives(np.asarray(z, dtype=float))[2]


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """
    gamma = alpha + i*beta, closed form or sampled.

    Sampled arrays are read-only and must be finite. `reference` is the
    chart tag set by lift_to_chart.
    """

    alpha: Profile | None = None
    beta: Profile | None = None
    grid: Grid1D | None = None
    alpha_samples: np.ndarray | None = None
    beta_samples: np.ndarray | None = None
    reference: float | None = None

    def __post_init__(self) -> None:
        if self.is_sampled:
            if self.grid is None or self.alpha_samples is None or self.beta_samples is None:
                raise FieldSpecError("Sampled fields need a grid and both alpha and beta samples")
            for name in ("alpha_samples", "beta_samples"):
                samples = np.array(getattr(self, name), dtype=float)
                if samples.shape != (self.grid.n,):
                    raise FieldSpecError(
                        f"{name} has shape {samples.shape}, grid expects ({self.grid.n},)"
                    )
                if not np.all(np.isfinite(samples)):
                    raise FieldSpecError(f"{name} must be finite everywhere")
                samples.setflags(write=False)
                object.__setattr__(self, name, samples)
        else:
            object.__setattr__(self, "alpha", self.alpha or Profile())
            object.__setattr__(self, "beta", self.beta or Profile())

    # Constructors

    @classmethod
    def zero(cls) -> "FieldSpec":
        """g = 1"""
        return cls(Profile(), Profile())

    @classmethod
    def closed_form(cls, alpha: Profile | None = None, beta: Profile | None = None) -> "FieldSpec":
        return cls(alpha=alpha or Profile(), beta=beta or Profile())

    @classmethod
    def sampled(cls, grid: Grid1D, alpha: np.ndarray, beta: np.ndarray) -> "FieldSpec":
        return cls(grid=grid, alpha_samples=alpha, beta_samples=beta)

    @property
    def is_sampled(self) -> bool:
        return self.alpha_samples is not None or self.beta_samples is not None

    @property
    def is_closed_form(self) -> bool:
        return not self.is_sampled

    def scaled(self, factor: float) -> "FieldSpec":
        """Field with exponent factor*gamma"""
        if self.is_sampled:
            return replace(
                self,
                alpha_samples=factor * self.alpha_samples,
                beta_samples=factor * self.beta_samples,
            )
        return replace(self, alpha=self.alpha.scaled(factor), beta=self.beta.scaled(factor))

    # Sampling

    def _check_grid(self, grid: Grid1D) -> None:
        if self.is_sampled and grid != self.grid:
            raise GridError("Sampled field is defined on a different grid")

    def gamma_on(self, grid: Grid1D) -> np.ndarray:
        """gamma at every node of the grid"""
        self._check_grid(grid)
        if self.is_sampled:
            return self.alpha_samples + 1j * self.beta_samples
        return self.alpha.value(grid.z) + 1j * self.beta.value(grid.z)

    def analytic_gradient(self, z: np.ndarray) -> np.ndarray:
        return self.alpha.derivative(z) + 1j * self.beta.derivative(z)

    def analytic_second_derivative(self, z: np.ndarray) -> np.ndarray:
        return self.alpha.second_derivative(z) + 1j * self.beta.second_derivative(z)


@dataclass(frozen=True, eq=False)
class ConnectionGradient:
    """Gamma = A + iB sampled per grid point"""

    A: np.ndarray
    B: np.ndarray

    @property
    def gamma(self) -> np.ndarray:
        return self.A + 1j * self.B


def gamma_at(f: FieldSpec, z: float) -> complex:
    """
    alpha(z) + i*beta(z).

    Raises:
        GridError: if the field is sampled and z is not one of its nodes
    """
    if f.is_sampled:
        index = f.grid.index_of(z)
        return complex(f.alpha_samples[index], f.beta_samples[index])
    point = np.array([z], dtype=float)
    return complex(f.alpha.value(point)[0], f.beta.value(point)[0])


def connection_ratio(f: FieldSpec, x: float, y: float) -> complex:
    """g(y)/g(x) = exp(gamma(y) - gamma(x)), formed in exponent space"""
    return complex(np.exp(gamma_at(f, y) - gamma_at(f, x)))


def transport(f: FieldSpec, x: float, y: float, value: complex) -> complex:
    """Carry a value from the structure at x to the structure at y"""
    return connection_ratio(f, x, y) * value


def gradient_Gamma(f: FieldSpec, grid: Grid1D, numerical: bool = False) -> ConnectionGradient:
    """
    Gamma = d(gamma)/dz on the grid.

    Closed-form fields use analytic derivatives unless `numerical` is
    set; sampled fields always use second-order central differences.
    """
    f._check_grid(grid)
    if f.is_closed_form and not numerical:
        gradient = f.analytic_gradient(grid.z)
    else:
        gradient = central_first(f.gamma_on(grid), grid.dz)
    return ConnectionGradient(A=np.real(gradient), B=np.imag(gradient))


def gradient_derivative(f: FieldSpec, grid: Grid1D) -> np.ndarray:
    """d(Gamma)/dz: analytic for closed forms, second central difference of gamma otherwise"""
    f._check_grid(grid)
    if f.is_closed_form:
        return f.analytic_second_derivative(grid.z)
    return central_second(f.gamma_on(grid), grid.dz)


def first_order_ratio(f: FieldSpec, grid: Grid1D, index: int) -> complex:
    """1 + Gamma(z_j)*dz, the linearization of g(z_j + dz)/g(z_j)"""
    gradient = gradient_Gamma(f, grid).gamma[index]
    return complex(1.0 + gradient * grid.dz)


def mean_exponent(values: Sequence[complex]) -> complex:
    """Average of exponents, summed with fsum so the result is order-independent"""
    if len(values) == 0:
        raise FieldSpecError("At least one point is required")
    re = math.fsum(v.real for v in values)
    im = math.fsum(v.imag for v in values)
    return complex(re, im) / len(values)


def pair_gamma(f: FieldSpec, x: float, y: float) -> complex:
    """(gamma(x) + gamma(y)) / 2; exp of it is the geometric mean g_2(x, y)"""
    return mean_exponent([gamma_at(f, x), gamma_at(f, y)])


def pair_g(f: FieldSpec, x: float, y: float) -> complex:
    return complex(np.exp(pair_gamma(f, x, y)))


def n_point_gamma(f: FieldSpec, points: Sequence[float]) -> complex:
    """Mean of gamma over the points; exp of it is the n-fold geometric mean"""
    if len(points) == 0:
        raise FieldSpecError("n_point_gamma needs at least one point")
    return mean_exponent([gamma_at(f, z) for z in points])


def lift_to_chart(f: FieldSpec, reference: float) -> FieldSpec:
    """
    Field read in the chart of the reference point.

    Charts are identities on the common grid: samples stay untouched and
    only the reference tag changes.
    """
    if not math.isfinite(reference):
        raise FieldSpecError("Chart reference must be finite")
    if f.is_sampled:
        f.grid.index_of(reference)
    return replace(f, reference=reference)
