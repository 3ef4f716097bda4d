"""
Scaled Number Structures

Complex values on two backends (exact rationals and IEEE doubles),
scaled numbers carried as (value, level) pairs, the relative structure
between an upper level t and a lower level s, level shifts and the
scaled vector-space operations built on top of them.

All values are immutable; every operation is a pure function.
"""

import math
import random
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Any, Union

from .exceptions import (
    BackendMismatchError,
    DimensionMismatchError,
    ScalingLevelError,
)


class Backend(str, Enum):
    """Numeric backend of a complex value"""

    EXACT = "exact"
    FLOAT = "float"


Scalar = Union[int, Fraction, float]


@dataclass(frozen=True, init=False, repr=False)
class ComplexValue:
    """
    Complex number on an exact-rational or a float backend.

    Exact values are held as integers (a, b, d) meaning (a + ib)/d with
    d > 0 and gcd(a, b, d) == 1, so equal values have equal parts and
    never round. Float values delegate to Python complex arithmetic
    (IEEE double precision). Mixing backends raises BackendMismatchError.
    """

    backend: Backend
    parts: tuple

    def __init__(self, re: Scalar = 0, im: Scalar = 0, backend: Backend = Backend.EXACT) -> None:
        if backend is Backend.EXACT:
            re, im = Fraction(re), Fraction(im)
            q, s = re.denominator, im.denominator
            parts = _normalized(re.numerator * s, im.numerator * q, q * s)
        else:
            parts = (float(re), float(im))
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "parts", parts)

    @classmethod
    def _from_parts(cls, a: int, b: int, d: int) -> "ComplexValue":
        value = object.__new__(cls)
        object.__setattr__(value, "backend", Backend.EXACT)
        object.__setattr__(value, "parts", _normalized(a, b, d))
        return value

    # Constructors

    @classmethod
    def exact(cls, re: Scalar | str, im: Scalar | str = 0) -> "ComplexValue":
        """Exact value; strings such as '12.47' or '-3/7' parse without rounding"""
        return cls(Fraction(re), Fraction(im), Backend.EXACT)

    @classmethod
    def from_complex(cls, z: complex | float) -> "ComplexValue":
        """Float-backend value from a Python number"""
        z = complex(z)
        return cls(z.real, z.imag, Backend.FLOAT)

    @classmethod
    def zero(cls, backend: Backend = Backend.EXACT) -> "ComplexValue":
        return cls(0, 0, backend)

    @classmethod
    def one(cls, backend: Backend = Backend.EXACT) -> "ComplexValue":
        return cls(1, 0, backend)

    # Components

    @property
    def re(self) -> Fraction | float:
        if self.backend is Backend.EXACT:
            return Fraction(self.parts[0], self.parts[2])
        return self.parts[0]

    @property
    def im(self) -> Fraction | float:
        if self.backend is Backend.EXACT:
            return Fraction(self.parts[1], self.parts[2])
        return self.parts[1]

    # Conversions

    def to_complex(self) -> complex:
        if self.backend is Backend.EXACT:
            a, b, d = self.parts
            # int / int rounds correctly, as float(Fraction) does
            return complex(a / d, b / d)
        return complex(*self.parts)

    def to_backend(self, backend: Backend) -> "ComplexValue":
        if backend is self.backend:
            return self
        if backend is Backend.FLOAT:
            return ComplexValue.from_complex(self.to_complex())
        return ComplexValue(Fraction(self.parts[0]), Fraction(self.parts[1]), Backend.EXACT)

    def is_zero(self) -> bool:
        return self.parts[0] == 0 and self.parts[1] == 0

    def conjugate(self) -> "ComplexValue":
        if self.backend is Backend.FLOAT:
            return ComplexValue(self.parts[0], -self.parts[1], Backend.FLOAT)
        a, b, d = self.parts
        return ComplexValue._from_parts(a, -b, d)

    def __abs__(self) -> float:
        return abs(self.to_complex())

    # Arithmetic

    def _coerce(self, other: Any) -> "ComplexValue":
        if isinstance(other, ComplexValue):
            if other.backend is not self.backend:
                raise BackendMismatchError(
                    f"Cannot combine {self.backend.value} and {other.backend.value} values"
                )
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return ComplexValue(other, 0, self.backend)
        if isinstance(other, (float, complex)):
            if self.backend is Backend.EXACT:
                raise BackendMismatchError("Cannot combine an exact value with a float")
            return ComplexValue.from_complex(other)
        return NotImplemented

    def __add__(self, other: Any) -> "ComplexValue":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.backend is Backend.FLOAT:
            return ComplexValue.from_complex(self.to_complex() + other.to_complex())
        a1, b1, d1 = self.parts
        a2, b2, d2 = other.parts
        return ComplexValue._from_parts(a1 * d2 + a2 * d1, b1 * d2 + b2 * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> "ComplexValue":
        if self.backend is Backend.FLOAT:
            return ComplexValue(-self.parts[0], -self.parts[1], Backend.FLOAT)
        a, b, d = self.parts
        return ComplexValue._from_parts(-a, -b, d)

    def __sub__(self, other: Any) -> "ComplexValue":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.backend is Backend.FLOAT:
            return ComplexValue.from_complex(self.to_complex() - other.to_complex())
        a1, b1, d1 = self.parts
        a2, b2, d2 = other.parts
        return ComplexValue._from_parts(a1 * d2 - a2 * d1, b1 * d2 - b2 * d1, d1 * d2)

    def __rsub__(self, other: Any) -> "ComplexValue":
        return (-self) + other

    def __mul__(self, other: Any) -> "ComplexValue":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.backend is Backend.FLOAT:
            return ComplexValue.from_complex(self.to_complex() * other.to_complex())
        a1, b1, d1 = self.parts
        a2, b2, d2 = other.parts
        return ComplexValue._from_parts(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "ComplexValue":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("complex division by zero")
        if self.backend is Backend.FLOAT:
            return ComplexValue.from_complex(self.to_complex() / other.to_complex())
        # x/y = x conj(y) / |y|^2
        a1, b1, d1 = self.parts
        a2, b2, d2 = other.parts
        return ComplexValue._from_parts(
            (a1 * a2 + b1 * b2) * d2,
            (b1 * a2 - a1 * b2) * d2,
            d1 * (a2 * a2 + b2 * b2),
        )

    def __rtruediv__(self, other: Any) -> "ComplexValue":
        return self._coerce(other) / self

    def __repr__(self) -> str:
        return f"ComplexValue(re={self.re!r}, im={self.im!r}, backend={self.backend.value})"

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


def _normalized(a: int, b: int, d: int) -> tuple[int, int, int]:
    """Reduce (a + ib)/d so that d > 0 and gcd(a, b, d) == 1"""
    g = math.gcd(a, b, d)
    if d < 0:
        g = -g
    if g != 1:
        return a // g, b // g, d // g
    return a, b, d


@dataclass(frozen=True)
class ScalingFactor:
    """Nonzero level (t or s) of a scaled structure"""

    value: ComplexValue

    def __post_init__(self) -> None:
        if self.value.is_zero():
            raise ScalingLevelError("Scaling factor must be nonzero")

    @classmethod
    def of(cls, re: Scalar | str, im: Scalar | str = 0) -> "ScalingFactor":
        """Exact scaling factor"""
        return cls(ComplexValue.exact(re, im))

    @classmethod
    def from_complex(cls, z: complex | float) -> "ScalingFactor":
        return cls(ComplexValue.from_complex(z))

    @property
    def backend(self) -> Backend:
        return self.value.backend

    def __mul__(self, other: "ScalingFactor") -> "ScalingFactor":
        return ScalingFactor(self.value * other.value)

    def inverse(self) -> "ScalingFactor":
        return ScalingFactor(ComplexValue.one(self.backend) / self.value)


@dataclass(frozen=True)
class ScaledNumber:
    """Number a_t: its value in its own structure plus the level t"""

    value: ComplexValue
    level: ScalingFactor

    def __post_init__(self) -> None:
        if self.value.backend is not self.level.backend:
            raise BackendMismatchError("Value and level must share one backend")


@dataclass(frozen=True)
class RelativeStructure:
    """Structure of level t represented inside the structure of level s"""

    upper: ScalingFactor
    lower: ScalingFactor

    def __post_init__(self) -> None:
        if self.upper.backend is not self.lower.backend:
            raise BackendMismatchError("Upper and lower levels must share one backend")

    @classmethod
    def unscaled(cls, backend: Backend = Backend.EXACT) -> "RelativeStructure":
        one = ScalingFactor(ComplexValue.one(backend))
        return cls(one, one)

    @property
    def backend(self) -> Backend:
        return self.upper.backend

    @cached_property
    def ratio(self) -> ComplexValue:
        """t/s"""
        return self.upper.value / self.lower.value

    @cached_property
    def inverse_ratio(self) -> ComplexValue:
        """s/t"""
        return self.lower.value / self.upper.value


@dataclass(frozen=True)
class ScaledVector:
    """Vector f_t of fixed dimension; all components share one backend"""

    components: tuple[ComplexValue, ...]
    level: ScalingFactor

    def __post_init__(self) -> None:
        components = tuple(self.components)
        object.__setattr__(self, "components", components)
        backends = {c.backend for c in components} | {self.level.backend}
        if len(backends) > 1:
            raise BackendMismatchError("Vector components and level must share one backend")

    @property
    def dimension(self) -> int:
        return len(self.components)

    @property
    def backend(self) -> Backend:
        return self.level.backend


# Value maps


def value_of(a: ScaledNumber) -> ComplexValue:
    """v_t(a_t) = a"""
    return a.value


def relative_value(a: ScaledNumber, s: ScalingFactor) -> ComplexValue:
    """v_s(a_t) = (t/s)·a"""
    return (a.level.value / s.value) * a.value


def project_Zts(a: ScaledNumber, s: ScalingFactor) -> ComplexValue:
    """Representation of a_t inside the s-structure; numerically equal to relative_value"""
    return RelativeStructure(a.level, s).ratio * a.value


def level_shift(d: ScalingFactor, a: ScaledNumber) -> ScaledNumber:
    """Same value carried to level d·t"""
    return ScaledNumber(a.value, d * a.level)


# Relative structure operations


def rel_one(R: RelativeStructure) -> ComplexValue:
    """Multiplicative identity (t/s)·1"""
    return R.ratio


def rel_mul(R: RelativeStructure, x: ComplexValue, y: ComplexValue) -> ComplexValue:
    """(s/t)·x·y"""
    return R.inverse_ratio * x * y


def rel_div(R: RelativeStructure, x: ComplexValue, y: ComplexValue) -> ComplexValue:
    """(t/s)·x/y, the inverse of rel_mul in its first argument"""
    return R.ratio * x / y


def rel_conj(R: RelativeStructure, x: ComplexValue) -> ComplexValue:
    """(t/s)·conj((s/t)·x); the prefactor t/s is not conjugated"""
    return R.ratio * (R.inverse_ratio * x).conjugate()


def embed(R: RelativeStructure, a: ComplexValue) -> ComplexValue:
    """Ring-with-involution isomorphism a -> (t/s)·a"""
    return R.ratio * a


# Scaled vector operations


def _require_backend(R: RelativeStructure, *values: ComplexValue | ScaledVector) -> None:
    for value in values:
        if value.backend is not R.backend:
            raise BackendMismatchError(
                f"Operand backend {value.backend.value} does not match structure backend {R.backend.value}"
            )


def scaled_scalar_mul(R: RelativeStructure, a: ComplexValue, f: ScaledVector) -> ScaledVector:
    """Componentwise (s/t)·a·f_i"""
    _require_backend(R, a, f)
    factor = R.inverse_ratio * a
    return ScaledVector(tuple(factor * component for component in f.components), f.level)


def _plain_inner(f: ScaledVector, g: ScaledVector) -> ComplexValue:
    if f.dimension != g.dimension:
        raise DimensionMismatchError(
            f"Inner product of vectors with dimensions {f.dimension} and {g.dimension}"
        )
    if f.backend is not g.backend:
        raise BackendMismatchError("Inner product of vectors on different backends")
    total = ComplexValue.zero(f.backend)
    for fi, gi in zip(f.components, g.components):
        total = total + fi.conjugate() * gi
    return total


def scaled_inner(R: RelativeStructure, f: ScaledVector, g: ScaledVector) -> ComplexValue:
    """(t/s)·Σ conj(f_i)·g_i"""
    _require_backend(R, f, g)
    return R.ratio * _plain_inner(f, g)


def scaled_norm_squared(R: RelativeStructure, f: ScaledVector) -> ComplexValue:
    return scaled_inner(R, f, f)


def scaled_norm(R: RelativeStructure, f: ScaledVector) -> ComplexValue:
    """
    Value of |f_t|_t seen from level s: (t/s)·sqrt(<f,f>).

    The square root leaves the rationals, so the result is always float-backed.
    """
    plain = _plain_inner(f, f)
    return ComplexValue.from_complex(R.ratio.to_complex() * math.sqrt(float(plain.re)))


# Axiom suite


RelMul = Callable[[RelativeStructure, ComplexValue, ComplexValue], ComplexValue]

AXIOM_NAMES: tuple[str, ...] = (
    "add_associative",
    "add_commutative",
    "mul_associative",
    "mul_commutative",
    "distributive",
    "identity",
    "inverse",
    "conj_involution",
    "conj_antihomomorphism",
    "conj_additive",
    "embed_additive",
    "embed_multiplicative",
    "embed_conjugation",
    "value_relation",
    "projection_composition",
    "level_shift_group",
    "zero_fixed",
    "inner_scaling",
)

FLOAT_RELATIVE_TOLERANCE = 1e-12


@dataclass
class AxiomReport:
    """Per-axiom failure counts over a batch of random samples"""

    samples: int
    backend: Backend
    failures: dict[str, int] = field(default_factory=lambda: dict.fromkeys(AXIOM_NAMES, 0))
    max_deviation: float = 0.0
    counterexamples: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> dict[str, bool]:
        return {name: count == 0 for name, count in self.failures.items()}

    @property
    def all_passed(self) -> bool:
        return all(count == 0 for count in self.failures.values())


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-50, 50), rng.randint(1, 20))


def _random_value(rng: random.Random, backend: Backend, nonzero: bool = False) -> ComplexValue:
    while True:
        value = ComplexValue(_random_rational(rng), _random_rational(rng))
        if not (nonzero and value.is_zero()):
            return value.to_backend(backend)


def _deviation(lhs: ComplexValue, rhs: ComplexValue, conditioning: float) -> float:
    """
    Zero or infinity on the exact backend. On floats the error relative to
    the larger side, floored by the size of the terms the identity combines.
    """
    if lhs.backend is Backend.EXACT:
        return 0.0 if lhs == rhs else math.inf
    a, b = lhs.to_complex(), rhs.to_complex()
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b), conditioning)


def _conditioning(
    R: RelativeStructure,
    x: ComplexValue,
    y: ComplexValue,
    z: ComplexValue,
    u: ScalingFactor,
    d1: ScalingFactor,
    d2: ScalingFactor,
) -> dict[str, float]:
    """Magnitude of the largest term each identity adds up or multiplies out"""
    X, Y, Z = abs(x), abs(y), abs(z)
    ratio, inverse = abs(R.ratio), abs(R.inverse_ratio)
    t, s = abs(R.upper.value), abs(R.lower.value)
    return {
        "add_associative": X + Y + Z,
        "add_commutative": X + Y,
        "mul_associative": inverse * inverse * X * Y * Z,
        "mul_commutative": inverse * X * Y,
        "distributive": inverse * X * (Y + Z),
        "identity": X,
        "inverse": ratio,
        "conj_involution": X,
        "conj_antihomomorphism": inverse * X * Y,
        "conj_additive": X + Y,
        "embed_additive": ratio * (X + Y),
        "embed_multiplicative": ratio * X * Y,
        "embed_conjugation": ratio * X,
        "value_relation": ratio * X,
        "projection_composition": abs(u.value) * X / s,
        "level_shift_group": abs(d1.value) * abs(d2.value) * t,
        "zero_fixed": 0.0,
        "inner_scaling": ratio * (X * X + Y * Y + Z * Z),
    }


def _identities(
    R: RelativeStructure,
    mul: RelMul,
    rng: random.Random,
) -> tuple[dict[str, tuple[ComplexValue, ComplexValue]], dict[str, float] | None]:
    backend = R.backend
    x, y, z = (_random_value(rng, backend) for _ in range(3))
    u = ScalingFactor(_random_value(rng, backend, nonzero=True))
    d1 = ScalingFactor(_random_value(rng, backend, nonzero=True))
    d2 = ScalingFactor(_random_value(rng, backend, nonzero=True))
    t, s = R.upper, R.lower
    one = rel_one(R)

    # shared subterms
    x_plus_y = x + y
    xy = mul(R, x, y)
    conj_x, conj_y = rel_conj(R, x), rel_conj(R, y)
    embed_x, embed_y = embed(R, x), embed(R, y)

    a_at_u = ScaledNumber(x, u)
    through_t = project_Zts(ScaledNumber(project_Zts(a_at_u, t), t), s)
    a_at_t = ScaledNumber(x, t)
    f = ScaledVector((x, y, z), t)

    identities = {
        "add_associative": (x_plus_y + z, x + (y + z)),
        "add_commutative": (x_plus_y, y + x),
        "mul_associative": (mul(R, xy, z), mul(R, x, mul(R, y, z))),
        "mul_commutative": (xy, mul(R, y, x)),
        "distributive": (mul(R, x, y + z), xy + mul(R, x, z)),
        "identity": (mul(R, one, x), x),
        "conj_involution": (rel_conj(R, conj_x), x),
        "conj_antihomomorphism": (rel_conj(R, xy), mul(R, conj_y, conj_x)),
        "conj_additive": (rel_conj(R, x_plus_y), conj_x + conj_y),
        "embed_additive": (embed(R, x_plus_y), embed_x + embed_y),
        "embed_multiplicative": (embed(R, x * y), mul(R, embed_x, embed_y)),
        "embed_conjugation": (embed(R, x.conjugate()), rel_conj(R, embed_x)),
        "value_relation": (relative_value(a_at_t, s), (t.value * x) / s.value),
        "projection_composition": (through_t, project_Zts(a_at_u, s)),
        "level_shift_group": (
            level_shift(d2, level_shift(d1, a_at_t)).level.value,
            level_shift(d1 * d2, a_at_t).level.value,
        ),
        "zero_fixed": (
            relative_value(ScaledNumber(ComplexValue.zero(backend), t), s),
            ComplexValue.zero(backend),
        ),
        "inner_scaling": (
            scaled_inner(R, f, f),
            R.ratio * (x.conjugate() * x + y.conjugate() * y + z.conjugate() * z),
        ),
    }
    if not x.is_zero():
        identities["inverse"] = (mul(R, x, rel_div(R, one, x)), one)

    if backend is Backend.EXACT:
        return identities, None
    return identities, _conditioning(R, x, y, z, u, d1, d2)


def axiom_suite(
    R: RelativeStructure | None,
    samples: int,
    seed: int = 0,
    backend: Backend = Backend.EXACT,
    mul: RelMul = rel_mul,
) -> AxiomReport:
    """
    Check the field-with-involution axioms of the relative structure.

    Args:
        R: Structure under test. When None every sample draws its own
            random complex-rational levels t and s.
        samples: Number of random tuples (at least 1)
        seed: Seed for the sample generator
        backend: Backend used when R is None
        mul: Multiplication under test, replaceable for mutation checks

    Returns:
        AxiomReport with failure counts per axiom. Exact backends must
        match exactly; float backends within 1e-12 of the larger side
        or of the terms the identity combines, whichever is bigger.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")

    rng = random.Random(seed)
    report = AxiomReport(samples=samples, backend=R.backend if R else backend)

    for index in range(samples):
        structure = R
        if structure is None:
            structure = RelativeStructure(
                ScalingFactor(_random_value(rng, backend, nonzero=True)),
                ScalingFactor(_random_value(rng, backend, nonzero=True)),
            )
        identities, conditioning = _identities(structure, mul, rng)
        for name, (lhs, rhs) in identities.items():
            deviation = _deviation(lhs, rhs, conditioning[name] if conditioning else 0.0)
            if conditioning is not None and math.isfinite(deviation):
                report.max_deviation = max(report.max_deviation, deviation)
            if deviation > FLOAT_RELATIVE_TOLERANCE:
                report.failures[name] += 1
                report.counterexamples.setdefault(name, f"sample {index}: {lhs} != {rhs}")

    return report
