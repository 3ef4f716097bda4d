"""
Tests for Scaled Number Structures

Covers complex values on both backends, scaling factors, the relative
structure operations and the axiom suite (including its ability to
catch a broken multiplication).
"""

# pylint: disable=redefined-outer-name  # pytest fixtures

import sys
from fractions import Fraction
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent / "src"))

import pytest  # pylint: disable=import-error
from hypothesis import given, settings  # pylint: disable=import-error
from hypothesis import strategies as st  # pylint: disable=import-error

from numscale.scaling_engine.exceptions import (  # pylint: disable=import-error,wrong-import-position
    BackendMismatchError,
    DimensionMismatchError,
    ScalingLevelError,
)
from numscale.scaling_engine.scaled_numbers import (  # pylint: disable=import-error,wrong-import-position
    AXIOM_NAMES,
    Backend,
    ComplexValue,
    RelativeStructure,
    ScaledNumber,
    ScaledVector,
    ScalingFactor,
    axiom_suite,
    embed,
    level_shift,
    project_Zts,
    rel_conj,
    rel_div,
    rel_mul,
    rel_one,
    relative_value,
    scaled_inner,
    scaled_norm,
    scaled_scalar_mul,
    value_of,
)

# =============================================================================
# STRATEGIES
# =============================================================================

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
complex_values = st.builds(ComplexValue.exact, rationals, rationals)
nonzero_values = complex_values.filter(lambda v: not v.is_zero())
factors = nonzero_values.map(ScalingFactor)
structures = st.builds(RelativeStructure, factors, factors)


@pytest.fixture
def structure():
    """t = 3/2 + i/2 seen from s = 2"""
    return RelativeStructure(ScalingFactor.of("3/2", "1/2"), ScalingFactor.of(2))


# =============================================================================
# COMPLEX VALUES
# =============================================================================


class TestComplexValue:
    """Exact and float complex values."""

    def test_exact_arithmetic_does_not_round(self):
        x = ComplexValue.exact("1/3", "2/7")
        y = ComplexValue.exact("-5/11", "3")

        assert (x * y) / y == x
        assert (x + y) - y == x

    def test_exact_parses_decimal_strings(self):
        assert ComplexValue.exact("12.47").re == Fraction(1247, 100)

    def test_mixing_backends_raises(self):
        with pytest.raises(BackendMismatchError):
            ComplexValue.exact(1) + ComplexValue.from_complex(1.0)

    def test_exact_rejects_float_operand(self):
        with pytest.raises(BackendMismatchError):
            ComplexValue.exact(1) * 0.5

    def test_division_by_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            ComplexValue.exact(1) / ComplexValue.zero()

    def test_conjugate(self):
        assert ComplexValue.exact(2, 3).conjugate() == ComplexValue.exact(2, -3)

    def test_float_backend_roundtrip_to_exact(self):
        value = ComplexValue.from_complex(0.5 - 0.25j)
        assert value.to_backend(Backend.EXACT) == ComplexValue.exact("1/2", "-1/4")

    @settings(max_examples=200, deadline=None)
    @given(complex_values, nonzero_values)
    def test_exact_product_and_quotient_match_componentwise(self, x, y):
        product = ComplexValue(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re)
        norm = y.re * y.re + y.im * y.im
        quotient = ComplexValue((x.re * y.re + x.im * y.im) / norm, (x.im * y.re - x.re * y.im) / norm)

        assert x * y == product
        assert x / y == quotient
        assert type((x * y).re) is Fraction

    def test_exact_parts_are_reduced(self):
        value = ComplexValue.exact("2/4", "-6/8") * ComplexValue.exact(-2)
        a, b, d = value.parts

        assert (a, b, d) == (-2, 3, 2)
        assert value == ComplexValue.exact(-1, "3/2")
        assert hash(value) == hash(ComplexValue.exact(-1, "3/2"))
        assert value.to_complex() == complex(-1.0, 1.5)


# =============================================================================
# LEVELS AND VALUE MAPS
# =============================================================================


class TestScalingLevels:
    """Scaling factors, value maps and level shifts."""

    def test_zero_level_rejected(self):
        with pytest.raises(ScalingLevelError):
            ScalingFactor.of(0)

    def test_zero_level_rejected_on_float_backend(self):
        with pytest.raises(ScalingLevelError):
            ScalingFactor.from_complex(0j)

    def test_inverse(self):
        t = ScalingFactor.of(3, 4)
        assert (t * t.inverse()).value == ComplexValue.one()

    def test_value_of_is_own_value(self):
        a = ScaledNumber(ComplexValue.exact(7), ScalingFactor.of(5))
        assert value_of(a) == ComplexValue.exact(7)

    def test_relative_value_scales_by_t_over_s(self):
        a = ScaledNumber(ComplexValue.exact(6), ScalingFactor.of(4))
        assert relative_value(a, ScalingFactor.of(2)) == ComplexValue.exact(12)

    def test_projection_matches_relative_value(self):
        a = ScaledNumber(ComplexValue.exact(1, 2), ScalingFactor.of(3, -1))
        s = ScalingFactor.of("1/2", 5)
        assert project_Zts(a, s) == relative_value(a, s)

    def test_level_shift_keeps_value(self):
        a = ScaledNumber(ComplexValue.exact(9), ScalingFactor.of(2))
        shifted = level_shift(ScalingFactor.of(3), a)

        assert shifted.value == a.value
        assert shifted.level.value == ComplexValue.exact(6)

    def test_value_and_level_must_share_backend(self):
        with pytest.raises(BackendMismatchError):
            ScaledNumber(ComplexValue.from_complex(1.0), ScalingFactor.of(1))


# =============================================================================
# RELATIVE STRUCTURE
# =============================================================================


class TestRelativeStructure:
    """Operations of the t-structure represented at level s."""

    def test_identity_is_t_over_s(self, structure):
        assert rel_one(structure) == structure.ratio
        x = ComplexValue.exact(5, -2)
        assert rel_mul(structure, rel_one(structure), x) == x

    def test_real_ratio_example(self):
        R = RelativeStructure(ScalingFactor.of(2), ScalingFactor.of(1))
        x, y = ComplexValue.exact(3), ComplexValue.exact(4)

        assert rel_mul(R, x, y) == ComplexValue.exact(6)
        assert rel_div(R, x, y) == ComplexValue.exact("3/2")
        assert embed(R, x) == ComplexValue.exact(6)

    def test_conjugation_keeps_prefactor_unconjugated(self, structure):
        x = ComplexValue.exact(1, 1)
        expected = structure.ratio * (structure.inverse_ratio * x).conjugate()
        assert rel_conj(structure, x) == expected

    def test_unscaled_structure_is_ordinary_arithmetic(self):
        R = RelativeStructure.unscaled()
        x, y = ComplexValue.exact(2, 1), ComplexValue.exact(-1, 3)

        assert rel_mul(R, x, y) == x * y
        assert rel_conj(R, x) == x.conjugate()

    @settings(max_examples=100, deadline=None)
    @given(structures, complex_values, complex_values, complex_values)
    def test_multiplication_associative_and_commutative(self, R, x, y, z):
        assert rel_mul(R, rel_mul(R, x, y), z) == rel_mul(R, x, rel_mul(R, y, z))
        assert rel_mul(R, x, y) == rel_mul(R, y, x)

    @settings(max_examples=100, deadline=None)
    @given(structures, complex_values)
    def test_conjugation_is_involution(self, R, x):
        assert rel_conj(R, rel_conj(R, x)) == x

    @settings(max_examples=100, deadline=None)
    @given(structures, complex_values, complex_values)
    def test_embedding_is_multiplicative(self, R, x, y):
        assert embed(R, x * y) == rel_mul(R, embed(R, x), embed(R, y))

    @settings(max_examples=100, deadline=None)
    @given(structures, nonzero_values)
    def test_division_inverts_multiplication(self, R, x):
        one = rel_one(R)
        assert rel_mul(R, x, rel_div(R, one, x)) == one


# =============================================================================
# SCALED VECTORS
# =============================================================================


class TestScaledVectors:
    """Scalar multiplication, inner product and norm."""

    def test_inner_product_scales_by_t_over_s(self):
        R = RelativeStructure(ScalingFactor.of(2), ScalingFactor.of(1))
        f = ScaledVector((ComplexValue.exact(3), ComplexValue.exact(0, 4)), R.upper)

        assert scaled_inner(R, f, f) == ComplexValue.exact(50)

    def test_norm(self):
        R = RelativeStructure(ScalingFactor.of(2), ScalingFactor.of(1))
        f = ScaledVector((ComplexValue.exact(3), ComplexValue.exact(4)), R.upper)

        norm = scaled_norm(R, f)
        assert norm.backend is Backend.FLOAT
        assert norm.to_complex() == pytest.approx(10.0)

    def test_scalar_multiplication(self):
        R = RelativeStructure(ScalingFactor.of(2), ScalingFactor.of(1))
        f = ScaledVector((ComplexValue.exact(4), ComplexValue.exact(-2)), R.upper)

        scaled = scaled_scalar_mul(R, ComplexValue.exact(3), f)
        assert scaled.components == (ComplexValue.exact(6), ComplexValue.exact(-3))

    def test_dimension_mismatch(self, structure):
        f = ScaledVector((ComplexValue.exact(1),), structure.upper)
        g = ScaledVector((ComplexValue.exact(1), ComplexValue.exact(2)), structure.upper)

        with pytest.raises(DimensionMismatchError):
            scaled_inner(structure, f, g)

    def test_backend_mismatch(self, structure):
        f = ScaledVector((ComplexValue.from_complex(1.0),), ScalingFactor.from_complex(1.0))

        with pytest.raises(BackendMismatchError):
            scaled_inner(structure, f, f)


# =============================================================================
# AXIOM SUITE
# =============================================================================


class TestAxiomSuite:
    """Random-sample verification of the field-with-involution axioms."""

    def test_exact_random_structures_pass(self):
        report = axiom_suite(None, samples=200, seed=1)

        assert report.all_passed, report.counterexamples
        assert set(report.failures) == set(AXIOM_NAMES)

    def test_exact_fixed_structure_passes(self, structure):
        assert axiom_suite(structure, samples=200, seed=2).all_passed

    def test_float_backend_within_tolerance(self):
        report = axiom_suite(None, samples=200, seed=3, backend=Backend.FLOAT)

        assert report.all_passed, report.counterexamples
        assert 0.0 <= report.max_deviation <= 1e-12

    def test_same_seed_same_report(self):
        first = axiom_suite(None, samples=50, seed=11)
        second = axiom_suite(None, samples=50, seed=11)

        assert first.failures == second.failures
        assert first.counterexamples == second.counterexamples

    def test_unscaled_multiplication_is_caught(self):
        """x*y without the s/t prefactor breaks the identity axiom whenever t != s"""
        R = RelativeStructure(ScalingFactor.of(2), ScalingFactor.of(1))
        report = axiom_suite(R, samples=50, seed=0, mul=lambda _, x, y: x * y)

        assert report.failures["identity"] > 0
        assert "identity" in report.counterexamples
        assert not report.all_passed

    def test_samples_must_be_positive(self):
        with pytest.raises(ValueError):
            axiom_suite(None, samples=0)

    def test_exact_backend_reports_no_float_deviation(self):
        report = axiom_suite(None, samples=5, seed=4)
        assert report.max_deviation == 0.0

    def test_float_rounding_far_below_tolerance(self):
        report = axiom_suite(None, samples=500, seed=5, backend=Backend.FLOAT)
        assert report.max_deviation < 1e-13

    def test_float_product_off_by_one_part_in_a_billion_is_caught(self):
        def skewed_mul(R, x, y):
            return rel_mul(R, x, y) * (1 + 1e-9)

        report = axiom_suite(None, samples=100, seed=6, backend=Backend.FLOAT, mul=skewed_mul)

        assert report.failures["identity"] > 0
        assert report.max_deviation > 1e-10
