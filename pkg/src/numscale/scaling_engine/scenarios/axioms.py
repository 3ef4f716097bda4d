"""
Axioms Scenario

Exact and float runs of the relative-structure axiom suite, a mutation
run that must be caught, and the worked value-map examples.
"""

from dataclasses import dataclass
from fractions import Fraction

from ..base_scenario import BaseScenario
from ..config import ScenarioConfig
from ..exceptions import CheckExecutionError
from ..scaled_numbers import (
    AXIOM_NAMES,
    FLOAT_RELATIVE_TOLERANCE,
    AxiomReport,
    Backend,
    ComplexValue,
    RelativeStructure,
    ScaledNumber,
    ScaledVector,
    ScalingFactor,
    axiom_suite,
    level_shift,
    project_Zts,
    rel_conj,
    rel_mul,
    rel_one,
    relative_value,
    scaled_inner,
    scaled_scalar_mul,
    value_of,
)
from ._common import mismatches

AXIOM_ANCHORS = {
    "add_associative": "(x + y) + z = x + (y + z)",
    "add_commutative": "x + y = y + x",
    "mul_associative": "(x *ts y) *ts z = x *ts (y *ts z), x *ts y = (s/t) x y",
    "mul_commutative": "x *ts y = y *ts x",
    "distributive": "x *ts (y + z) = x *ts y + x *ts z",
    "identity": "(t/s)1 *ts x = x",
    "inverse": "x *ts ((t/s)1 /ts x) = (t/s)1",
    "conj_involution": "conj_ts(conj_ts x) = x, conj_ts x = (t/s) conj((s/t) x)",
    "conj_antihomomorphism": "conj_ts(x *ts y) = conj_ts y *ts conj_ts x",
    "conj_additive": "conj_ts(x + y) = conj_ts x + conj_ts y",
    "embed_additive": "Z(a + b) = Z(a) + Z(b), Z(a) = (t/s) a",
    "embed_multiplicative": "Z(a b) = Z(a) *ts Z(b)",
    "embed_conjugation": "Z(conj a) = conj_ts Z(a)",
    "value_relation": "v_s(a_t) = (t/s) v_t(a_t)",
    "projection_composition": "Z^t_s Z^u_t = Z^u_s",
    "level_shift_group": "W_d' W_d = W_{d d'}",
    "zero_fixed": "v_s(0_t) = 0",
    "inner_scaling": "<f, g>_ts = (t/s) <f, g>",
}


@dataclass
class AxiomInputs:
    structure: RelativeStructure | None
    samples: int
    seed: int


def _float_structure(R: RelativeStructure | None) -> RelativeStructure | None:
    if R is None:
        return None
    return RelativeStructure(
        ScalingFactor(R.upper.value.to_backend(Backend.FLOAT)),
        ScalingFactor(R.lower.value.to_backend(Backend.FLOAT)),
    )


def _unscaled_mul(R: RelativeStructure, x: ComplexValue, y: ComplexValue) -> ComplexValue:
    """rel_mul with the s/t factor dropped"""
    return x * y


class AxiomsScenario(BaseScenario):
    """Field-with-involution axioms of the scaled structures"""

    SCENARIO_NAME = "axioms"
    DESCRIPTION = "Relative-structure axioms on exact rationals and doubles"
    ORDER = 10

    _exact_report: AxiomReport | None = None

    CHECKS = {
        "axioms.exact_suite": "all axioms on the sampled exact tuples, exact equality",
        **{f"axioms.{name}": anchor for name, anchor in AXIOM_ANCHORS.items()},
        "axioms.float_backend": "all axioms on doubles, relative deviation <= 1e-12",
        "axioms.mutation_detected": "x *ts y := x y breaks (t/s)1 *ts x = x",
        "axioms.value_examples": "v_t(a_t) = a, v_s(a_t) = (t/s) a on worked values",
    }
    DEFAULT_TOLERANCES = {
        "axioms.exact_suite": 0.0,
        **{f"axioms.{name}": 0.0 for name in AXIOM_NAMES},
        "axioms.float_backend": FLOAT_RELATIVE_TOLERANCE,
        "axioms.mutation_detected": 0.0,
        "axioms.value_examples": 0.0,
    }

    def prepare(self, cfg: ScenarioConfig) -> AxiomInputs:
        return AxiomInputs(
            structure=cfg.axioms.build(),
            samples=cfg.axioms.samples,
            seed=cfg.seed,
        )

    def run_checks(self, prepared: AxiomInputs) -> None:
        self._exact_report = None
        self._check("axioms.exact_suite", lambda: self._exact_run(prepared))
        for name in AXIOM_NAMES:
            self._check(f"axioms.{name}", lambda name=name: self._failures(name))

        self._check("axioms.float_backend", lambda: self._float_run(prepared))
        self._check("axioms.mutation_detected", lambda: self._mutation_run(prepared))
        self._check("axioms.value_examples", self._value_examples)

        exact = self._exact_report
        if exact is not None:
            self._add_artifact(
                "axioms",
                ["axiom", "samples", "failures"],
                [[name, exact.samples, exact.failures[name]] for name in AXIOM_NAMES],
            )

    def _exact_run(self, prepared: AxiomInputs) -> tuple[float, str]:
        """The timed exact run; the per-axiom checks read its counts"""
        self._exact_report = axiom_suite(prepared.structure, prepared.samples, seed=prepared.seed)
        failing = sum(self._exact_report.failures.values())
        return float(failing), f"{prepared.samples} samples"

    def _failures(self, name: str) -> tuple[float, str | None]:
        if self._exact_report is None:
            raise CheckExecutionError("exact axiom suite did not complete", scenario_name=self.SCENARIO_NAME)
        return float(self._exact_report.failures[name]), self._exact_report.counterexamples.get(name)

    @staticmethod
    def _float_run(prepared: AxiomInputs) -> tuple[float, str | None]:
        report = axiom_suite(
            _float_structure(prepared.structure),
            prepared.samples,
            seed=prepared.seed,
            backend=Backend.FLOAT,
        )
        failing = [name for name, ok in report.passed.items() if not ok]
        return report.max_deviation, (f"failing: {', '.join(failing)}" if failing else None)

    @staticmethod
    def _mutation_run(prepared: AxiomInputs) -> tuple[float, str]:
        report = axiom_suite(
            prepared.structure,
            min(prepared.samples, 100),
            seed=prepared.seed,
            mul=_unscaled_mul,
        )
        caught = report.failures["identity"]
        return (0.0 if caught else 1.0), f"identity failures under the mutated product: {caught}"

    @staticmethod
    def _value_examples() -> tuple[float, str | None]:
        one = ScalingFactor.of(1)
        t = ScalingFactor.of("43.1")
        a = ScaledNumber(ComplexValue.exact("12.47"), t)
        complex_a = ScaledNumber(
            ComplexValue.exact("-27.1", "3.7"), ScalingFactor.of("-0.006", "4.1")
        )
        i_over_one = RelativeStructure(ScalingFactor.of(0, 1), one)
        two_over_one = RelativeStructure(ScalingFactor.of(2), one)
        x = ComplexValue.exact(3, 4)
        unit_vector = ScaledVector((ComplexValue.exact(1), ComplexValue.exact(0)), ScalingFactor.of(2))

        return mismatches(
            [
                (value_of(a), ComplexValue.exact("12.47")),
                (value_of(complex_a), ComplexValue.exact("-27.1", "3.7")),
                (
                    relative_value(a, ScalingFactor.of("1.67")),
                    ComplexValue.exact(Fraction("43.1") / Fraction("1.67") * Fraction("12.47")),
                ),
                (relative_value(ScaledNumber(ComplexValue.exact(1), ScalingFactor.of(2)), one), ComplexValue.exact(2)),
                (project_Zts(ScaledNumber(ComplexValue.exact(1), ScalingFactor.of(2)), ScalingFactor.of(4)), ComplexValue.exact("1/2")),
                (level_shift(t.inverse(), a).level.value, ComplexValue.exact(1)),
                (rel_one(i_over_one), ComplexValue.exact(0, 1)),
                (rel_mul(i_over_one, rel_one(i_over_one), x), x),
                (rel_conj(i_over_one, rel_conj(i_over_one, x)), x),
                (rel_conj(i_over_one, rel_one(i_over_one)), rel_one(i_over_one)),
                (scaled_inner(two_over_one, unit_vector, unit_vector), ComplexValue.exact(2)),
                (scaled_scalar_mul(two_over_one, rel_one(two_over_one), unit_vector), unit_vector),
            ]
        )
