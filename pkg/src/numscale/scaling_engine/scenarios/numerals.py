"""
Numerals Scenario

Alphabet numerals under the digit map a=0 ... j=9: worked values, the
unit and zero strings of a basis, trailing-letter equivalence and the
agreement of lexicographic and numeric order on random pairs.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from ..base_scenario import BaseScenario
from ..config import ScenarioConfig
from ..exceptions import NumeralParseError
from ..numeral_strings import (
    DIGIT_ALPHABET,
    NumeralBasis,
    NumeralString,
    canonical_value,
    lex_compare,
    parse,
    scaled_value,
)
from ._common import mismatches

PRINTED_UNIT_VALUE = Fraction("215.006")

WORKED_VALUES = {
    "b.a": Fraction(1),
    "a.aa": Fraction(0),
    "-a.jjhgbi": Fraction("-0.997618"),
    "dbf.aag": Fraction("315.006"),
}

MALFORMED = ["xyz", "a.b.c", "", "-", ".", "ab c"]


@dataclass
class NumeralInputs:
    basis: NumeralBasis
    numerals: list[NumeralString]
    random_pairs: int
    seed: int


def _random_numeral(rng: random.Random) -> str:
    integer = "".join(rng.choice(DIGIT_ALPHABET) for _ in range(rng.randint(0, 3)))
    fraction = "".join(rng.choice(DIGIT_ALPHABET) for _ in range(rng.randint(0, 4)))
    if not integer and not fraction:
        integer = rng.choice(DIGIT_ALPHABET)
    sign = rng.choice(["", "-", "+"])
    return f"{sign}{integer}.{fraction}" if fraction or rng.random() < 0.5 else f"{sign}{integer}"


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


class NumeralsScenario(BaseScenario):
    """Alphabet numerals and their scaled values"""

    SCENARIO_NAME = "numerals"
    DESCRIPTION = "Alphabet numerals, bases and lexicographic order"
    ORDER = 20

    CHECKS = {
        "numerals.worked_values": "v_1(b.a) = 1, v_1(a.aa) = 0, v_1(-a.jjhgbi) = -0.997618",
        "numerals.printed_unit_value": "v_1(dbf.aag) under a=0..j=9",
        "numerals.unit_scaled_value": "v_t(unit string) = 1",
        "numerals.zero_scaled_value": "v_t(zero string) = 0",
        "numerals.scaled_times_t": "v_t(n) t = v_1(n)",
        "numerals.trailing_letters": "v_1(n + 'aa') = v_1(n)",
        "numerals.lex_order": "lexicographic order with a < b < ... < j matches numeric order",
        "numerals.parse_rejects": "letters outside a..j, second point, no digits",
    }
    DEFAULT_TOLERANCES = dict.fromkeys(CHECKS, 0.0)

    def prepare(self, cfg: ScenarioConfig) -> NumeralInputs:
        texts = list(cfg.numerals.values)
        if cfg.numerals.input_path is not None:
            texts += self._input_repo.read_numerals(cfg.numerals.input_path)
        return NumeralInputs(
            basis=NumeralBasis.from_text(cfg.numerals.zero, cfg.numerals.unit),
            numerals=[parse(text) for text in texts],
            random_pairs=cfg.numerals.random_pairs,
            seed=cfg.seed,
        )

    def run_checks(self, prepared: NumeralInputs) -> None:
        basis = prepared.basis

        self._check(
            "numerals.worked_values",
            lambda: mismatches(
                [(canonical_value(parse(text)), value) for text, value in WORKED_VALUES.items()
                 if text != "dbf.aag"]
            ),
        )
        self._check("numerals.printed_unit_value", self._printed_unit_value)
        self._check(
            "numerals.unit_scaled_value",
            lambda: float(abs(scaled_value(basis.unit_string, basis) - 1)),
        )
        self._check(
            "numerals.zero_scaled_value",
            lambda: float(abs(scaled_value(basis.zero_string, basis))),
        )
        self._check(
            "numerals.scaled_times_t",
            lambda: mismatches(
                [(scaled_value(n, basis) * basis.t, canonical_value(n)) for n in prepared.numerals]
            ),
        )
        self._check(
            "numerals.trailing_letters",
            lambda: mismatches(
                [(canonical_value(self._padded(n)), canonical_value(n)) for n in prepared.numerals]
            ),
        )
        self._check("numerals.lex_order", lambda: self._lex_order(prepared))
        self._check("numerals.parse_rejects", self._parse_rejects)

        self._add_artifact(
            "numerals",
            ["numeral", "canonical_value", "scaled_value"],
            [[n.raw, canonical_value(n), scaled_value(n, basis)] for n in prepared.numerals],
        )

    @staticmethod
    def _printed_unit_value() -> tuple[float, str]:
        computed = canonical_value(parse("dbf.aag"))
        note = (
            f"digit map gives {float(computed)}; the printed value {float(PRINTED_UNIT_VALUE)} "
            "reads d as 2 and is treated as a typo"
        )
        return float(abs(computed - WORKED_VALUES["dbf.aag"])), note

    @staticmethod
    def _padded(n: NumeralString) -> NumeralString:
        text = n.raw.strip()
        return parse(text + "aa" if "." in text else text + ".aa")

    @staticmethod
    def _lex_order(prepared: NumeralInputs) -> tuple[float, str | None]:
        rng = random.Random(prepared.seed)
        pairs = []
        for _ in range(prepared.random_pairs):
            m, n = parse(_random_numeral(rng)), parse(_random_numeral(rng))
            pairs.append((lex_compare(m, n), _sign(canonical_value(m) - canonical_value(n))))
        return mismatches(pairs)

    @staticmethod
    def _parse_rejects() -> tuple[float, str | None]:
        accepted = []
        for text in MALFORMED:
            try:
                parse(text)
            except NumeralParseError:
                continue
            accepted.append(repr(text))
        return float(len(accepted)), (f"accepted: {', '.join(accepted)}" if accepted else None)
