"""
Alphabet Numeral Strings

Finite numerals written over the letters a..j with an optional sign and
a single point, e.g. "dfa.ggi" or "-a.jjhgbi". Letters map positionally
to decimal digits (a=0 ... j=9). A basis fixes which string is read as
zero and which as one; values in a basis with unit string u are the
canonical values divided by t = value(u).

Sample usage::

  >>> basis = NumeralBasis.from_text(unit="dbf.aag")
  >>> canonical_value(parse("b.a"))
  Fraction(1, 1)
  >>> scaled_value(parse("dbf.aag"), basis)
  Fraction(1, 1)
"""

from dataclasses import dataclass
from fractions import Fraction

from .exceptions import NumeralParseError, ScalingLevelError
from .scaled_numbers import ComplexValue, ScaledNumber, ScalingFactor

DIGIT_ALPHABET = "abcdefghij"
DECIMAL_DIGITS = "0123456789"
SIGNS = "+-"
POINT = "."

_TO_DECIMAL = str.maketrans(DIGIT_ALPHABET, DECIMAL_DIGITS)
_ZERO_LETTER = DIGIT_ALPHABET[0]


@dataclass(frozen=True)
class NumeralString:
    """Parsed numeral; fraction digits are stored without trailing zero letters"""

    negative: bool
    integer_digits: str
    fraction_digits: str
    raw: str

    @property
    def is_zero(self) -> bool:
        return not (self.integer_digits + self.fraction_digits).strip(_ZERO_LETTER)

    @property
    def canonical_text(self) -> str:
        integer = self.integer_digits.lstrip(_ZERO_LETTER) or _ZERO_LETTER
        fraction = self.fraction_digits or _ZERO_LETTER
        sign = "-" if self.negative and not self.is_zero else ""
        return f"{sign}{integer}{POINT}{fraction}"

    def __str__(self) -> str:
        return self.canonical_text


def parse(text: str) -> NumeralString:
    """
    Parse an alphabet numeral.

    Raises:
        NumeralParseError: on an illegal character, a second point or
            a string without any digit letters
    """
    body = text.strip()
    negative = False
    if body[:1] in tuple(SIGNS):
        negative = body[0] == "-"
        body = body[1:]

    offset = len(text) - len(text.lstrip()) + (len(text.strip()) - len(body))
    for position, char in enumerate(body):
        if char not in DIGIT_ALPHABET and char != POINT:
            raise NumeralParseError(
                f"Illegal character {char!r} at position {offset + position} in {text!r}",
                text=text,
                position=offset + position,
            )

    if body.count(POINT) > 1:
        raise NumeralParseError(f"Multiple points in {text!r}", text=text)

    integer_digits, _, fraction_digits = body.partition(POINT)
    if not integer_digits and not fraction_digits:
        raise NumeralParseError(f"No digit letters in {text!r}", text=text)

    return NumeralString(
        negative=negative,
        integer_digits=integer_digits,
        fraction_digits=fraction_digits.rstrip(_ZERO_LETTER),
        raw=text,
    )


def canonical_value(n: NumeralString) -> Fraction:
    """Positional base-10 value under the digit map (the value v_1)"""
    integer = (n.integer_digits or _ZERO_LETTER).translate(_TO_DECIMAL)
    fraction = (n.fraction_digits or _ZERO_LETTER).translate(_TO_DECIMAL)
    magnitude = Fraction(f"{integer}.{fraction}")
    return -magnitude if n.negative else magnitude


@dataclass(frozen=True)
class NumeralBasis:
    """Choice of zero string and unit string"""

    zero_string: NumeralString
    unit_string: NumeralString

    def __post_init__(self) -> None:
        if canonical_value(self.zero_string) != 0:
            raise ScalingLevelError(
                f"Zero string {self.zero_string.raw!r} does not have value 0"
            )
        if canonical_value(self.unit_string) == 0:
            raise ScalingLevelError(f"Unit string {self.unit_string.raw!r} has value 0")

    @classmethod
    def from_text(cls, zero: str = "a.a", unit: str = "b.a") -> "NumeralBasis":
        return cls(parse(zero), parse(unit))

    @property
    def t(self) -> Fraction:
        return canonical_value(self.unit_string)

    def scaling_factor(self) -> ScalingFactor:
        return ScalingFactor.of(self.t)


def scaled_value(n: NumeralString, basis: NumeralBasis) -> Fraction:
    """v_t(n) = v_1(n) / t; the unit string maps to exactly 1"""
    return canonical_value(n) / basis.t


def rebase_value(value: Fraction, source: NumeralBasis, target: NumeralBasis) -> Fraction:
    """Carry a scaled value from one basis to another: v_t = (s/t)·v_s"""
    return source.t / target.t * value


def complex_scaled_value(re: NumeralString, im: NumeralString, basis: NumeralBasis) -> ComplexValue:
    """Scaled value of the complex numeral re + i·im"""
    return ComplexValue.exact(scaled_value(re, basis), scaled_value(im, basis))


def to_scaled_number(n: NumeralString, basis: NumeralBasis) -> ScaledNumber:
    """Numeral as a number of level t whose own-structure value is v_t(n)"""
    return ScaledNumber(ComplexValue.exact(scaled_value(n, basis)), basis.scaling_factor())


def _compare_digits(left: str, right: str) -> int:
    return (left > right) - (left < right)


def lex_compare(m: NumeralString, n: NumeralString) -> int:
    """
    Lexicographic order with a < b < ... < j.

    Signs are compared first (zero counts as non-negative), integer parts
    are aligned by padding with leading 'a' and fraction parts by trailing
    'a'. Returns -1, 0 or 1 and agrees with the order of canonical values.
    """
    m_negative = m.negative and not m.is_zero
    n_negative = n.negative and not n.is_zero
    if m_negative != n_negative:
        return -1 if m_negative else 1

    width = max(len(m.integer_digits), len(n.integer_digits))
    result = _compare_digits(
        m.integer_digits.rjust(width, _ZERO_LETTER),
        n.integer_digits.rjust(width, _ZERO_LETTER),
    )
    if result == 0:
        width = max(len(m.fraction_digits), len(n.fraction_digits))
        result = _compare_digits(
            m.fraction_digits.ljust(width, _ZERO_LETTER),
            n.fraction_digits.ljust(width, _ZERO_LETTER),
        )
    return -result if m_negative else result
