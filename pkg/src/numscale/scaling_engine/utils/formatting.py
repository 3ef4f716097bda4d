"""
Number Formatting

Text forms used in CSV artifacts. Floats carry 17 significant digits so
every value read back is the same double that was written.
"""

from fractions import Fraction
from typing import Any

import numpy as np

SIGNIFICANT_DIGITS = 17


def format_float(value: float) -> str:
    return format(float(value), f".{SIGNIFICANT_DIGITS}g")


def format_decimal(value: Fraction) -> str:
    """Exact decimal text of a rational with a terminating expansion, 'p/q' otherwise"""
    denominator = value.denominator
    digits = 0
    while denominator % 2 == 0 or denominator % 5 == 0:
        if denominator % 10 == 0:
            denominator //= 10
        elif denominator % 2 == 0:
            denominator //= 2
        else:
            denominator //= 5
        digits += 1
    if denominator != 1:
        return str(value)
    scaled = abs(value.numerator) * 10**digits // value.denominator
    sign = "-" if value < 0 else ""
    if digits == 0:
        return f"{sign}{scaled}"
    text = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}".rstrip("0").rstrip(".")


def format_cell(value: Any) -> str:
    """CSV cell text for floats, rationals, booleans and strings"""
    if isinstance(value, bool | np.bool_):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_decimal(value)
    if isinstance(value, float | np.floating):
        return format_float(value)
    return str(value)
