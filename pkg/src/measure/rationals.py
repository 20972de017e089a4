"""
Exact rational weights.

Weights are fractions.Fraction everywhere in the measure layer; files
carry them as "p/q" strings so they round-trip bit-exactly.
"""

from fractions import Fraction
from typing import Union

from groupoid_core.errors import ParseError

RationalLike = Union[Fraction, int, str]


def to_fraction(value: RationalLike) -> Fraction:
    """Fraction from int, Fraction or 'p/q' text; floats are refused"""
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"weights must be exact rationals, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational: {value!r}") from None


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"
