"""Exact rational scalars and their text form.

Rationals are plain :class:`fractions.Fraction` values.  The text form is
``"p/q"``, ``"p"`` or an exact decimal such as ``"0.5"``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from lplab.errors import RationalParseError

__all__ = ["Fraction", "to_rational", "parse_rational", "format_rational", "is_integral"]


def to_rational(value) -> Fraction:
    """Coerce an int, Fraction or rational string to a Fraction.

    Binary floats are refused; they cannot be represented faithfully.
    """
    if isinstance(value, bool):
        raise RationalParseError(f"booleans are not rationals: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise RationalParseError(f"cannot convert {type(value).__name__} {value!r} to an exact rational")


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise RationalParseError(f"expected a string, got {type(text).__name__}")
    s = text.strip()
    if not s or s.lower() in {"nan", "inf", "-inf", "+inf", "infinity"}:
        raise RationalParseError(f"not a rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise RationalParseError(f"not a rational: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def is_integral(q: Fraction) -> bool:
    return Fraction(q).denominator == 1
