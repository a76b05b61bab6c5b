"""Exact rational parsing/formatting ("p/q" strings, pi-units)."""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidComplexError


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (also accepts ints) into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise InvalidComplexError("floating point numbers are not accepted")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidComplexError(f"bad rational {text!r}: {exc}") from None


def format_rational(value: Fraction) -> str:
    """Canonical lowest-terms string; integers print without a denominator."""
    value = Fraction(value)
    return str(value)
