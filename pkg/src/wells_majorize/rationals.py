"""Parsing and lossless serialization of exact rationals.

Rationals are carried everywhere as `fractions.Fraction` (arbitrary
precision, always in lowest terms, positive denominator) and cross the
CLI boundary as strings "p/q" or "p", never as floats.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse "p/q", "p", or a decimal literal like "0.3" into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational literal: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational_vector(text: str) -> tuple[Fraction, ...]:
    """Parse a comma-separated list of rational literals."""
    items = [piece for piece in text.split(",") if piece.strip()]
    if not items:
        raise ValidationError("empty vector literal")
    return tuple(parse_rational(piece) for piece in items)
