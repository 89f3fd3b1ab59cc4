"""Parsing and formatting of exact rationals as "p/q" strings."""

from fractions import Fraction


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", "p" or a decimal literal like "0.25" into a Fraction."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    """Render a Fraction as "p/q" (or "p" when the denominator is 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
