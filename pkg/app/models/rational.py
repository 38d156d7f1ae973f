"""
Exact rational helpers.

All weights and densities are fractions.Fraction; these helpers cover the text
form used in files and reports ("p/q", denominator dropped when 1) and the few
square-root questions the constructions ask.
"""

import math
import re
from fractions import Fraction
from typing import Optional, Union

from app.core.errors import BadRationalError

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")

RationalLike = Union[Fraction, int, str]


def parse_rational(value: RationalLike, context: str = "") -> Fraction:
    """Parse "p/q", "p", an int or a Fraction. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise BadRationalError(f"expected an exact rational, got {value!r}", context)
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise BadRationalError(f"expected a 'p/q' string, got {type(value).__name__}", context)
    match = _RATIONAL_RE.match(value)
    if not match:
        raise BadRationalError(f"malformed rational {value!r}", context)
    numerator, denominator = match.group(1), match.group(2)
    if denominator is not None and int(denominator) == 0:
        raise BadRationalError(f"zero denominator in {value!r}", context)
    return Fraction(int(numerator), int(denominator) if denominator is not None else 1)


def parse_rational_list(text: str, context: str = "") -> list[Fraction]:
    """Comma separated list, as taken by --rho."""
    parts = [p for p in text.split(",") if p.strip()]
    return [parse_rational(p, f"{context}[{i}]" if context else f"[{i}]") for i, p in enumerate(parts)]


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction, digits: int) -> str:
    """Rounded decimal rendering for display only; never compared."""
    value = Fraction(value)
    scaled = round(value * 10**digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def rational_sqrt(value: Fraction) -> Optional[Fraction]:
    """Exact square root when value is the square of a rational, else None."""
    if value < 0:
        return None
    num_root = math.isqrt(value.numerator)
    den_root = math.isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        return Fraction(num_root, den_root)
    return None


def approx_sqrt(value: Fraction, precision_bits: int = 128) -> Fraction:
    """Rational approximation of sqrt(value) from below, error < 2**-precision_bits."""
    if value < 0:
        raise ValueError("square root of a negative rational")
    scale = 1 << precision_bits
    # sqrt(n/d) = sqrt(n*d)/d
    root = math.isqrt(value.numerator * value.denominator * scale * scale)
    return Fraction(root, value.denominator * scale)


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with the smallest denominator in [lo, hi] (Stern–Brocot descent)."""
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    floor = math.floor(lo)
    if floor == lo:
        return Fraction(floor)
    if floor + 1 <= hi:
        return Fraction(floor + 1)
    # same integer part: recurse on the reciprocals of the fractional parts
    return floor + 1 / simplest_between(1 / (hi - floor), 1 / (lo - floor))
