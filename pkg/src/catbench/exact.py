"""Exact arithmetic and rendering helpers.

All stored quantities are scaled integers with 4 implied decimals; derived
statistics are ``fractions.Fraction`` values.  Floating point never touches
storage, so every comparison and every serialized byte is reproducible.
"""

from __future__ import annotations

import datetime
from fractions import Fraction

SCALE = 10_000
DAY_ZERO = datetime.date(2015, 1, 1)


def render_scaled(value: int) -> str:
    """Render a 4-implied-decimal integer, e.g. ``12345 -> '1.2345'``."""
    sign = "-" if value < 0 else ""
    whole, frac = divmod(abs(value), SCALE)
    return f"{sign}{whole}.{frac:04d}"


def parse_scaled(text: str) -> int:
    text = text.strip()
    sign = -1 if text.startswith("-") else 1
    text = text.lstrip("+-")
    if "." in text:
        whole, frac = text.split(".", 1)
        frac = (frac + "0000")[:4]
    else:
        whole, frac = text, "0000"
    return sign * (int(whole or "0") * SCALE + int(frac))


def scaled_to_fraction(value: int) -> Fraction:
    return Fraction(value, SCALE)


def fraction_str(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den or "1"))


def render_fraction_decimal(value: Fraction) -> str:
    """Exact decimal rendering when the denominator is 2^a * 5^b, else p/q."""
    value = Fraction(value)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return fraction_str(value)
    digits = max(twos, fives)
    scaled = value * 10**digits
    text = f"{abs(int(scaled)):0{digits + 1}d}"
    sign = "-" if value < 0 else ""
    if digits == 0:
        return f"{sign}{text}"
    out = f"{sign}{text[:-digits]}.{text[-digits:]}".rstrip("0").rstrip(".")
    return out or "0"


def round_half_up(value: Fraction | int, decimals: int) -> Fraction:
    """Exact half-up rounding (0.5 always rounds away from zero)."""
    value = Fraction(value)
    shifted = value * 10**decimals
    whole = shifted.numerator // shifted.denominator
    remainder = shifted - whole
    if remainder * 2 >= 1:
        whole += 1
    return Fraction(whole, 10**decimals)


def round_half_up_float(value: Fraction | int, decimals: int) -> float:
    return float(round_half_up(value, decimals))


def day_to_iso(day: int) -> str:
    return (DAY_ZERO + datetime.timedelta(days=day)).isoformat()


def iso_to_day(iso: str) -> int:
    return (datetime.date.fromisoformat(iso) - DAY_ZERO).days
