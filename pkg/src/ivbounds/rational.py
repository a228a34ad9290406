"""Exact rational scalars.

All probabilities and outcome values in this package are carried as
:class:`fractions.Fraction` in canonical reduced form (positive denominator,
gcd-reduced), so every identity the bounds theory asserts can be checked with
``==`` rather than a tolerance.  ``Rational`` is an alias for ``Fraction``;
the helpers here convert between exact decimal text and fractions without
ever passing through binary floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

Rational = Fraction

_DECIMAL_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$")
_RATIO_RE = re.compile(r"^([+-]?\d+)\s*/\s*(\d+)$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse decimal text like ``"0.4555"`` or ratio text like ``"911/2000"``.

    The decimal form is read digit-for-digit (``0.4555`` becomes exactly
    4555/10000 reduced), never via ``float``.  Integers and Fractions pass
    through unchanged.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected exact numeric text, got {type(text).__name__}")
    s = text.strip()
    m = _RATIO_RE.match(s)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    if not _DECIMAL_RE.match(s):
        raise ParseError(f"not an exact decimal or ratio: {text!r}")
    return Fraction(s)


def format_decimal(value: Fraction, places: int | None = None) -> str:
    """Render a rational as exact decimal text.

    With ``places`` given, renders exactly that many fractional digits and
    raises ``ValueError`` if the value does not terminate within them (this
    function never rounds).  With ``places=None``, uses the minimal number of
    digits when the expansion terminates and falls back to ``"num/den"``
    otherwise.
    """
    value = Fraction(value)
    if places is not None:
        scaled = value * 10**places
        if scaled.denominator != 1:
            raise ValueError(f"{value} does not terminate in {places} decimal places")
        return _fixed_point(scaled.numerator, places)
    den = value.denominator
    places = 0
    while den % 2 == 0:
        den //= 2
        places += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    places = max(places, fives)
    return _fixed_point((value * 10**places).numerator, places)


def format_exact(value: Fraction) -> str:
    """Minimal exact rendering: terminating decimal if possible, else num/den."""
    return format_decimal(value, places=None)


def _fixed_point(scaled: int, places: int) -> str:
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    if places == 0:
        return f"{sign}{scaled}"
    digits = str(scaled).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"
