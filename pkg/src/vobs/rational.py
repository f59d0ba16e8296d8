"""Exact rational helpers built on :class:`fractions.Fraction`.

All payoffs, claims and beliefs are ``Fraction`` values. This module only
adds the decimal grammar shared by the ``.game`` parser and the CLI
``--set`` overrides, plus the canonical text form used on output.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rat = Fraction

MAX_FRACTION_DIGITS = 9

_DECIMAL_RE = re.compile(r"^(-?)(\d+)(?:\.(\d+))?$")
_RATIO_RE = re.compile(r"^(-?\d+)/(\d+)$")


class NumberFormatError(ValueError):
    """Raised when text is not a decimal literal or ``p/q`` ratio."""


def parse_rat(text: str) -> Fraction:
    """Parse ``-?digits(.digits)?`` (at most 9 fraction digits) or ``p/q``."""
    text = text.strip()
    m = _DECIMAL_RE.match(text)
    if m:
        sign, whole, frac = m.groups()
        if frac is not None and len(frac) > MAX_FRACTION_DIGITS:
            raise NumberFormatError(
                f"{text!r} has more than {MAX_FRACTION_DIGITS} fraction digits")
        value = Fraction(int(whole + (frac or "")), 10 ** len(frac or ""))
        return -value if sign else value
    m = _RATIO_RE.match(text)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise NumberFormatError(f"{text!r} has a zero denominator")
        return Fraction(int(m.group(1)), den)
    raise NumberFormatError(f"{text!r} is not a decimal number")


def is_number_literal(text: str) -> bool:
    """True for text :func:`parse_rat` accepts."""
    try:
        parse_rat(text)
    except NumberFormatError:
        return False
    return True


def _terminating_digits(den: int) -> int | None:
    # number of decimal places needed, or None if the expansion repeats
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    return max(twos, fives)


def format_rat(value: Fraction) -> str:
    """Shortest exact decimal text, falling back to ``p/q``.

    >>> format_rat(Fraction(15, 2)), format_rat(Fraction(1, 3)), format_rat(Fraction(-4))
    ('7.5', '1/3', '-4')
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    digits = _terminating_digits(value.denominator)
    if digits is None or digits > MAX_FRACTION_DIGITS:
        return f"{value.numerator}/{value.denominator}"
    scaled = abs(value.numerator) * 10 ** digits // value.denominator
    whole, frac = divmod(scaled, 10 ** digits)
    sign = "-" if value < 0 else ""
    return f"{sign}{whole}.{frac:0{digits}d}".rstrip("0")
