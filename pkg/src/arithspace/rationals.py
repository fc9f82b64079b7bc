"""Exact rational plumbing: the wire format and simplest-fraction search.

Rationals are plain :class:`fractions.Fraction` values throughout the
package.  They are always stored reduced with a positive denominator, and
their wire form is the string ``"p/q"`` (just ``"p"`` when ``q == 1``),
which is exactly what ``str(Fraction)`` produces.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import MalformedInputError

Rat = Fraction

_RAT_RE = re.compile(r"\A[+-]?\d+(?:/\d+)?\Z")


def parse_rat(text: object) -> Fraction:
    """Parse a ``"p/q"`` string into a reduced Fraction."""
    if not isinstance(text, str):
        raise MalformedInputError(f"expected a rational string, got {text!r}")
    s = text.strip()
    if not _RAT_RE.match(s):
        raise MalformedInputError(f"not a rational literal: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise MalformedInputError(f"zero denominator in {text!r}") from exc


def format_rat(value: Fraction) -> str:
    return str(Fraction(value))


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The Stern-Brocot-simplest rational strictly between ``lo`` and ``hi``.

    Simplest means smallest denominator, with the continued-fraction
    recursion breaking ties; the result always exists because the
    interval is open and nonempty.
    """
    if not lo < hi:
        raise MalformedInputError(f"empty open interval ({lo}, {hi})")
    floor_lo = math.floor(lo)
    if hi > floor_lo + 1:
        return Fraction(floor_lo + 1)
    if lo == floor_lo:
        # Interval (n, b) inside one unit: reflect through x = n + 1/y.
        y = Fraction(math.floor(1 / (hi - lo)) + 1)
        return floor_lo + 1 / y
    inner = simplest_between(1 / (hi - floor_lo), 1 / (lo - floor_lo))
    return floor_lo + 1 / inner


def simplest_refinements(lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    """A deterministic, denominator-increasing enumeration of rationals in
    the open interval ``(lo, hi)``.

    Points are produced by repeatedly inserting, among all current gaps,
    the globally simplest fraction (smallest denominator, then smallest
    value).  Used as the default refinement schedule when a caller wants
    "the next few levels" without supplying them.
    """
    if count < 0:
        raise MalformedInputError("count must be nonnegative")
    if count and not lo < hi:
        raise MalformedInputError(f"empty open interval ({lo}, {hi})")
    known = [lo, hi]
    out: list[Fraction] = []
    for _ in range(count):
        candidates = [
            simplest_between(a, b) for a, b in zip(known, known[1:])
        ]
        best = min(candidates, key=lambda c: (c.denominator, c))
        out.append(best)
        known = sorted(known + [best])
    return out
