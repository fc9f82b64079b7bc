"""Shared random generators and independent brute-force oracles.

The oracles deliberately avoid the library's symbolic representations:
membership is decided by direct witness search, realisations by grid
enumeration, so they stay independent of the code paths they check.
"""

from __future__ import annotations

import math
from fractions import Fraction
from random import Random

from arithspace import Draft, FinASpace, RatRegion


def rand_rat(rng: Random, max_den: int, lo=Fraction(0), hi=Fraction(1)) -> Fraction:
    den = rng.randint(1, max_den)
    lo_num = math.ceil(lo * den)
    hi_num = math.floor(hi * den)
    if lo_num > hi_num:
        return Fraction(lo_num, den)
    return Fraction(rng.randint(lo_num, hi_num), den)


def rand_region(rng: Random, max_den: int, allow_empty: bool = True) -> RatRegion:
    n_points = rng.randint(0, 2)
    n_intervals = rng.randint(0 if (n_points or allow_empty) else 1, 2)
    points = [rand_rat(rng, max_den, Fraction(-1), Fraction(2)) for _ in range(n_points)]
    intervals = []
    for _ in range(n_intervals):
        a = rand_rat(rng, max_den, Fraction(-1), Fraction(2))
        b = rand_rat(rng, max_den, Fraction(-1), Fraction(2))
        if a == b:
            b = a + Fraction(1, max_den)
        intervals.append((min(a, b), max(a, b)))
    return RatRegion.make(points, intervals)


def adc_member_oracle(region: RatRegion, n: int) -> bool:
    """Witness search: is there a rational in the region with denominator
    dividing n?  For n >= 1 the candidates are p/d for divisors d of n and
    a scan of integers p; for n = 0 any rational works."""
    if n == 0:
        return not region.is_empty
    for d in range(1, n + 1):
        if n % d:
            continue
        for p in region.points:
            if p.denominator == d:
                return True
        for lo, hi in region.intervals:
            for num in range(math.floor(lo * d) - 1, math.ceil(hi * d) + 2):
                if lo <= Fraction(num, d) <= hi:
                    return True
    return False


def rand_space(
    rng: Random, max_points: int, max_zeta: int, min_zeta: int = 0, min_points: int = 1
) -> FinASpace:
    n = rng.randint(min_points, max_points)
    return FinASpace.make(
        {f"p{i}": rng.randint(min_zeta, max_zeta) for i in range(n)}
    )


def draft_from_function(
    space: FinASpace,
    values: dict[str, Fraction],
    levels: list[Fraction],
    alpha: Fraction,
    beta: Fraction,
) -> Draft:
    """The sublevel/superlevel draft of a pointwise function; always valid
    when the function maps into [alpha, beta] compatibly with the carrier
    denominators and the levels include both endpoints."""
    down = {r: [x for x in space.labels if values[x] <= r] for r in levels}
    up = {r: [x for x in space.labels if values[x] >= r] for r in levels}
    return Draft.make(space, alpha, beta, down, up)


def rand_valid_draft(
    rng: Random,
    max_points: int = 4,
    max_zeta_mult: int = 2,
    level_den: int = 6,
    max_extra_levels: int = 3,
) -> tuple[Draft, dict[str, Fraction]]:
    """A random valid draft, built by first drawing a compatible function.

    Each point first gets a rational value with denominator <= level_den,
    then a carrier denominator that is a multiple of the value's
    denominator (or 0); the function's sublevel/superlevel sets then give
    a valid draft for any level set containing the endpoints.
    """
    n = rng.randint(1, max_points)
    values: dict[str, Fraction] = {}
    zeta: dict[str, int] = {}
    for i in range(n):
        v = rand_rat(rng, level_den)
        label = f"p{i}"
        values[label] = v
        if rng.random() < 0.2:
            zeta[label] = 0
        else:
            zeta[label] = v.denominator * rng.randint(1, max_zeta_mult)
    space = FinASpace.make(zeta)
    alpha, beta = Fraction(0), Fraction(1)
    levels = {alpha, beta}
    for _ in range(rng.randint(0, max_extra_levels)):
        levels.add(rand_rat(rng, level_den))
    return draft_from_function(space, values, sorted(levels), alpha, beta), values


def point_window(d: Draft, x: str) -> tuple[Fraction, Fraction]:
    """[l, u] window a realisation must respect at point x."""
    l = max(r for r in d.levels if x in d.up[r])
    u = min(r for r in d.levels if x in d.down[r])
    return l, u


def grid_values(lo: Fraction, hi: Fraction, den: int) -> list[Fraction]:
    """All rationals k/den inside [lo, hi]."""
    return [
        Fraction(k, den)
        for k in range(math.ceil(lo * den), math.floor(hi * den) + 1)
    ]


def admissible_grid_values(
    lo: Fraction, hi: Fraction, zeta: int, grid_den: int
) -> list[Fraction]:
    """Grid rationals in [lo, hi] whose denominator divides zeta (any
    denominator when zeta == 0)."""
    out = []
    for v in grid_values(lo, hi, grid_den):
        if zeta == 0 or zeta % v.denominator == 0:
            out.append(v)
    return out
