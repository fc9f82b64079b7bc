"""Admissible denominators of rational regions.

A region is a finite union of rational points and closed rational
intervals.  Its admissible denominators are the naturals n such that some
rational in the region has denominator dividing n: a point p/q contributes
every multiple of q (and 0), an interval [a, b] with a < b contributes all
but finitely many naturals, because for n >= 1/(b - a) the grid (1/n)Z
always meets the interval.  The result is kept symbolic: a union of
multiple-sets and cofinite pieces, with 0 tracked by a flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .aspace import FinASpace
from .divlat import _nat
from .errors import MalformedInputError, PreconditionError
from .rationals import format_rat, parse_rat

Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class RatRegion:
    """Finite union of rational points and closed rational intervals.

    Intervals always satisfy lo < hi; a degenerate interval collapses to a
    point at construction.  Components are deduplicated and sorted, so
    equal regions compare equal.
    """

    points: tuple[Fraction, ...]
    intervals: tuple[Interval, ...]

    @classmethod
    def make(
        cls,
        points: Iterable[Fraction] = (),
        intervals: Iterable[Interval] = (),
    ) -> "RatRegion":
        pts = set(Fraction(p) for p in points)
        ivs = set()
        for lo, hi in intervals:
            lo, hi = Fraction(lo), Fraction(hi)
            if lo > hi:
                raise MalformedInputError(f"interval [{lo}, {hi}] has lo > hi")
            if lo == hi:
                pts.add(lo)
            else:
                ivs.add((lo, hi))
        return cls(tuple(sorted(pts)), tuple(sorted(ivs)))

    @property
    def is_empty(self) -> bool:
        return not self.points and not self.intervals

    def union(self, other: "RatRegion") -> "RatRegion":
        return RatRegion.make(
            self.points + other.points, self.intervals + other.intervals
        )

    def contains_rat(self, x: Fraction) -> bool:
        x = Fraction(x)
        return x in self.points or any(lo <= x <= hi for lo, hi in self.intervals)

    def to_json_list(self) -> list:
        doc: list = [{"point": format_rat(p)} for p in self.points]
        doc += [
            {"interval": [format_rat(lo), format_rat(hi)]}
            for lo, hi in self.intervals
        ]
        return doc

    @classmethod
    def from_json(cls, doc: object) -> "RatRegion":
        if not isinstance(doc, list):
            raise MalformedInputError("region must be a JSON list")
        points, intervals = [], []
        for item in doc:
            if not isinstance(item, dict) or len(item) != 1:
                raise MalformedInputError(f"bad region component: {item!r}")
            if "point" in item:
                points.append(parse_rat(item["point"]))
            elif "interval" in item:
                pair = item["interval"]
                if not isinstance(pair, list) or len(pair) != 2:
                    raise MalformedInputError(f"bad interval: {pair!r}")
                intervals.append((parse_rat(pair[0]), parse_rat(pair[1])))
            else:
                raise MalformedInputError(f"bad region component: {item!r}")
        return cls.make(points, intervals)


@dataclass(frozen=True)
class AdcSet:
    """Symbolic set of admissible denominators.

    The denoted subset of the naturals is the union of the multiple-sets
    M(d) = {n : d divides n} for d in ``upsets``, and of the cofinite
    pieces "all naturals >= 1 except F" for F in ``cofinite``; whether 0
    belongs is carried by ``zero_member`` (0 is a multiple of everything,
    so it belongs exactly when the source region is nonempty).
    """

    upsets: tuple[int, ...]
    cofinite: tuple[frozenset[int], ...]
    zero_member: bool

    def __contains__(self, n: int) -> bool:
        n = _nat(n)
        if n == 0:
            return self.zero_member
        if any(n % d == 0 for d in self.upsets):
            return True
        return any(n not in excl for excl in self.cofinite)

    @property
    def is_empty_set(self) -> bool:
        return not (self.zero_member or self.upsets or self.cofinite)

    def comparison_bound(self) -> int:
        """Membership beyond this bound is determined by residues mod the
        lcm of the upset generators, so bounded comparison is sound."""
        worst_exclusion = max((max(f, default=0) for f in self.cofinite), default=0)
        period = math.lcm(*self.upsets) if self.upsets else 1
        return worst_exclusion + period

    def same_set(self, other: "AdcSet") -> bool:
        """Extensional equality, decided by sampling up to the joint bound."""
        bound = max(self.comparison_bound(), other.comparison_bound())
        period = math.lcm(1, *self.upsets, *other.upsets)
        if self.zero_member != other.zero_member:
            return False
        return all((n in self) == (n in other) for n in range(1, bound + period + 1))

    def to_json_dict(self) -> dict:
        return {
            "zero_member": self.zero_member,
            "upsets": sorted(self.upsets),
            "cofinite_excluding": sorted(sorted(f) for f in self.cofinite),
        }


@lru_cache(maxsize=8192)
def _interval_exclusions(lo: Fraction, hi: Fraction) -> frozenset[int]:
    """Naturals n >= 1 for which (1/n)Z misses [lo, hi] (a finite set).

    n admits a point of the interval iff ceil(n*lo) <= floor(n*hi); every
    n >= 1/(hi - lo) is admitted, so only smaller n need scanning.
    """
    scan_upper = math.ceil(1 / (hi - lo)) - 1
    return frozenset(
        n
        for n in range(1, scan_upper + 1)
        if math.ceil(n * lo) > math.floor(n * hi)
    )


def adc(region: RatRegion) -> AdcSet:
    """Admissible denominators of a region (empty region gives the empty set)."""
    upsets = tuple(sorted({p.denominator for p in region.points}))
    cofinite = tuple(
        sorted(_interval_exclusions(lo, hi) for lo, hi in region.intervals)
    )
    return AdcSet(upsets=upsets, cofinite=cofinite, zero_member=not region.is_empty)


def adc_contains(s: AdcSet, n: int) -> bool:
    """Decide membership of ``n`` using the symbolic representation."""
    return n in s


def adc_intersect_intervals(intervals: Sequence[Interval]) -> AdcSet:
    """Admissible denominators of the intersection of a directed family.

    The family must be nonempty and lower directed; for closed rational
    intervals this comes down to every pairwise intersection being
    nonempty, and then the intersection is the interval from the largest
    lower endpoint to the smallest upper endpoint.  For genuinely directed
    families (some member inside every pairwise intersection) the result
    coincides with the intersection of the member-wise admissible sets.
    """
    ivs = [(Fraction(lo), Fraction(hi)) for lo, hi in intervals]
    if not ivs:
        raise PreconditionError(
            "family must be nonempty", condition="nonempty family"
        )
    for lo, hi in ivs:
        if lo > hi:
            raise MalformedInputError(f"interval [{lo}, {hi}] has lo > hi")
    lo_star = max(lo for lo, _ in ivs)
    hi_star = min(hi for _, hi in ivs)
    if lo_star > hi_star:
        bad = (max(ivs, key=lambda p: p[0]), min(ivs, key=lambda p: p[1]))
        raise PreconditionError(
            f"family is not lower directed: [{bad[0][0]}, {bad[0][1]}] and "
            f"[{bad[1][0]}, {bad[1][1]}] have empty intersection",
            condition="lower directed",
        )
    return adc(RatRegion.make(intervals=[(lo_star, hi_star)]))


def ac(space: FinASpace, region: RatRegion) -> frozenset[str]:
    """Points of the carrier whose denominator is admissible for the region."""
    admissible = adc(region)
    return frozenset(x for x, z in space.items if z in admissible)


def interval_region(lo: Fraction, hi: Fraction) -> RatRegion:
    """Region consisting of the single closed interval [lo, hi] (or point)."""
    return RatRegion.make(intervals=[(lo, hi)])


def point_region(p: Fraction) -> RatRegion:
    return RatRegion.make(points=[p])
