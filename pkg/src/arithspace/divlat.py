"""The divisibility lattice on the naturals, with 0 on top.

Divisibility orders the naturals with 1 at the bottom and 0 at the top:
every number divides 0, and 0 divides only itself.  ``lcm`` is the join
of this lattice and ``gcd`` the meet (``math.lcm``/``math.gcd`` already
implement exactly these conventions).  Denominators of rationals and of
rational tuples take values here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import MalformedInputError


def _nat(n: object) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise MalformedInputError(f"expected a natural number, got {n!r}")
    if n < 0:
        raise MalformedInputError(f"expected a natural number, got {n}")
    return n


def divides(a: int, b: int) -> bool:
    """True iff ``a`` divides ``b``; everything divides 0, 0 divides only 0."""
    a, b = _nat(a), _nat(b)
    if a == 0:
        return b == 0
    return b % a == 0


def lcm_div(values: Iterable[int]) -> int:
    """Join in the divisibility lattice: empty join is 1, any 0 gives 0."""
    return math.lcm(*(_nat(v) for v in values))


def gcd_div(values: Iterable[int]) -> int:
    """Meet in the divisibility lattice (gcd, with gcd() == 0 on empty)."""
    return math.gcd(*(_nat(v) for v in values))


def den_rat(r: Fraction) -> int:
    """Denominator of a reduced rational; integers have denominator 1."""
    return Fraction(r).denominator


def den_vec(values: Iterable[Fraction]) -> int:
    """Denominator of a rational tuple: the lcm of coordinate denominators."""
    return math.lcm(*(Fraction(v).denominator for v in values))


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n >= 1`` in increasing order."""
    if _nat(n) == 0:
        raise MalformedInputError("0 has no finite divisor list")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class DivSet:
    """All naturals dividing some member of a finite generating set.

    ``members`` lists the set when it is finite; ``None`` means the whole
    of the naturals (the case where 0 belongs to the generators, since
    every natural divides 0).
    """

    members: frozenset[int] | None

    @property
    def is_all(self) -> bool:
        return self.members is None

    def __contains__(self, n: int) -> bool:
        n = _nat(n)
        if self.members is None:
            return True
        return n in self.members

    def sorted_members(self) -> list[int]:
        if self.members is None:
            raise MalformedInputError("set is all of the naturals")
        return sorted(self.members)


def div_set(generators: Iterable[int]) -> DivSet:
    """The downward closure (under divisibility) of a finite set of naturals."""
    gens = [_nat(g) for g in generators]
    if any(g == 0 for g in gens):
        return DivSet(None)
    out: set[int] = set()
    for g in gens:
        out.update(divisors(g))
    return DivSet(frozenset(out))


def group_index(values: Iterable[Fraction]) -> int:
    """Index of the subgroup of the rationals generated by ``values`` and 1.

    The generated subgroup is (1/d)Z for a unique d >= 1: with q the lcm
    of the value denominators, the subgroup is (g/q)Z where g is the gcd
    of the values rescaled to denominator q together with q itself, so
    d = q // g.
    """
    vals = [Fraction(v) for v in values]
    q = math.lcm(*(v.denominator for v in vals))
    g = math.gcd(q, *(v.numerator * (q // v.denominator) for v in vals))
    return q // g
