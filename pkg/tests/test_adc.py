import math
from fractions import Fraction
from random import Random

import pytest

from arithspace import (
    FinASpace,
    MalformedInputError,
    PreconditionError,
    RatRegion,
    ac,
    adc,
    adc_contains,
    adc_intersect_intervals,
    interval_region,
    point_region,
)
from genlib import adc_member_oracle, rand_region


def test_point_region_gives_multiples():
    s = adc(point_region(Fraction(1, 2)))
    assert [n in s for n in (0, 2, 4, 6)] == [True] * 4
    assert [n in s for n in (1, 3, 5)] == [False] * 3


def test_interval_third_half():
    # Oracle first: brute-force witness search for n = 1..12.
    region = interval_region(Fraction(1, 3), Fraction(1, 2))
    expect = [adc_member_oracle(region, n) for n in range(13)]
    assert expect == [True, False] + [True] * 11
    s = adc(region)
    assert [n in s for n in range(13)] == expect
    assert s.to_json_dict()["cofinite_excluding"] == [[1]]


def test_empty_region():
    s = adc(RatRegion.make())
    assert s.is_empty_set
    assert 0 not in s and 1 not in s


def test_adc_contains_examples():
    assert adc_contains(adc(point_region(Fraction(1, 2))), 4)
    assert not adc_contains(adc(interval_region(Fraction(1, 3), Fraction(1, 2))), 1)
    two_points = RatRegion.make(points=[Fraction(2, 3), Fraction(1, 2)])
    assert adc_contains(adc(two_points), 3)


def test_degenerate_interval_is_point():
    assert RatRegion.make(intervals=[(Fraction(1, 2), Fraction(1, 2))]) == point_region(
        Fraction(1, 2)
    )
    with pytest.raises(MalformedInputError):
        RatRegion.make(intervals=[(Fraction(1, 2), Fraction(1, 3))])


def test_intersect_nested():
    fam = [(Fraction(0), Fraction(1)), (Fraction(1, 3), Fraction(1, 2))]
    assert adc_intersect_intervals(fam).same_set(
        adc(interval_region(Fraction(1, 3), Fraction(1, 2)))
    )


def test_intersect_single_point():
    fam = [(Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(1))]
    result = adc_intersect_intervals(fam)
    assert result.same_set(adc(point_region(Fraction(1, 2))))


def test_intersect_rejects_disjoint():
    fam = [(Fraction(0), Fraction(1, 3)), (Fraction(1, 2), Fraction(1))]
    with pytest.raises(PreconditionError):
        adc_intersect_intervals(fam)
    with pytest.raises(PreconditionError):
        adc_intersect_intervals([])


def test_ac_examples():
    space = FinASpace.make({"a": 2, "b": 3, "c": 0})
    assert ac(space, point_region(Fraction(1, 2))) == {"a", "c"}
    assert ac(space, interval_region(Fraction(0), Fraction(1))) == {"a", "b", "c"}
    assert ac(space, RatRegion.make()) == frozenset()


def test_membership_matches_oracle_randomized():
    rng = Random(201)
    for _ in range(300):
        region = rand_region(rng, max_den=12)
        s = adc(region)
        for n in range(0, 30):
            assert (n in s) == adc_member_oracle(region, n), (region, n)


def test_closure_under_multiples_and_divisor_complement():
    rng = Random(20_2)
    for _ in range(200):
        region = rand_region(rng, max_den=10)
        s = adc(region)
        for n in range(1, 25):
            if n in s:
                for k in range(2, 4):
                    assert n * k in s
                assert 0 in s
            else:
                for d in range(1, n + 1):
                    if n % d == 0:
                        assert d not in s


def test_zero_iff_nonempty():
    rng = Random(20_3)
    for _ in range(100):
        region = rand_region(rng, max_den=10)
        assert (0 in adc(region)) == (not region.is_empty)


def test_monotone_and_union():
    rng = Random(20_4)
    for _ in range(200):
        r1 = rand_region(rng, max_den=10)
        r2 = rand_region(rng, max_den=10)
        u = r1.union(r2)
        s1, s2, su = adc(r1), adc(r2), adc(u)
        for n in range(0, 25):
            assert (n in su) == ((n in s1) or (n in s2))
            if n in s1:
                assert n in su  # monotonicity along r1 <= union


def test_cofinite_bound():
    rng = Random(20_5)
    for _ in range(100):
        a = Fraction(rng.randint(-10, 10), rng.randint(1, 12))
        b = a + Fraction(rng.randint(1, 20), rng.randint(1, 12))
        s = adc(interval_region(a, b))
        k = math.ceil(1 / (b - a))
        for n in range(k, k + 20):
            assert n in s


def test_same_set_distinguishes():
    assert not adc(point_region(Fraction(1, 2))).same_set(
        adc(point_region(Fraction(1, 3)))
    )
    assert adc(point_region(Fraction(1, 2))).same_set(
        adc(RatRegion.make(points=[Fraction(1, 2), Fraction(3, 2)]))
    )


def test_region_json_roundtrip():
    region = RatRegion.make(
        points=[Fraction(1, 2)], intervals=[(Fraction(1, 3), Fraction(2, 3))]
    )
    assert RatRegion.from_json(region.to_json_list()) == region
    with pytest.raises(MalformedInputError):
        RatRegion.from_json({"point": "1/2"})
    with pytest.raises(MalformedInputError):
        RatRegion.from_json([{"pointt": "1/2"}])
