import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arithspace import (
    MalformedInputError,
    den_rat,
    den_vec,
    div_set,
    divides,
    divisors,
    group_index,
    lcm_div,
)

nats = st.integers(min_value=0, max_value=60)


def test_divides_examples():
    assert divides(3, 6)
    assert divides(5, 0)
    assert not divides(0, 4)
    assert divides(0, 0)
    assert divides(1, 7)


def test_lcm_div_examples():
    assert lcm_div([2, 3]) == 6
    assert lcm_div([2, 0]) == 0
    assert lcm_div([]) == 1


def test_den_rat_examples():
    assert den_rat(Fraction(3, 4)) == 4
    assert den_rat(Fraction(2)) == 1
    assert den_rat(Fraction(-5, 6)) == 6


def test_den_vec_examples():
    assert den_vec([Fraction(1, 2), Fraction(1, 3)]) == 6
    assert den_vec([]) == 1
    assert den_vec([Fraction(1, 2), Fraction(1, 4)]) == 4


def test_div_set_examples():
    assert div_set([6]).sorted_members() == [1, 2, 3, 6]
    assert div_set([0]).is_all
    assert div_set([4, 6]).sorted_members() == [1, 2, 3, 4, 6]
    assert div_set([]).sorted_members() == []


def test_div_set_brute_force_union():
    # Union of divisor sets, checked by scanning all candidates up to max.
    gens = [4, 6]
    expect = [n for n in range(1, 7) if any(g % n == 0 for g in gens)]
    assert div_set(gens).sorted_members() == expect


def test_rejects_negative_and_nonint():
    with pytest.raises(MalformedInputError):
        divides(-1, 3)
    with pytest.raises(MalformedInputError):
        lcm_div([2, -2])
    with pytest.raises(MalformedInputError):
        div_set(["2"])


@given(nats, nats)
def test_lcm_matches_naive_lcm_on_positives(a, b):
    if a == 0 or b == 0:
        return
    # Naive join: first common multiple by direct scan.
    m = max(a, b)
    naive = next(m * k for k in range(1, min(a, b) + 1) if (m * k) % a == 0 and (m * k) % b == 0)
    assert lcm_div([a, b]) == naive


@given(nats, nats, nats)
def test_divides_partial_order(a, b, c):
    assert divides(a, a)
    if divides(a, b) and divides(b, a):
        assert a == b
    if divides(a, b) and divides(b, c):
        assert divides(a, c)


@given(nats, nats, nats)
def test_lcm_is_join(a, b, c):
    j = lcm_div([a, b])
    assert divides(a, j) and divides(b, j)
    if divides(a, c) and divides(b, c):
        assert divides(j, c)
    assert lcm_div([a, b]) == lcm_div([b, a])
    assert lcm_div([a, lcm_div([b, c])]) == lcm_div([lcm_div([a, b]), c])
    assert lcm_div([a, a]) == a
    assert lcm_div([a, 1]) == a
    assert lcm_div([a, 0]) == 0


@given(st.lists(nats, max_size=6))
def test_div_set_downward_closed(gens):
    s = div_set(gens)
    if s.is_all:
        assert 0 in gens
        return
    for n in s.sorted_members():
        for d in divisors(n):
            assert d in s


@given(
    st.lists(st.fractions(max_denominator=12), max_size=4),
    st.lists(st.fractions(max_denominator=12), max_size=4),
)
def test_den_vec_concat(p, q):
    assert den_vec(p + q) == lcm_div([den_vec(p), den_vec(q)])


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    with pytest.raises(MalformedInputError):
        divisors(0)


def test_group_index_examples():
    assert group_index([Fraction(1, 2)]) == 2
    assert group_index([Fraction(1, 2), Fraction(1, 3)]) == 6
    assert group_index([Fraction(2)]) == 1
    assert group_index([]) == 1


@given(st.lists(st.fractions(max_denominator=8), max_size=4))
def test_group_index_closure_oracle(values):
    # The subgroup generated by the values and 1 must reach 1/d and stay
    # inside (1/d)Z; witnessed by direct small integer combinations.
    d = group_index(values)
    assert all((v * d).denominator == 1 for v in values)
    # 1/d is reachable: gcd witness over the rescaled numerators.
    q = math.lcm(*(v.denominator for v in values)) if values else 1
    nums = [v.numerator * (q // v.denominator) for v in values] + [q]
    assert math.gcd(*nums) * d == q
