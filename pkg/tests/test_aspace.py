from random import Random

import pytest

from arithspace import (
    AMapFin,
    FinASpace,
    MalformedInputError,
    PreconditionError,
    check_amap,
    identity_amap,
    lcm_div,
    pair_into_product,
    product,
    product_projections,
    separate,
    verify_anormal,
)
from arithspace.aspace import amap_violations, compose
from genlib import rand_space


def amap(src, tgt, assignment):
    return AMapFin.make(FinASpace.make(src), FinASpace.make(tgt), assignment)


def test_check_amap_examples():
    assert check_amap(amap({"x": 4}, {"y": 2}, {"x": "y"}))
    assert not check_amap(amap({"x": 2}, {"y": 3}, {"x": "y"}))
    assert check_amap(amap({"x": 0}, {"y": 5}, {"x": "y"}))


def test_amap_structure_errors():
    with pytest.raises(MalformedInputError):
        amap({"x": 1, "z": 1}, {"y": 1}, {"x": "y"})  # not total
    with pytest.raises(MalformedInputError):
        amap({"x": 1}, {"y": 1}, {"x": "w"})  # unknown target


def test_identity_and_composition():
    rng = Random(31)
    for _ in range(50):
        space = rand_space(rng, 4, 8)
        assert check_amap(identity_amap(space))
    # Composition of denominator-decreasing maps decreases denominators.
    f = amap({"x": 12}, {"y": 6, "z": 3}, {"x": "y"})
    g = amap({"y": 6, "z": 3}, {"w": 3}, {"y": "w", "z": "w"})
    assert check_amap(f) and check_amap(g)
    assert check_amap(compose(g, f))


def test_product_examples():
    assert product(FinASpace.make({"a": 2}), FinASpace.make({"b": 3})) == FinASpace.make(
        {"(a,b)": 6}
    )
    assert product(FinASpace.make({"a": 0}), FinASpace.make({"b": 3})) == FinASpace.make(
        {"(a,b)": 0}
    )
    assert product(FinASpace.make({"a": 1}), FinASpace.make({"b": 1})) == FinASpace.make(
        {"(a,b)": 1}
    )


def test_product_projections_are_amaps():
    rng = Random(32)
    for _ in range(30):
        left = rand_space(rng, 3, 9)
        right = rand_space(rng, 3, 9)
        prod, p1, p2 = product_projections(left, right)
        assert check_amap(p1) and check_amap(p2)
        for a, za in left.items:
            for b, zb in right.items:
                assert prod.zeta_of(f"({a},{b})") == lcm_div([za, zb])


def test_pairing_universal_property():
    # A map into the product passes iff both composites with the
    # projections pass; built here from maps that do pass.
    rng = Random(33)
    for _ in range(30):
        source = rand_space(rng, 3, 6)
        # Targets whose denominators divide the source's.
        f_target = FinASpace.make({"t0": 1, "t1": 2})
        g_target = FinASpace.make({"s0": 1})
        f = AMapFin.make(
            source,
            f_target,
            {x: ("t1" if z % 2 == 0 else "t0") for x, z in source.items},
        )
        g = AMapFin.make(source, g_target, {x: "s0" for x in source.labels})
        assert check_amap(f) and check_amap(g)
        h = pair_into_product(f, g)
        assert check_amap(h)
        prod, p1, p2 = product_projections(f_target, g_target)
        assert compose(p1, h).assignment == f.assignment
        assert compose(p2, h).assignment == g.assignment


def test_verify_anormal_witnesses():
    report = verify_anormal(FinASpace.make({"a": 2, "b": 3}))
    assert report.ok
    assert report.pair_witnesses == (("a", "b", ("a",), ("b",)),)
    assert verify_anormal(FinASpace.make({"a": 1})).pair_witnesses == ()
    assert verify_anormal(FinASpace.make({})).pair_witnesses == ()


def test_verify_anormal_witnesses_are_separations():
    rng = Random(34)
    for _ in range(30):
        space = rand_space(rng, 4, 6)
        for x, y, u, v in verify_anormal(space).pair_witnesses:
            u, v = frozenset(u), frozenset(v)
            assert x in u and y in v and not (u & v)
            # Complement must only contain denominator-0 points; here it
            # is empty, which is stronger.
            assert u | v == space.label_set()


def test_separate_example():
    space = FinASpace.make({"a": 2, "b": 3, "c": 0, "d": 5})
    u, v = separate(space, frozenset({"a"}), frozenset({"b"}))
    assert u == {"a", "d"} and v == {"b"}
    u2, v2 = separate(space, frozenset({"a"}), frozenset({"b"}), policy="right")
    assert u2 == {"a"} and v2 == {"b", "d"}


def test_separate_empty_sets():
    u, v = separate(FinASpace.make({"a": 0}), frozenset(), frozenset())
    assert u == frozenset() and v == frozenset()


def test_separate_rejects_overlap():
    space = FinASpace.make({"a": 1})
    with pytest.raises(PreconditionError):
        separate(space, frozenset({"a"}), frozenset({"a"}))


def test_separate_postconditions_randomized():
    rng = Random(35)
    for _ in range(200):
        space = rand_space(rng, 5, 6)
        labels = list(space.labels)
        rng.shuffle(labels)
        cut1 = rng.randint(0, len(labels))
        cut2 = rng.randint(cut1, len(labels))
        a, b = frozenset(labels[:cut1]), frozenset(labels[cut1:cut2])
        policy = rng.choice(["left", "right"])
        u, v = separate(space, a, b, policy)
        assert a <= u and b <= v and not (u & v)
        for x in space.label_set() - (u | v):
            assert space.zeta_of(x) == 0


def test_space_json_roundtrip():
    space = FinASpace.make({"b": 3, "a": 2})
    assert FinASpace.from_json(space.to_json_dict()) == space
    with pytest.raises(MalformedInputError):
        FinASpace.from_json({"pts": {}})
    with pytest.raises(MalformedInputError):
        FinASpace.from_json({"points": {"a": -1}})
    m = amap({"x": 4}, {"y": 2}, {"x": "y"})
    assert AMapFin.from_json(m.to_json_dict()) == m
    assert amap_violations(amap({"x": 2}, {"y": 3}, {"x": "y"}))[0]["point"] == "x"
