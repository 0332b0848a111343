import itertools

import pytest

from gradedcodes.errors import ZeroTuple
from gradedcodes.gf import field_create, field_from_order
from gradedcodes.wgeom import (
    ARITHMETIC,
    GEOMETRIC,
    Height,
    OrbifoldData,
    WeightSystem,
    canonical_rep,
    count_wp_points_formula,
    enumerate_wp_points,
    orbit_of,
    point_from_canonical_rep,
    serre_bound,
    singular_census,
    weighted_height,
)


def test_weight_system_well_formedness():
    assert WeightSystem((1, 2)).well_formed
    assert not WeightSystem((2, 4, 6, 10)).well_formed
    with pytest.raises(ValueError):
        WeightSystem((0, 1))
    with pytest.raises(ValueError):
        WeightSystem(())


def test_canonical_rep_examples(gf5):
    ws = WeightSystem((1, 2))
    point = canonical_rep((4, 1), ws, gf5)
    assert point.rep == (1, 1)
    assert orbit_of((4, 1), ws, gf5) == {(4, 1), (3, 4), (2, 4), (1, 1)}

    point = canonical_rep((0, 1), ws, gf5)
    assert point.rep == (0, 1)
    assert point.orbit_size == 2
    assert point.stab_arith == 2
    assert orbit_of((0, 1), ws, gf5) == {(0, 1), (0, 4)}

    ws3 = WeightSystem((1, 5, 7))
    assert canonical_rep((3, 0, 0), ws3, gf5).rep == (1, 0, 0)

    with pytest.raises(ZeroTuple):
        canonical_rep((0, 0), ws, gf5)


def test_canonical_rep_constant_on_orbits(rng):
    for q in (3, 4, 5, 7):
        field = field_from_order(q)
        for weights in ((1, 2), (2, 3), (1, 2, 3)):
            ws = WeightSystem(weights)
            for _ in range(10):
                tup = tuple(rng.randrange(q) for _ in weights)
                if not any(tup):
                    continue
                base = canonical_rep(tup, ws, field)
                for lam in range(1, q):
                    scaled = tuple(
                        field.mul(field.pow(lam, w), x) for w, x in zip(weights, tup)
                    )
                    assert canonical_rep(scaled, ws, field) == base
                # idempotent
                assert canonical_rep(base.rep, ws, field) == base


def test_enumeration_examples(gf5, gf7, gf4):
    assert len(enumerate_wp_points(WeightSystem((1, 2)), gf5)) == 7
    assert len(enumerate_wp_points(WeightSystem((1, 1)), gf7)) == 8
    assert len(enumerate_wp_points(WeightSystem((1, 2)), gf4)) == 5


def test_count_formula_examples():
    assert count_wp_points_formula(WeightSystem((1, 2)), 5) == 7
    for n1 in (1, 2, 3):
        for q in (2, 3, 5, 9):
            assert count_wp_points_formula(WeightSystem((1,) * n1), q) == (
                q**n1 - 1
            ) // (q - 1)
    assert count_wp_points_formula(WeightSystem((1, 2, 3)), 7) == 60
    assert sum([1, 2, 3, 6, 6, 6, 36]) == 60


def test_wp_1_2_closed_form():
    for q in (3, 5, 7, 9):
        assert count_wp_points_formula(WeightSystem((1, 2)), q) == q + 2
    for q in (2, 4, 8):
        assert count_wp_points_formula(WeightSystem((1, 2)), q) == q + 1


def test_orbit_partition():
    for q, weights in ((5, (1, 2)), (7, (1, 2, 3)), (4, (2, 3))):
        field = field_from_order(q)
        points = enumerate_wp_points(WeightSystem(weights), field)
        assert sum(p.orbit_size for p in points) == q ** len(weights) - 1
        for p in points:
            assert p.orbit_size * p.stab_arith == q - 1


def test_formula_matches_enumeration_sample():
    for q in (2, 3, 4, 5):
        field = field_from_order(q)
        for weights in itertools.product((1, 2, 3), repeat=2):
            ws = WeightSystem(weights)
            assert count_wp_points_formula(ws, q) == len(
                enumerate_wp_points(ws, field)
            ), (weights, q)


def test_heights(gf5):
    ws = WeightSystem((1, 2))
    h = weighted_height(point_from_canonical_rep((2, 1), ws, gf5), ws, gf5)
    assert (h.lift, h.root) == (2, 1)
    assert weighted_height(point_from_canonical_rep((1, 1), ws, gf5), ws, gf5) == 1
    assert weighted_height(point_from_canonical_rep((0, 1), ws, gf5), ws, gf5) == 1
    # a nonunit coordinate under a root: exact cross-exponentiation
    h2 = weighted_height(point_from_canonical_rep((0, 2), ws, gf5), ws, gf5)
    assert (h2.lift, h2.root) == (2, 2)
    assert h2 < 2 and h2 > 1 and h2 == Height(2, 2)
    assert Height(4, 2) == Height(2, 1)
    assert Height(8, 3) == 2
    assert Height(3, 2) < Height(2, 1)
    assert Height(5, 2) > Height(2, 1)


def test_height_total_preorder(rng):
    values = [Height(rng.randrange(1, 30), rng.randrange(1, 5)) for _ in range(25)]
    values += [Height.INFINITE]
    for a in values:
        for b in values:
            assert (a < b) + (a == b) + (a > b) == 1
            if a <= b and b <= a:
                assert a == b
    ordered = sorted(values)
    floats = [float(h) for h in ordered]
    assert floats == sorted(floats)


def test_heights_at_least_one_with_unit_coordinate(rng, gf7):
    ws = WeightSystem((1, 2, 3))
    for _ in range(20):
        tup = tuple(rng.randrange(7) for _ in range(3))
        if not any(tup):
            continue
        point = canonical_rep(tup, ws, gf7)
        if 1 in point.rep:
            assert weighted_height(point, ws, gf7) >= 1


def test_census(gf5, gf7):
    ws = WeightSystem((1, 2))
    points = enumerate_wp_points(ws, gf5)
    census = singular_census(points)
    assert census.convention == GEOMETRIC
    assert sorted(e.order for e in census.entries) == [2, 2]
    assert sorted(e.point for e in census.entries) == [(0, 1), (0, 2)]
    # same under the arithmetic convention here: gcd(2, 4) = 2
    arith = singular_census(points, ARITHMETIC)
    assert sorted(e.order for e in arith.entries) == [2, 2]

    # weight-1 support entries never appear
    p1 = enumerate_wp_points(WeightSystem((1, 1)), gf5)
    assert singular_census(p1).entries == ()

    # every rational point with a nontrivial stabilizer is listed
    census123 = singular_census(enumerate_wp_points(WeightSystem((1, 2, 3)), gf7))
    assert sorted(e.order for e in census123.entries) == [2, 2, 3, 3, 3]

    roundtrip = OrbifoldData.from_json(census.to_json())
    assert roundtrip == census


def test_serre_bound():
    assert serre_bound(WeightSystem((1, 1)), 1, 7).value == 1
    bound = serre_bound(WeightSystem((1, 1, 2)), 4, 5)
    assert bound.value == 6 and bound.applicable and bound.interpretive
    inapplicable = serre_bound(WeightSystem((2, 3)), 2, 5)
    assert not inapplicable.applicable and inapplicable.value is None
    # independent cross-check of the first example: x0 = 0 in WP(1,1)
    field = field_create(7)
    points = [p for p in enumerate_wp_points(WeightSystem((1, 1)), field) if p.rep[0] == 0]
    assert len(points) == 1 <= serre_bound(WeightSystem((1, 1)), 1, 7).value


def test_point_json_record(gf5):
    ws = WeightSystem((1, 2))
    point = canonical_rep((0, 1), ws, gf5)
    record = point.to_json(ws, gf5)
    assert record == {
        "rep": [0, 1],
        "support": [1],
        "kS": 2,
        "stab_arith": 2,
        "orbit": 2,
        "height": {"lift": 1, "w": 2},
    }
