import math

import pytest

from gradedcodes.errors import (
    DegreeOutOfRange,
    DifferentialSquareNonzero,
    EmptyFiltration,
    ShapeMismatch,
)
from gradedcodes.chain import (
    ChainComplex,
    height_filtration,
    homological_code,
    homology,
    load_complex,
    restrict_to_grades,
    toric_code,
    toric_complex,
    toric_logical_witnesses,
)
from gradedcodes.gf import field_create
from gradedcodes.gpoly import GradedPolynomial, affine_points
from gradedcodes.matrix import MatrixGF
from gradedcodes.quantum import commutation_check, witness_upper_bound
from gradedcodes.wgeom import WeightSystem, canonical_rep, enumerate_wp_points


def two_term_zero(gf2, dims=(3, 2)):
    return load_complex(
        {
            "field": "q=2",
            "degrees": [0, 1],
            "dims": {"0": dims[0], "1": dims[1]},
            "diff": {"1": [[0] * dims[1] for _ in range(dims[0])]},
        }
    )


def test_load_valid_zero_complex(gf2):
    complex_ = two_term_zero(gf2)
    report = homology(complex_)
    assert report.betti == {0: 3, 1: 2}


def test_load_rejects_nonsquaring_differentials():
    with pytest.raises(DifferentialSquareNonzero) as err:
        load_complex(
            {
                "field": "q=2",
                "degrees": [0, 2],
                "dims": {"0": 1, "1": 1, "2": 1},
                "diff": {"1": [[1]], "2": [[1]]},
            }
        )
    assert err.value.degree == 2
    assert err.value.entry == (0, 0, 1)


def test_load_shape_validation():
    with pytest.raises(ShapeMismatch):
        load_complex(
            {
                "field": "q=2",
                "degrees": [0, 1],
                "dims": {"0": 2, "1": 2},
                "diff": {"1": [[1, 0]]},  # needs 2 rows
            }
        )
    with pytest.raises(ShapeMismatch):
        load_complex(
            {
                "field": "q=2",
                "degrees": [0, 2],
                "dims": {"0": 1, "2": 1},  # missing degree 1
                "diff": {},
            }
        )
    with pytest.raises(ShapeMismatch):
        load_complex(
            {
                "field": "q=2",
                "degrees": [0, 1],
                "dims": {"0": 1, "1": 2},
                "diff": {"1": [[0, 0]]},
                "grades": {"1": [4]},  # 1 label for dim 2
            }
        )


def test_toric_complex_structure():
    X = toric_complex(2)
    assert {d: X.dim(d) for d in X.degrees()} == {0: 4, 1: 8, 2: 4}
    assert X.diffs[2].rank() == 3
    assert X.diffs[1].rank() == 3
    assert X.diffs[1].matmul(X.diffs[2]).is_zero()
    assert {d: toric_complex(3).dim(d) for d in (0, 1, 2)} == {0: 9, 1: 18, 2: 9}
    with pytest.raises(ValueError):
        toric_complex(1)


def test_toric_homology():
    assert homology(toric_complex(2)).betti == {0: 1, 1: 2, 2: 1}
    assert homology(toric_complex(3)).betti[1] == 2


def test_homology_rank_nullity_and_euler():
    for L in (2, 3):
        X = toric_complex(L)
        report = homology(X)
        for d in X.degrees():
            out_rank = X.diffs[d].rank() if d in X.diffs else 0
            kernel = X.dim(d) - out_rank
            assert kernel + out_rank == X.dim(d)
        assert report.euler == sum(
            (-1) ** d * X.dim(d) for d in X.degrees()
        ) == sum((-1) ** d * b for d, b in report.betti.items()) == 0


def test_homological_codes():
    for L in (2, 3):
        code = homological_code(toric_complex(L), 1)
        assert (code.n, code.k, code.distance.value) == (2 * L * L, 2, L)
        assert code.distance.exact
        assert commutation_check(code).ok
    zero = two_term_zero(None)
    free = homological_code(zero, 1)
    assert (free.n, free.k) == (2, 2)
    assert free.h_x.rows == 0
    free0 = homological_code(zero, 0)
    assert (free0.n, free0.k) == (3, 3)
    with pytest.raises(DegreeOutOfRange):
        homological_code(zero, 2)


def test_toric_L4_witness_path():
    code = toric_code(4, distance_budget=10**3)
    assert (code.n, code.k) == (32, 2)
    info = witness_upper_bound(code, toric_logical_witnesses(4))
    assert info.kind == "upper" and info.value == 4


def test_toric_json_round_trip():
    X = toric_complex(2)
    Y = load_complex(X.to_json())
    assert Y.dims == X.dims
    assert all(Y.diffs[d] == X.diffs[d] for d in (1, 2))


def test_height_filtration_basics(gf5):
    ws = WeightSystem((1, 2))
    points = enumerate_wp_points(ws, gf5)
    filtration = height_filtration(points, ws, gf5, [1, 2, 4])
    assert filtration.dims() == [3, 7, 7]
    assert filtration.dims() == sorted(filtration.dims())
    level1 = filtration.levels[0]
    assert level1.code is not None and level1.code.length == 3
    doc = filtration.to_json()
    assert doc["levels"][0]["dim"] == 3

    with pytest.raises(EmptyFiltration):
        height_filtration(points, ws, gf5, [])
    with pytest.raises(ValueError):
        height_filtration(points, ws, gf5, [2, 1])


def test_height_filtration_small_heights(gf5):
    ws = WeightSystem((1, 1))
    from gradedcodes.wgeom import point_from_canonical_rep

    pts = [
        point_from_canonical_rep((0, 1), ws, gf5),
        point_from_canonical_rep((1, 0), ws, gf5),
        point_from_canonical_rep((1, 2), ws, gf5),
    ]
    # heights 1, 1, 2: threshold 1 keeps two points
    filtration = height_filtration(pts, ws, gf5, [1])
    assert filtration.dims() == [2]


def test_height_filtration_superelliptic_full_level(gf7):
    curve = GradedPolynomial.parse(gf7, 2, "x1^3 - (x0^4 + x0 + 1)")
    affine = affine_points(curve)
    ws = WeightSystem((1, 1, 1))
    points = [canonical_rep((1, x, y), ws, gf7) for x, y in affine]
    filtration = height_filtration(points, ws, gf7, [math.inf], build_codes=False)
    assert filtration.dims() == [12]
    assert filtration.levels[0].code is None


def test_restrict_to_grades(gf2):
    gf2 = field_create(2)
    # C_1 -> C_0 with labels; generator (0,j=5) maps only into j<=1 targets
    description = {
        "field": "q=2",
        "degrees": [0, 1],
        "dims": {"0": 3, "1": 2},
        "diff": {"1": [[1, 0], [1, 0], [0, 1]]},
        "grades": {"0": [0, 1, 9], "1": [[0, 1], [0, 9]]},
    }
    X = load_complex(description)
    sub = restrict_to_grades(X, 1)
    assert {d: sub.dim(d) for d in sub.degrees()} == {0: 2, 1: 1}
    assert sub.diffs[1].tolist() == [[1], [1]]
    # cutting at 0 drops the target of a kept generator? no: it drops the
    # generator too, leaving a valid (empty) degree-1 slice
    sub0 = restrict_to_grades(X, 0)
    assert {d: sub0.dim(d) for d in sub0.degrees()} == {0: 1, 1: 0}
    # a leaking differential is rejected
    bad = load_complex(
        {
            "field": "q=2",
            "degrees": [0, 1],
            "dims": {"0": 2, "1": 1},
            "diff": {"1": [[1], [1]]},
            "grades": {"0": [0, 9], "1": [0]},
        }
    )
    with pytest.raises(ShapeMismatch):
        restrict_to_grades(bad, 5)
    with pytest.raises(ShapeMismatch):
        restrict_to_grades(two_term_zero(None), 1)  # no labels at all
