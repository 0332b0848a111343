import itertools

import numpy as np
import pytest

from gradedcodes.errors import BudgetExceeded, EmptyPointSet, NonSquareOrder
from gradedcodes.gf import field_create, field_from_order
from gradedcodes.gpoly import den, enumerate_monomials, projective_solution_classes, GradedPolynomial
from gradedcodes.lincode import (
    InnerProduct,
    LinearCode,
    dual_code,
    evaluation_code,
    greedy_isotropic_subcode,
    inner_product,
    is_self_orthogonal,
    min_distance,
    weight_distribution,
    wprm_code,
    wprm_plane_dimension,
)
from gradedcodes.wgeom import WeightSystem, enumerate_wp_points
from conftest import generated_code_corpus


def test_repetition_code_from_degree_zero(gf7):
    ws = WeightSystem((1, 1))
    points = enumerate_wp_points(ws, gf7)
    code = evaluation_code(ws, 0, points, gf7)
    assert (code.length, code.k) == (8, 1)
    assert min_distance(code).value == 8


def test_projective_line_degree_one(gf7):
    ws = WeightSystem((1, 1))
    code = wprm_code(ws, 1, gf7)
    assert (code.length, code.k) == (8, 2)
    dist = min_distance(code)
    assert (dist.value, dist.exact) == (7, True)
    assert weight_distribution(code) == {0: 1, 7: 48}


def test_surface112_evaluation_code(gf5):
    ws = WeightSystem((2, 4, 6, 10))
    f = GradedPolynomial.parse(gf5, 4, "x0^10 + x1^5 + x2^2 + x3")
    points = projective_solution_classes(f, ws)
    code = evaluation_code(ws, 20, points, gf5)
    assert code.length == 112
    assert code.k == 20  # agrees with den(20) = 20: empty degree-20 vanishing slice
    # every stabilizer order here divides 20, so no representative caveat
    assert not code.provenance["rep_dependent"]
    odd = evaluation_code(
        WeightSystem((1, 2)), 1, enumerate_wp_points(WeightSystem((1, 2)), gf5), gf5
    )
    assert odd.provenance["rep_dependent"]  # the order-2 point, degree 1


def test_empty_point_set(gf5):
    with pytest.raises(EmptyPointSet):
        evaluation_code(WeightSystem((1, 1)), 1, [], gf5)


def test_dual_examples(gf2, hamming_and_simplex):
    rep3 = LinearCode.from_rows(gf2, [[1, 1, 1]])
    parity = dual_code(rep3)
    assert (parity.length, parity.k) == (3, 2)
    hamming, simplex = hamming_and_simplex
    assert (hamming.length, hamming.k) == (7, 4)
    assert min_distance(hamming).value == 3
    assert weight_distribution(hamming) == {0: 1, 3: 7, 4: 7, 7: 1}
    assert weight_distribution(simplex) == {0: 1, 4: 7}


def test_dual_identities_on_generated_corpus(rng):
    for code in generated_code_corpus(rng, count=25):
        dual = dual_code(code)
        assert code.k + dual.k == code.length
        assert dual_code(dual) == code
        if code.field.has_conjugation:
            hdual = dual_code(code, InnerProduct.HERMITIAN)
            assert code.k + hdual.k == code.length
            assert dual_code(hdual, InnerProduct.HERMITIAN) == code


def test_hermitian_examples(gf4):
    span = LinearCode.from_rows(gf4, [[1, 1]])
    assert is_self_orthogonal(span, InnerProduct.HERMITIAN).ok
    hdual = dual_code(span, InnerProduct.HERMITIAN)
    assert hdual.contains(span)[0]
    with pytest.raises(NonSquareOrder):
        dual_code(LinearCode.from_rows(field_create(2), [[1, 1]]), InnerProduct.HERMITIAN)


def test_self_orthogonality(gf2, hamming_and_simplex):
    hamming, simplex = hamming_and_simplex
    assert is_self_orthogonal(simplex).ok
    verdict = is_self_orthogonal(hamming)
    assert not verdict.ok and verdict.witness is not None
    i, j = verdict.witness
    assert (
        inner_product(
            gf2, hamming.generator.row(i), hamming.generator.row(j), InnerProduct.EUCLIDEAN
        )
        != 0
    )
    assert hamming.contains(simplex)[0]
    assert is_self_orthogonal(LinearCode.from_rows(gf2, [[1, 1]])).ok


def test_min_distance_budget_fallback(gf2, hamming_and_simplex):
    hamming, _ = hamming_and_simplex
    fresh = LinearCode.from_rows(gf2, hamming.generator.tolist())
    capped = min_distance(fresh, budget=4)
    assert not capped.exact
    assert capped.value >= 3  # a true upper bound
    assert capped.value <= min(
        fresh.length - fresh.k + 1,
        int(np.count_nonzero(fresh.generator.data, axis=1).min()),
    )
    # zero-dimensional code
    zero = dual_code(LinearCode.from_rows(gf2, [[1, 0], [0, 1]]))
    assert zero.k == 0
    assert min_distance(zero).value is None


def test_weight_distribution_properties(rng):
    for code in generated_code_corpus(rng, count=10):
        dist = weight_distribution(code)
        assert sum(dist.values()) == code.field.q**code.k
        assert dist[0] == 1
        positive = [w for w in dist if w > 0]
        assert min(positive) == min_distance(code).value
    with pytest.raises(BudgetExceeded):
        weight_distribution(
            LinearCode.from_rows(field_create(2), np.eye(20, dtype=int).tolist()),
            budget=100,
        )


def polynomial_side_max_zeros(ws, d, points, field):
    """Independent zero-count oracle: enumerate all degree-d forms directly."""
    monos = enumerate_monomials(ws, d)
    best = -1
    for coeffs in itertools.product(range(field.q), repeat=len(monos)):
        if not any(coeffs):
            continue
        f = GradedPolynomial(field, len(ws), {
            m: c for m, c in zip(monos, coeffs) if c
        })
        if f.is_zero():
            continue
        zeros = sum(1 for p in points if f.evaluate(p.rep) == 0)
        best = max(best, zeros)
    return best


@pytest.mark.parametrize(
    "weights,d,q",
    [((1, 1), 1, 3), ((1, 1), 1, 5), ((1, 2), 2, 3), ((1, 1), 2, 3)],
)
def test_distance_equals_points_minus_max_zeros(weights, d, q):
    field = field_from_order(q)
    ws = WeightSystem(weights)
    points = enumerate_wp_points(ws, field)
    code = evaluation_code(ws, d, points, field)
    max_zeros = polynomial_side_max_zeros(ws, d, points, field)
    assert min_distance(code).value == code.length - max_zeros


def test_singleton_on_exact_codes(rng):
    for code in generated_code_corpus(rng, count=20):
        dist = min_distance(code)
        if dist.exact and dist.value is not None:
            assert code.k + dist.value <= code.length + 1


def test_binary_self_orthogonal_even_weights(gf2, hamming_and_simplex):
    _, simplex = hamming_and_simplex
    assert is_self_orthogonal(simplex).ok
    assert all(w % 2 == 0 for w in weight_distribution(simplex))


def test_wprm_plane_dimension():
    trivial = wprm_plane_dimension(1, 1, 0, 5)
    assert trivial.closed_form == 1 == trivial.rank and trivial.agrees
    p2 = wprm_plane_dimension(1, 1, 1, 5)
    assert p2.rank == 3
    assert p2.experimental
    report = wprm_plane_dimension(1, 2, 4, 5)
    assert report.rank == wprm_code(WeightSystem((1, 1, 2)), 4, field_create(5)).k
    assert isinstance(report.agrees, bool)
    with pytest.raises(ValueError):
        wprm_plane_dimension(2, 4, 4, 5)


def test_greedy_isotropic_subcode(gf2, hamming_and_simplex):
    hamming, simplex = hamming_and_simplex
    sub = greedy_isotropic_subcode(hamming)
    assert is_self_orthogonal(sub).ok
    assert hamming.contains(sub)[0]
    # the simplex is already self-orthogonal: greedy keeps all of it
    again = greedy_isotropic_subcode(simplex)
    assert again.k == simplex.k


def test_code_json_round_trip(gf7):
    code = wprm_code(WeightSystem((1, 1)), 1, gf7)
    min_distance(code)
    weight_distribution(code)
    doc = code.to_json()
    back = LinearCode.from_json(doc)
    assert back == code
    assert back.to_json()["cached"] == doc["cached"]
    assert doc["provenance"]["degree"] == 1
