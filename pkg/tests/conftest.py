"""Shared builders for the test suite.

Tests use a seeded RNG for sampled properties; the library itself has no
randomness anywhere.
"""

from __future__ import annotations

import random

import pytest

from gradedcodes.gf import FieldSpec, field_create
from gradedcodes.lincode import LinearCode, dual_code

# every order with a default modulus, plus the primes up to the cap
TABLE_ORDERS = [4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 169]
PRIME_ORDERS = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127,
                131, 137, 139, 149, 151, 157, 163, 167]


def all_supported_fields() -> list[FieldSpec]:
    fields = [field_create(p) for p in PRIME_ORDERS]
    from gradedcodes.gf import field_from_order

    fields += [field_from_order(q) for q in TABLE_ORDERS]
    return fields


@pytest.fixture(scope="session")
def rng() -> random.Random:
    return random.Random(20260810)


@pytest.fixture(scope="session")
def gf2() -> FieldSpec:
    return field_create(2)


@pytest.fixture(scope="session")
def gf4() -> FieldSpec:
    return field_create(2, 2)


@pytest.fixture(scope="session")
def gf5() -> FieldSpec:
    return field_create(5)


@pytest.fixture(scope="session")
def gf7() -> FieldSpec:
    return field_create(7)


@pytest.fixture(scope="session")
def gf9() -> FieldSpec:
    return field_create(3, 2, [1, 0, 1])


def hamming_pair(gf2: FieldSpec) -> tuple[LinearCode, LinearCode]:
    """(hamming [7,4], simplex [7,3]) from the all-nonzero-columns check."""
    parity = [[0, 0, 0, 1, 1, 1, 1], [0, 1, 1, 0, 0, 1, 1], [1, 0, 1, 0, 1, 0, 1]]
    simplex = LinearCode.from_rows(gf2, parity)
    return dual_code(simplex), simplex


@pytest.fixture(scope="session")
def hamming_and_simplex(gf2):
    return hamming_pair(gf2)


def generated_code_corpus(rng: random.Random, count: int = 50) -> list[LinearCode]:
    """Deterministic batch of small codes over several fields."""
    from gradedcodes.gf import field_from_order

    corpus = []
    orders = [2, 3, 4, 5, 7, 9]
    while len(corpus) < count:
        q = rng.choice(orders)
        field = field_from_order(q)
        m = rng.randint(3, 12)
        k = rng.randint(1, min(m, 4))
        rows = [[rng.randrange(q) for _ in range(m)] for _ in range(k)]
        code = LinearCode.from_rows(field, rows, length=m)
        if code.k > 0:
            corpus.append(code)
    return corpus
