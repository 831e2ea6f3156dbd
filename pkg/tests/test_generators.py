from fractions import Fraction
import json

import pytest
from sympy.functions.combinatorial.numbers import stirling

from sparsegreedy import (
    avg_height,
    carleson_exact,
    gen_dyadic,
    gen_line_family,
    gen_staircase,
    mu,
    pigeonhole_bound,
    verify_sparse_witness,
    SparseWitness,
)
from sparsegreedy.errors import GridTooLarge, ValidationError
from sparsegreedy.generators import FamilySpec, gen_random, generate, set_partitions
from sparsegreedy.jsonio import collection_to_json, dumps


def test_line_family_small():
    c = gen_line_family(2, 3)
    assert len(c) == 3
    assert all(mu(c.space, s) == 2 for _, s in c)
    assert carleson_exact(c).value == Fraction(3, 2)
    assert carleson_exact(gen_line_family(2, 1)).value == 1


@pytest.mark.parametrize("Lambda", [2, Fraction(5, 2), 10])
@pytest.mark.parametrize("M", [1, 4, 11])
def test_line_family_closed_forms(Lambda, M):
    Lambda = Fraction(Lambda)
    c = gen_line_family(Lambda, M)
    assert all(mu(c.space, s) == Lambda / (Lambda - 1) for _, s in c)
    assert avg_height(c) == M * Lambda / (Lambda - 1 + M)
    car = carleson_exact(c).value
    assert car == M * Lambda / (Lambda - 1 + M) <= Lambda
    tails = {sid: {sid: Fraction(1)} for sid in c.ids}
    assert verify_sparse_witness(c, SparseWitness(tails, Fraction(0))) == 1 / Lambda


def test_staircase_measures():
    c = gen_staircase(2, 5)
    assert all(mu(c.space, s) == 2 for _, s in c)
    c = gen_staircase(3, 2)
    assert all(mu(c.space, s) == Fraction(3, 2) for _, s in c)
    assert all(c.space.weight(a) == Fraction(1, 2) for a in c.space.ids if a != 0)


@pytest.mark.parametrize("Lambda", [2, 3, 6])
@pytest.mark.parametrize("k", [1, 3, 8])
def test_staircase_average_height(Lambda, k):
    j = Lambda - 2
    c = gen_staircase(Lambda, 10).subcollection(range(k))
    assert avg_height(c) == Fraction(k * (2 + j), 1 + j + k)


def test_staircase_extra_stairs():
    c = gen_staircase(2, 3, stairs=[0, 1, 2])
    assert len(c) == 9
    masses = sorted({mu(c.space, s) for _, s in c})
    assert masses == [Fraction(4, 3), Fraction(3, 2), 2]


def test_staircase_rejects_fractional_lambda():
    with pytest.raises(ValidationError):
        gen_staircase(Fraction(5, 2), 3)


def test_dyadic_deterministic():
    a = gen_dyadic("intervals", 1, 3, 5, 7)
    b = gen_dyadic("intervals", 1, 3, 5, 7)
    assert len(a.space) == 8 and len(a) == 5
    assert dumps(collection_to_json(a)) == dumps(collection_to_json(b))
    assert dumps(collection_to_json(a)) != dumps(collection_to_json(gen_dyadic("intervals", 1, 3, 5, 8)))


def test_dyadic_sets_are_dyadic():
    c = gen_dyadic("intervals", 1, 4, 30, 3)
    for _, s in c:
        ids = s.atom_ids
        size = len(ids)
        assert size & (size - 1) == 0
        assert ids[0] % size == 0 and ids == list(range(ids[0], ids[0] + size))


def test_dyadic_small_cases():
    c = gen_dyadic("rectangles", 2, 2, 1, 0)
    assert carleson_exact(c).value == 1
    c = gen_dyadic("intervals", 1, 0, 4, 0)
    assert all(s.atom_ids == [0] for _, s in c)
    assert carleson_exact(c).value == 4
    with pytest.raises(GridTooLarge):
        gen_dyadic("rectangles", 3, 6, 1, 0)


def test_pigeonhole_bound():
    assert pigeonhole_bound("line", 10, 27, 3) == 5
    assert pigeonhole_bound("line", 2, 4, 4) == 1
    assert pigeonhole_bound("staircase", 10, 1000, 3) == Fraction(3340, 343) > 5


@pytest.mark.parametrize("m, n", [(1, 1), (4, 2), (6, 3), (8, 3), (7, 7)])
def test_set_partitions_count(m, n):
    parts = list(set_partitions(range(m), n))
    assert len(parts) == stirling(m, n)
    assert len({tuple(map(tuple, p)) for p in parts}) == len(parts)
    assert all(len(p) == n and all(p) for p in parts)


def test_random_family_reproducible():
    assert dumps(collection_to_json(gen_random(5, 6, 9))) == dumps(collection_to_json(gen_random(5, 6, 9)))


def test_generate_dispatch():
    assert len(generate(FamilySpec("line", Fraction(3), 4))) == 4
    assert len(generate(FamilySpec("staircase", Fraction(3), 4))) == 4
    assert len(generate(FamilySpec("dyadic_rectangles", count=3, dimension=2, depth=2, seed=1))) == 3
    with pytest.raises(ValidationError):
        generate(FamilySpec("nope"))
    json.dumps(FamilySpec("line", stairs=(1, 2)).to_json())
