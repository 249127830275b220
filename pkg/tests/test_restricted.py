import random

import pytest
from hypothesis import given, strategies as st

from homlie2.algebra import InvalidMorphismError, check_axioms
from homlie2.gf2k import GF2, GF4
from homlie2.linalg import Matrix, unit, vec_add
from homlie2.restricted import (
    InvalidTwoStructureError,
    RestrictedHomLie2,
    abelian_restricted,
    check_2_structure,
    check_queerify_twist_commute,
    heisenberg_restricted,
    one_dim_restricted,
    queerify,
    restricted_examples,
    restricted_morphisms,
    twist_2_structure,
)

import inputs


def test_examples_pass():
    for F in (GF2, GF4):
        for r in restricted_examples(F).values():
            assert check_2_structure(r).ok


def test_mutated_two_map_fails_and_queerification_breaks():
    r = restricted_examples(GF2)["two_dim"]
    bad = RestrictedHomLie2(r.algebra, {0: (1, 1)})
    assert not check_2_structure(bad).ok
    with pytest.raises(InvalidTwoStructureError):
        queerify(bad)
    assert not check_axioms(queerify(bad, validate=False)).ok


def test_twist_examples():
    r = restricted_examples(GF4)["two_dim"]
    assert twist_2_structure(r, Matrix.identity(GF4, 2)) == r
    for lam in range(4):
        a = Matrix(GF4, [[1, 0], [0, lam]])
        assert check_2_structure(twist_2_structure(r, a)).ok
        assert check_queerify_twist_commute(r, a)
    with pytest.raises(InvalidMorphismError):
        twist_2_structure(r, Matrix(GF4, [[0, 1], [1, 0]]))


def test_queerify_small_cases():
    q = queerify(abelian_restricted(GF2, 2))
    assert q.basis.sdim == (2, 2) and not q.square_items() and not list(q.bracket_items())
    q = queerify(one_dim_restricted(GF2))
    assert q.square(q.vec({"Pi(e)": 1})) == q.vec({"e": 1})
    assert q.bracket(q.vec({"e": 1}), q.vec({"Pi(e)": 1})) == (0, 0)
    assert check_axioms(q).ok


def test_commute_with_identity():
    r = heisenberg_restricted(GF2)
    assert check_queerify_twist_commute(r, Matrix.identity(GF2, 3))


def test_all_morphisms_commute_on_examples():
    for r in restricted_examples(GF2).values():
        for a in restricted_morphisms(r):
            assert check_queerify_twist_commute(r, a)


def test_morphism_search_guard():
    with pytest.raises(ValueError):
        restricted_morphisms(heisenberg_restricted(GF4))


@given(st.integers(0, 10_000))
def test_queerify_preserves_validity(seed):
    r = inputs.twisted_restricted(random.Random(seed))
    assert check_2_structure(r).ok
    assert check_axioms(queerify(r)).ok


@given(st.integers(0, 10_000))
def test_random_pairs_commute(seed):
    r, a = inputs.random_restricted(random.Random(seed))
    assert check_queerify_twist_commute(r, a)


@given(st.integers(0, 10_000))
def test_two_map_polarization_on_random_vectors(seed):
    rng = random.Random(seed)
    r = inputs.twisted_restricted(rng)
    F = r.field
    x = tuple(rng.randrange(F.q) for _ in range(r.dim))
    y = tuple(rng.randrange(F.q) for _ in range(r.dim))
    lhs = vec_add(vec_add(r.power(vec_add(x, y)), r.power(x)), r.power(y))
    assert lhs == r.algebra.bracket(x, y)
    lam = rng.randrange(F.q)
    assert r.power(tuple(F.mul(lam, a) for a in x)) == tuple(F.mul(F.sq(lam), a) for a in r.power(x))


def test_json_round_trip():
    for r in restricted_examples(GF4).values():
        assert RestrictedHomLie2.from_json(r.to_json()) == r
