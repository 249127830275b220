import random

import pytest
from hypothesis import given, strategies as st

from homlie2.algebra import SuperBasis, check_axioms
from homlie2.catalog import oo, oo_alpha, oo_morphism
from homlie2.gf2k import GF2, GF4, GF16
from homlie2.linalg import Matrix
from homlie2.reps import (
    IncompatibleTwistError,
    InvalidRepresentationError,
    Representation,
    adjoint_rep,
    check_rep_as_morphism,
    check_representation,
    gl_hom_structure,
    gl_structure,
    semidirect_product,
    trivial_rep,
    twist_representation,
)

import inputs


def test_adjoint_representations_pass():
    assert check_representation(adjoint_rep(oo(GF2))).ok
    for eps in range(16):
        assert check_representation(adjoint_rep(oo_alpha(GF16, eps))).ok


def test_mutated_action_fails():
    rng = random.Random(1)
    r = adjoint_rep(oo_alpha(GF16, 3))
    assert sum(not check_representation(inputs.mutate_action(r, rng)).ok for _ in range(20)) == 20


def test_semidirect_examples():
    g = oo(GF2)
    sd = semidirect_product(adjoint_rep(g))
    assert sd.basis.sdim == (6, 4) and check_axioms(sd).ok
    for eps in range(1, 16):
        assert check_axioms(semidirect_product(adjoint_rep(oo_alpha(GF16, eps)))).ok
    zero = Representation(g, SuperBasis((), ()), [Matrix.zeros(GF2, 0, 0)] * 5)
    assert semidirect_product(zero) == g
    with pytest.raises(InvalidRepresentationError):
        semidirect_product(inputs.mutate_action(adjoint_rep(g), random.Random(0)))


def test_gl_examples():
    b = SuperBasis.standard(1, 1, even="v", odd="w")
    assert check_axioms(gl_hom_structure(1, 1, Matrix.identity(GF2, 2))).ok
    assert check_axioms(gl_hom_structure(1, 1, Matrix(GF4, [[1, 0], [0, 2]]))).ok
    beta = Matrix(GF16, [[3, 0], [0, 7]])
    ad = gl_structure(b, beta).alpha
    ad_inv = gl_structure(b, beta.inverse()).alpha
    assert ad @ ad_inv == Matrix.identity(GF16, 4)
    with pytest.raises(ZeroDivisionError):
        gl_hom_structure(1, 1, Matrix(GF4, [[1, 0], [0, 0]]))


@pytest.mark.parametrize("shape", [(1, 1), (2, 1)])
def test_gl_hom_structure_exhaustive_gf2(shape):
    betas = list(inputs.even_invertible(GF2, *shape))
    assert betas
    for beta in betas:
        assert check_axioms(gl_hom_structure(*shape, beta)).ok


def test_gl_hom_structure_sampled_gf4():
    rng = random.Random(0)
    betas = list(inputs.even_invertible(GF4, 2, 1))
    for beta in rng.sample(betas, 10):
        assert check_axioms(gl_hom_structure(2, 1, beta)).ok


@given(st.integers(0, 10_000))
def test_semidirect_of_random_valid_rep(seed):
    r = inputs.random_representation(random.Random(seed))
    assert check_axioms(semidirect_product(r)).ok


@given(st.integers(0, 10_000), st.booleans())
def test_representation_iff_morphism_into_gl(seed, mutate):
    rng = random.Random(seed)
    r = inputs.random_representation(rng)
    if not r.beta.is_invertible():
        return
    if mutate:
        r = inputs.mutate_action(r, rng)
    assert check_representation(r).ok == bool(check_rep_as_morphism(r))


def test_zero_map_into_gl():
    g = oo_alpha(GF4, 1)
    r = trivial_rep(g, 2)
    assert check_representation(r).ok and check_rep_as_morphism(r)


def test_twist_representation():
    g = oo(GF16)
    r = adjoint_rep(g)
    I = Matrix.identity(GF16, 5)
    gt, rt = twist_representation(g, r, I, I)
    assert gt == g and rt.action == r.action
    a = oo_morphism(GF16, 1, 0, 9, 1)
    gt, rt = twist_representation(g, r, a, a)
    assert gt == oo_alpha(GF16, 9)
    assert check_representation(rt).ok
    assert rt.action == adjoint_rep(gt).action
    with pytest.raises(IncompatibleTwistError):
        twist_representation(g, r, a, Matrix.identity(GF16, 5).scale(3))


@given(st.integers(0, 10_000))
def test_json_round_trip(seed):
    r = inputs.random_representation(random.Random(seed))
    assert Representation.from_json(r.to_json()).action == r.action
