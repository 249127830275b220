import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from homlie2.algebra import EVEN, HomLieSuper2, SuperBasis, check_axioms
from homlie2.catalog import oo, oo_alpha
from homlie2.cohomology import CochainPair, cochain_from_labels, cohomology, complex_for, is_coboundary, is_cocycle
from homlie2.deform import (
    EquivalenceMap,
    InvalidDeformationError,
    OrderMismatchError,
    TruncatedDeformation,
    check_deformation,
    check_equivalence,
    extend_order,
    extension_solvable_directly,
    first_order_is_cocycle,
    gauge_agrees_with_coboundary,
    gauge_by_first_order,
    gauge_first_order,
    infinitesimal_deformations,
    obstruction,
    random_equivariant_tau,
    transport,
    zero_term,
)
from homlie2.gf2k import GF2, GF4, GF16
from homlie2.linalg import Matrix, unit
from homlie2.restricted import heisenberg_restricted, queerify

import inputs


def random_even_combination(pool, F, rng):
    v = [0] * len(pool[0].values)
    for b in pool:
        a = rng.randrange(F.q)
        v = [x ^ F.mul(a, y) for x, y in zip(v, b.values)]
    return CochainPair(pool[0].complex, 2, v)


def even_cocycles(g):
    return cohomology(g, None, 2).cocycles[EVEN]


def test_order_zero_is_check_axioms():
    g = oo_alpha(GF16, 3)
    rep = check_deformation(TruncatedDeformation(g, []))
    assert rep.ok and rep.orders[0].ok == check_axioms(g).ok


def test_trivial_deformation_everywhere():
    g = oo_alpha(GF16, 3)
    d = TruncatedDeformation(g, [zero_term(g)] * 3)
    assert check_deformation(d).ok
    assert first_order_is_cocycle(d).ok
    assert obstruction(d.truncated(1)).pair.is_zero()
    r = extend_order(d)
    assert r.ok and r.verified and r.extended.terms[-1].is_zero()


def test_non_cocycle_fails_at_first_order():
    g = oo_alpha(GF16, 3)
    cx = complex_for(g, None)
    base = even_cocycles(g)[0]
    for v in cx.space(2, EVEN):
        bad = base + CochainPair(cx, 2, v)
        if not is_cocycle(bad):
            break
    d = TruncatedDeformation(g, [bad])
    rep = check_deformation(d)
    assert rep.first_failure() == 1
    assert rep.orders[1].failures()
    assert not first_order_is_cocycle(d).ok


@pytest.mark.parametrize("eps", [2, 3, 9])
def test_cohomology_classes_wrap_to_first_order(eps):
    g = oo_alpha(GF16, eps)
    for rep in cohomology(g, None, 2).representatives[EVEN]:
        d = TruncatedDeformation(g, [rep])
        assert check_deformation(d).ok and first_order_is_cocycle(d).ok


@given(st.integers(0, 10_000))
def test_first_order_iff_cocycle(seed):
    rng = random.Random(seed)
    g = inputs.random_algebra(rng)
    cx = complex_for(g, None)
    pool = [CochainPair(cx, 2, v) for v in cx.space(2, EVEN)]
    if not pool:
        return
    t = random_even_combination(pool, g.field, rng)
    assert check_deformation(TruncatedDeformation(g, [t])).ok == is_cocycle(t)


def test_obstruction_on_abelian_matches_direct_expansion():
    rng = random.Random(7)
    F = GF4
    g = HomLieSuper2(F, SuperBasis.standard(2, 2), alpha=Matrix(F, [[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 3]]))
    cx = complex_for(g, None)
    pool = [CochainPair(cx, 2, v) for v in cx.space(2, EVEN)]
    t = random_even_combination(pool, F, rng)
    d = TruncatedDeformation(g, [t])
    assert check_deformation(d).ok
    ob = obstruction(d)
    assert ob.compatible and ob.equivariant
    N = g.dim
    e = [unit(N, i) for i in range(N)]

    def add(*vs):
        return tuple(map(lambda *a: __import__("functools").reduce(lambda p, q: p ^ q, a), *vs))

    for a, b, c in combinations(range(N), 3):
        x, y, z = e[a], e[b], e[c]
        want = add(t.c(t.c(x, y), g.twist(z)), t.c(t.c(y, z), g.twist(x)), t.c(t.c(z, x), g.twist(y)))
        assert ob.pair.c(x, y, z) == want
    for i in g.basis.odd_indices:
        for j in range(N):
            x, y = e[i], e[j]
            want = add(t.c(t.p(x), g.twist(y)), t.c(t.c(x, y), g.twist(x)))
            assert ob.pair.p(x, y) == want


def _as_cochain(cx, h):
    labels = h.basis.labels
    values = cx.rep.module_basis.labels
    c = {(labels[i], labels[j]): dict(zip(values, v)) for i, j, v in h.bracket_items() if i != j}
    p = {(labels[i],): dict(zip(values, v)) for i, v in h.square_items()}
    return cochain_from_labels(cx, 2, c, p)


def test_abelian_deformed_toward_a_lie_superalgebra_extends_by_zero():
    target = oo(GF2)
    g = HomLieSuper2(GF2, target.basis)
    d = TruncatedDeformation(g, [_as_cochain(complex_for(g, None), target)])
    assert check_deformation(d).ok
    assert obstruction(d).pair.is_zero()
    d2 = d.extended(zero_term(g))
    assert check_deformation(d2).ok
    r = extend_order(d)
    assert r.ok and r.verified


@pytest.mark.parametrize("eps", [2, 3, 9])
def test_oo_alpha_classes_extend_through_order_four(eps):
    g = oo_alpha(GF16, eps)
    for rep in cohomology(g, None, 2).representatives[EVEN]:
        d = TruncatedDeformation(g, [rep])
        for n in range(2, 5):
            r = extend_order(d)
            assert r.ok and r.verified and r.obstruction.closed and r.obstruction.compatible
            d = r.extended
        assert d.order == 4


def test_obstructed_extension_reports_a_class():
    g = queerify(heisenberg_restricted(GF2))
    reps = cohomology(g, None, 2).representatives[EVEN]
    d = TruncatedDeformation(g, [reps[1] + reps[4]])
    r = extend_order(d)
    assert not r.ok
    assert r.obstruction.closed and r.obstruction.compatible and r.obstruction.equivariant
    assert r.class_coordinates is not None and any(r.class_coordinates)
    assert r.h3_dim == 38
    assert not extension_solvable_directly(d)


@settings(max_examples=25)
@given(st.integers(0, 10_000))
def test_extension_agrees_with_direct_solve(seed):
    rng = random.Random(seed)
    g = inputs.random_algebra(rng)
    cyc = even_cocycles(g)
    if not cyc:
        return
    d = TruncatedDeformation(g, [random_even_combination(cyc, g.field, rng)])
    for _ in range(2):
        r = extend_order(d)
        assert r.ok == extension_solvable_directly(d)
        assert r.obstruction.closed and r.obstruction.compatible
        if not r.ok:
            break
        assert r.verified
        d = r.extended


def test_obstruction_rejects_invalid_input():
    g = oo_alpha(GF16, 3)
    cx = complex_for(g, None)
    bad = next(CochainPair(cx, 2, v) for v in cx.space(2, EVEN) if not is_cocycle(CochainPair(cx, 2, v)))
    with pytest.raises(InvalidDeformationError):
        obstruction(TruncatedDeformation(g, [bad]))


def test_identity_equivalence():
    g = oo_alpha(GF16, 5)
    d = TruncatedDeformation(g, [cohomology(g, None, 2).representatives[EVEN][0]])
    ident = EquivalenceMap([Matrix.zeros(GF16, 5, 5)])
    assert check_equivalence(d, d, ident).ok


@pytest.mark.parametrize("seed", range(5))
def test_first_order_gauge_formula(seed):
    rng = random.Random(seed)
    g = oo_alpha(GF16, 1 + seed)
    d = TruncatedDeformation(g, [random_even_combination(even_cocycles(g), GF16, rng)])
    tau = random_equivariant_tau(g, 1, rng)
    d2 = gauge_by_first_order(d, tau.taus[0])
    assert check_equivalence(d, d2, tau).ok
    assert check_deformation(d2).ok


def test_random_tau_against_unrelated_deformation_fails():
    rng = random.Random(3)
    g = oo_alpha(GF16, 6)
    reps = cohomology(g, None, 2).representatives[EVEN]
    d1 = TruncatedDeformation(g, [reps[0]])
    d2 = TruncatedDeformation(g, [reps[1]])
    for _ in range(10):
        assert not check_equivalence(d1, d2, random_equivariant_tau(g, 1, rng)).ok


def test_equivalence_order_mismatch():
    g = oo_alpha(GF16, 6)
    d1 = TruncatedDeformation(g, [zero_term(g)])
    d2 = TruncatedDeformation(g, [zero_term(g)] * 2)
    with pytest.raises(OrderMismatchError):
        check_equivalence(d1, d2, EquivalenceMap([Matrix.identity(GF16, 5)]))


def _deep(g, rng, order):
    d = TruncatedDeformation(g, [random_even_combination(even_cocycles(g), g.field, rng)])
    while d.order < order:
        d = extend_order(d).extended
    return d


@pytest.mark.parametrize("seed", range(4))
def test_transport_with_complete_rule_preserves_validity(seed):
    rng = random.Random(seed)
    g = oo_alpha(GF4, 2 + seed % 2)
    d = _deep(g, rng, 4)
    tau = random_equivariant_tau(g, 4, rng)
    d2 = transport(d, tau, "complete")
    assert check_equivalence(d, d2, tau, "complete").ok
    assert check_deformation(d2).ok


@pytest.mark.parametrize("seed", range(4))
def test_rules_agree_below_order_three(seed):
    rng = random.Random(seed)
    g = oo_alpha(GF4, 2)
    d = _deep(g, rng, 2)
    tau = random_equivariant_tau(g, 2, rng)
    assert transport(d, tau, "printed") == transport(d, tau, "complete")


@pytest.mark.parametrize("seed", range(2))
def test_equivalence_preserves_validity_with_printed_squaring_rule(seed):
    rng = random.Random(seed)
    g = oo_alpha(GF4, 2)
    d = _deep(g, rng, 4)
    tau = random_equivariant_tau(g, 4, rng)
    d2 = transport(d, tau, "printed")
    assert check_equivalence(d, d2, tau, "printed").ok
    assert check_deformation(d2).ok


def test_gauge_on_coboundary_and_nontrivial_class():
    g = oo_alpha(GF16, 7)
    cx = complex_for(g, None)
    rng = random.Random(0)
    tau = random_equivariant_tau(g, 1, rng).taus[0]
    d0 = gauge_by_first_order(TruncatedDeformation(g, [zero_term(g)]), tau)
    w = gauge_first_order(d0)
    assert w is not None
    assert gauge_by_first_order(d0, w.taus[0]).terms[0].is_zero()
    for rep in cohomology(g, None, 2).representatives[EVEN]:
        assert gauge_first_order(TruncatedDeformation(g, [rep])) is None


def test_gauge_agrees_with_coboundary_on_catalog_cocycles():
    rng = random.Random(11)
    algebras = [oo(GF2), oo_alpha(GF4, 2), oo_alpha(GF16, 5), queerify(heisenberg_restricted(GF2))]
    algebras += [g for _, _, g in rng.sample(inputs.catalog_instances(2), 6)]
    checked = 0
    while checked < 50:
        for g in algebras:
            cyc = even_cocycles(g)
            if not cyc:
                continue
            d = TruncatedDeformation(g, [random_even_combination(cyc, g.field, rng)])
            assert gauge_agrees_with_coboundary(d)
            checked += 1
    assert checked >= 50


@given(st.integers(0, 10_000))
def test_infinitesimal_count_matches_even_cohomology(seed):
    g = inputs.random_algebra(random.Random(seed))
    ic = infinitesimal_deformations(g)
    res = cohomology(g, None, 2)
    assert ic.classes == res.parity_split[0]
    assert ic.valid == res.z_split[0]


def test_json_round_trip():
    g = oo_alpha(GF16, 3)
    d = _deep(g, random.Random(0), 3)
    assert TruncatedDeformation.from_json(d.to_json()) == d
    data = d.to_json()
    data["order"] = 5
    with pytest.raises(OrderMismatchError):
        TruncatedDeformation.from_json(data)
    tau = random_equivariant_tau(g, 2, random.Random(1))
    back = EquivalenceMap.from_json(GF16, tau.to_json())
    assert back.taus == tau.taus
