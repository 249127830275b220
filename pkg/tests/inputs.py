"""Seeded generators of random valid inputs shared by property and acceptance tests."""

from functools import lru_cache
from itertools import product

from homlie2.algebra import check_axioms, twist_by_morphism
from homlie2.catalog import TABLE_ROWS, admissible_parameters, build, enumerate_structures, oo, oo_alpha, oo_morphism
from homlie2.gf2k import GF2, GF4, GF16
from homlie2.linalg import Matrix
from homlie2.reps import Representation, adjoint_rep, trivial_rep, twist_representation
from homlie2.restricted import RestrictedHomLie2, abelian_restricted, restricted_examples, restricted_morphisms, twist_2_structure


@lru_cache(maxsize=None)
def survivors_12():
    return tuple(enumerate_structures((1, 2), GF2, "all"))


@lru_cache(maxsize=None)
def catalog_instances(q: int = 2):
    """Every admissible instance of every family over GF(q) that passes the axioms."""
    F = {2: GF2, 4: GF4}[q]
    out = []
    for name in ("oo", "oo_alpha") + TABLE_ROWS:
        for p in admissible_parameters(name, F):
            g = build(name, p, F, verify=False)
            if check_axioms(g).ok:
                out.append((name, p, g))
    return tuple(out)


def random_oo_morphism(F, rng):
    """A self-morphism of oo: (d1, d2, e1, e2) with d1 e2 + d2 e1 = 1."""
    while True:
        d1, d2, e1 = (rng.randrange(F.q) for _ in range(3))
        if d2 == 0:
            if d1 == 0:
                continue
            e2 = F.inv(d1)
        else:
            e2 = rng.randrange(F.q)
            e1 = F.div(1 ^ F.mul(d1, e2), d2)
        return oo_morphism(F, d1, d2, e1, e2)


def random_algebra(rng):
    kind = rng.randrange(4)
    if kind == 0:
        F = rng.choice((GF2, GF4, GF16))
        return oo_alpha(F, rng.randrange(F.q))
    if kind == 1:
        F = rng.choice((GF4, GF16))
        return twist_by_morphism(oo(F), random_oo_morphism(F, rng))
    if kind == 2:
        return rng.choice(survivors_12())
    return rng.choice(catalog_instances(rng.choice((2, 4))))[2]


def random_representation(rng):
    kind = rng.randrange(3)
    if kind == 0:
        return adjoint_rep(random_algebra(rng))
    if kind == 1:
        return trivial_rep(random_algebra(rng), rng.randint(1, 2))
    F = rng.choice((GF4, GF16))
    g = oo(F)
    a = random_oo_morphism(F, rng)
    return twist_representation(g, adjoint_rep(g), a, a)[1]


@lru_cache(maxsize=None)
def _restricted_pool():
    pool = []
    for r in restricted_examples(GF2).values():
        for a in restricted_morphisms(r):
            pool.append((r, a))
    return tuple(pool)


def random_restricted(rng):
    """A restricted Hom-Lie algebra together with a restricted self-morphism."""
    if rng.random() < 0.5:
        r, a = rng.choice(_restricted_pool())
        return r, a
    F = rng.choice((GF2, GF4))
    n = rng.randint(1, 3)
    base = abelian_restricted(F, n)
    tm = [tuple(rng.randrange(F.q) for _ in range(n)) for _ in range(n)]
    r = RestrictedHomLie2(base.algebra, tm)
    return r, Matrix.identity(F, n)


def twisted_restricted(rng):
    r, a = random_restricted(rng)
    return twist_2_structure(r, a)


def mutate_action(r, rng):
    """Flip one parity-respecting action entry."""
    g = r.algebra
    gp, mp = g.basis.parities, r.module_basis.parities
    while True:
        i = rng.randrange(g.dim)
        k, j = rng.randrange(r.dim), rng.randrange(r.dim)
        if mp[k] == gp[i] ^ mp[j]:
            break
    rows = [list(row) for row in r.action[i].rows]
    rows[k][j] ^= 1 + rng.randrange(r.field.q - 1)
    action = list(r.action)
    action[i] = Matrix(r.field, rows, r.dim)
    return Representation(g, r.module_basis, action, r.beta)


def even_invertible(F, m, n):
    for a in product(range(F.q), repeat=m * m):
        for b in product(range(F.q), repeat=n * n):
            rows = [[0] * (m + n) for _ in range(m + n)]
            for r in range(m):
                rows[r][:m] = a[r * m:(r + 1) * m]
            for r in range(n):
                rows[m + r][m:] = b[r * n:(r + 1) * n]
            M = Matrix(F, rows, m + n)
            if M.is_invertible():
                yield M
