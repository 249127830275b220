"""Formal deformations truncated at a finite order: validity, obstructions, extension and equivalence."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, combinations_with_replacement
from typing import Sequence

from .algebra import EVEN, ODD, AxiomReport, HomLieSuper2, Verdict, _first_failure, check_axioms
from .cohomology import (
    CochainComplex,
    CochainPair,
    class_coordinates,
    cohomology,
    complex_for,
    is_coboundary,
    is_cocycle,
)
from .linalg import Matrix, axpy, solve_rows, unit
from .reps import adjoint_rep


class InvalidDeformationError(ValueError):
    def __init__(self, order: int, report: AxiomReport):
        super().__init__(f"deformation fails at t^{order}: {report.failures()}")
        self.order = order
        self.report = report


class OrderMismatchError(ValueError):
    pass


def _vadd(*vs):
    out = list(vs[0])
    for v in vs[1:]:
        for k, a in enumerate(v):
            out[k] ^= a
    return tuple(out)


class TruncatedDeformation:
    """[x, y]_t = [x, y] + sum c_i(x, y) t^i and s_t(x) = s(x) + sum p_i(x) t^i for i = 1..order."""

    def __init__(self, algebra: HomLieSuper2, terms: Sequence[CochainPair] = ()):
        self.algebra = algebra
        self.complex: CochainComplex = complex_for(algebra, adjoint_rep(algebra))
        fixed = []
        for t in terms:
            if t.degree != 2:
                raise ValueError("deformation terms are degree-2 cochains")
            if t.complex is not self.complex:
                t = CochainPair(self.complex, 2, t.values)
            fixed.append(t)
        self.terms = tuple(fixed)

    @property
    def order(self) -> int:
        return len(self.terms)

    def c(self, i: int, x, y) -> tuple[int, ...]:
        if i == 0:
            return self.algebra.bracket(x, y)
        if i > self.order:
            return (0,) * self.algebra.dim
        return self.terms[i - 1].c(x, y)

    def p(self, i: int, x) -> tuple[int, ...]:
        if i == 0:
            return self.algebra.square(x)
        if i > self.order:
            return (0,) * self.algebra.dim
        return self.terms[i - 1].p(x)

    def extended(self, term: CochainPair) -> "TruncatedDeformation":
        return TruncatedDeformation(self.algebra, self.terms + (term,))

    def truncated(self, order: int) -> "TruncatedDeformation":
        return TruncatedDeformation(self.algebra, self.terms[:order])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedDeformation)
            and self.algebra == other.algebra
            and [t.values for t in self.terms] == [t.values for t in other.terms]
        )

    def __hash__(self) -> int:
        return hash((self.algebra, tuple(t.values for t in self.terms)))

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.to_json(),
            "order": self.order,
            "terms": [{"c": t.to_json()["c"], "p": t.to_json()["p"]} for t in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict, algebra: HomLieSuper2 | None = None) -> "TruncatedDeformation":
        g = algebra if algebra is not None else HomLieSuper2.from_json(data["algebra"])
        cx = complex_for(g, adjoint_rep(g))
        terms = [CochainPair.from_json(cx, {"degree": 2, **t}) for t in data.get("terms", [])]
        if "order" in data and int(data["order"]) != len(terms):
            raise OrderMismatchError(f"order {data['order']} but {len(terms)} terms")
        return cls(g, terms)


def zero_term(g: HomLieSuper2) -> CochainPair:
    cx = complex_for(g, adjoint_rep(g))
    return CochainPair(cx, 2, [0] * cx.layout(2).ncoords)


def _order_report(d: TruncatedDeformation, n: int) -> AxiomReport:
    """Vanishing of the t^n coefficient of every axiom."""
    g = d.algebra
    N = g.dim
    labels = g.basis.labels
    par = g.basis.parities
    A = g.alpha
    e = [unit(N, i) for i in range(N)]
    report = AxiomReport()
    if n == 0:
        return check_axioms(g)
    term = d.terms[n - 1] if n <= d.order else None
    if term is not None and term.parity not in (EVEN,):
        report.verdicts["parity"] = Verdict(False, "deformation terms are even", {"order": n})
    else:
        report.verdicts["parity"] = Verdict(True, "deformation terms are even")

    def jacobi_cases():
        for a, b, c in combinations_with_replacement(range(N), 3):
            if par[a] + par[b] + par[c] > 1:
                continue
            x, y, z = e[a], e[b], e[c]
            acc = (0,) * N
            for i in range(n + 1):
                j = n - i
                for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
                    acc = _vadd(acc, d.c(i, A.apply(u), d.c(j, v, w)))
            yield {"x": labels[a], "y": labels[b], "z": labels[c], "order": n}, acc, (0,) * N

    report.verdicts["hom_jacobi"] = _first_failure(jacobi_cases(), f"t^{n}: cyclic sum of [a(x), [y, z]_t]_t")

    def squaring_cases():
        for xl, x in g.odd_test_vectors():
            ax = A.apply(x)
            for k in range(N):
                ay = A.column(k)
                lhs = (0,) * N
                rhs = (0,) * N
                for i in range(n + 1):
                    j = n - i
                    lhs = _vadd(lhs, d.c(i, d.p(j, x), ay))
                    rhs = _vadd(rhs, d.c(i, ax, d.c(j, x, e[k])))
                yield {"x": xl, "y": labels[k], "order": n}, lhs, rhs

    report.verdicts["squaring_jacobi"] = _first_failure(squaring_cases(), f"t^{n}: [s_t(x), a(y)]_t = [a(x), [x, y]_t]_t")

    def mult_cases():
        for a, b in combinations(range(N), 2):
            yield {"x": labels[a], "y": labels[b], "order": n}, A.apply(d.c(n, e[a], e[b])), d.c(n, A.column(a), A.column(b))

    report.verdicts["multiplicative_bracket"] = _first_failure(mult_cases(), f"t^{n}: a(c(x, y)) = c(a(x), a(y))")

    def mult_sq_cases():
        for xl, x in g.odd_test_vectors():
            yield {"x": xl, "order": n}, A.apply(d.p(n, x)), d.p(n, A.apply(x))

    report.verdicts["multiplicative_squaring"] = _first_failure(mult_sq_cases(), f"t^{n}: a(p(x)) = p(a(x))")
    return report


@dataclass
class DeformationReport:
    orders: list[AxiomReport]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.orders)

    def first_failure(self) -> int | None:
        for n, r in enumerate(self.orders):
            if not r.ok:
                return n
        return None

    def to_json(self) -> dict:
        return {"ok": self.ok, "orders": [{"order": n, **r.to_json()} for n, r in enumerate(self.orders)]}


def check_deformation(d: TruncatedDeformation, upto: int | None = None) -> DeformationReport:
    N = d.order if upto is None else upto
    return DeformationReport([_order_report(d, n) for n in range(N + 1)])


def first_order_is_cocycle(d: TruncatedDeformation) -> Verdict:
    if d.order < 1:
        return Verdict(True, "no first-order term")
    t = d.terms[0]
    if is_cocycle(t):
        return Verdict(True, "first-order term is a 2-cocycle")
    return Verdict(False, "first-order term is a 2-cocycle", {"d2": d.complex.d(2, t.values)})


# obstructions


@dataclass
class ObstructionPair:
    n: int
    pair: CochainPair
    compatible: bool
    equivariant: bool
    closed: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "pair": self.pair.to_json(),
            "compatible": self.compatible,
            "equivariant": self.equivariant,
            "closed": self.closed,
        }


def _C(d: TruncatedDeformation, n: int, x, y, z):
    A = d.algebra.alpha
    acc = (0,) * d.algebra.dim
    for i in range(1, n):
        j = n - i
        for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
            acc = _vadd(acc, d.c(i, d.c(j, u, v), A.apply(w)))
    return acc


def _Q(d: TruncatedDeformation, n: int, x, y):
    A = d.algebra.alpha
    acc = (0,) * d.algebra.dim
    for i in range(1, n):
        j = n - i
        acc = _vadd(acc, d.c(i, d.p(j, x), A.apply(y)), d.c(i, d.c(j, x, y), A.apply(x)))
    return acc


def obstruction(d: TruncatedDeformation, check: bool = True) -> ObstructionPair:
    """(C_n, Q_n) for n = order + 1, assembled from the lower terms."""
    n = d.order + 1
    if n < 2:
        raise ValueError("obstructions start at n = 2")
    if check:
        rep = check_deformation(d)
        if not rep.ok:
            k = rep.first_failure()
            raise InvalidDeformationError(k, rep.orders[k])
    g = d.algebra
    N = g.dim
    cx = d.complex
    lay = cx.layout(3)
    e = [unit(N, i) for i in range(N)]
    D = lay.d
    vals = [0] * lay.ncoords
    for s, (a, b, c) in enumerate(lay.c_slots):
        vals[s * D:(s + 1) * D] = _C(d, n, e[a], e[b], e[c])
    for (i, (k,)) in lay.p_slots:
        s = lay.p_index[(i, (k,))]
        vals[s * D:(s + 1) * D] = _Q(d, n, e[i], e[k])
    pair = CochainPair(cx, 3, vals)
    compatible = True
    odd = g.basis.odd_indices
    for i, j in combinations(odd, 2):
        for k in range(N):
            lhs = _vadd(_Q(d, n, _vadd(e[i], e[j]), e[k]), _Q(d, n, e[i], e[k]), _Q(d, n, e[j], e[k]))
            if lhs != _C(d, n, e[i], e[j], e[k]) or pair.p(_vadd(e[i], e[j]), e[k]) != _Q(d, n, _vadd(e[i], e[j]), e[k]):
                compatible = False
    return ObstructionPair(n, pair, compatible, pair.is_cochain(), is_cocycle(pair))


@dataclass
class ExtensionResult:
    extended: TruncatedDeformation | None
    obstruction: ObstructionPair
    verified: bool | None = None
    class_coordinates: tuple[int, ...] | None = None
    h3_dim: int | None = None

    @property
    def ok(self) -> bool:
        return self.extended is not None

    def to_json(self) -> dict:
        return {
            "extends": self.ok,
            "n": self.obstruction.n,
            "verified": self.verified,
            "obstruction_closed": self.obstruction.closed,
            "obstruction_compatible": self.obstruction.compatible,
            "h3_dim": self.h3_dim,
            "class_coordinates": list(self.class_coordinates) if self.class_coordinates is not None else None,
            "new_term": self.extended.terms[-1].to_json() if self.extended is not None else None,
        }


def solve_even_preimage(cx: CochainComplex, degree: int, target: Sequence[int]) -> tuple[int, ...] | None:
    """Coordinates of an even degree-`degree` cochain w with d(w) = target, or None."""
    F = cx.field
    basis = cx.space(degree, EVEN)
    if not basis:
        return tuple([0] * cx.layout(degree).ncoords) if not any(target) else None
    images = [cx.d(degree, v) for v in basis]
    rows = [[img[t] for img in images] for t in range(len(target))]
    sol = solve_rows(F, rows, len(basis), target)
    if sol is None:
        return None
    acc = [0] * cx.layout(degree).ncoords
    for a, v in zip(sol, basis):
        if a:
            axpy(F, acc, a, v)
    return tuple(acc)


def extend_order(d: TruncatedDeformation) -> ExtensionResult:
    """Solve d^2(c_n, p_n) = (C_n, Q_n) over even equivariant pairs, or report the obstruction class."""
    ob = obstruction(d)
    cx = d.complex
    w = solve_even_preimage(cx, 2, ob.pair.values)
    if w is not None:
        ext = d.extended(CochainPair(cx, 2, w))
        verified = check_deformation(ext).ok
        return ExtensionResult(ext, ob, verified=verified)
    res = ExtensionResult(None, ob)
    if ob.closed and ob.equivariant:
        h3 = cohomology(d.algebra, cx.rep, 3)
        res.h3_dim = h3.dim_H
        res.class_coordinates = class_coordinates(h3, ob.pair)
    return res


# equivalence


@dataclass
class EquivalenceMap:
    """tau = id + sum tau_i t^i; tau_i are even endomorphisms."""

    taus: tuple[Matrix, ...]

    def __init__(self, taus: Sequence[Matrix]):
        self.taus = tuple(taus)

    @property
    def order(self) -> int:
        return len(self.taus)

    def tau(self, i: int, x) -> tuple[int, ...]:
        if i == 0:
            return tuple(x)
        if i > self.order:
            return (0,) * len(x)
        return self.taus[i - 1].apply(x)

    def to_json(self) -> dict:
        return {"taus": [t.to_json() for t in self.taus]}

    @classmethod
    def from_json(cls, F, data: dict) -> "EquivalenceMap":
        return cls([Matrix.from_json(F, t) for t in data["taus"]])


def check_equivalence(
    d1: TruncatedDeformation,
    d2: TruncatedDeformation,
    tau: EquivalenceMap,
    squaring_rule: str = "printed",
) -> Verdict:
    """tau: d2 -> d1 is an isomorphism modulo t^{N+1}, checked order by order.

    ``squaring_rule='printed'`` uses the squaring identity with the cross
    terms [tau_u(x), tau_v(x)] (1 <= u < v) only under c_j for j >= 1;
    ``'complete'`` also includes j = 0, which follows from expanding
    s_t(tau(x)) directly and matters from order 3 on.
    """
    if d1.algebra != d2.algebra:
        raise ValueError("deformations of different algebras")
    if d1.order != d2.order:
        raise OrderMismatchError(f"orders {d1.order} and {d2.order} differ")
    if squaring_rule not in ("printed", "complete"):
        raise ValueError("squaring_rule must be 'printed' or 'complete'")
    g = d1.algebra
    N = g.dim
    labels = g.basis.labels
    par = g.basis.parities
    e = [unit(N, i) for i in range(N)]
    A = g.alpha
    for i, T in enumerate(tau.taus, start=1):
        if T.shape != (N, N):
            raise OrderMismatchError(f"tau_{i} has shape {T.shape}")
        for r in range(N):
            for c in range(N):
                if T[r, c] and par[r] != par[c]:
                    return Verdict(False, "tau_i is even", {"i": i, "entry": [labels[r], labels[c]]})
        if T @ A != A @ T:
            return Verdict(False, "tau_i commutes with the twist", {"i": i})
    j0 = 0 if squaring_rule == "complete" else 1
    for n in range(1, d1.order + 1):
        for a, b in combinations(range(N), 2):
            x, y = e[a], e[b]
            lhs = (0,) * N
            for i in range(n + 1):
                lhs = _vadd(lhs, tau.tau(i, d2.c(n - i, x, y)))
            rhs = (0,) * N
            for i in range(n + 1):
                for j in range(n - i + 1):
                    rhs = _vadd(rhs, d1.c(i, tau.tau(j, x), tau.tau(n - i - j, y)))
            if lhs != rhs:
                return Verdict(False, f"t^{n}: tau o c~ = c o (tau x tau)", {"x": labels[a], "y": labels[b], "lhs": lhs, "rhs": rhs})
        for xl, x in g.odd_test_vectors():
            lhs = (0,) * N
            for i in range(n + 1):
                lhs = _vadd(lhs, tau.tau(i, d2.p(n - i, x)))
            rhs = (0,) * N
            for i in range(n + 1):
                rhs = _vadd(rhs, d1.c(i, x, tau.tau(n - i, x)))
            for i in range(n // 2 + 1):
                rhs = _vadd(rhs, d1.p(n - 2 * i, tau.tau(i, x)))
            for u in range(1, n + 1):
                for v in range(u + 1, n + 1):
                    j = n - u - v
                    if j >= j0:
                        rhs = _vadd(rhs, d1.c(j, tau.tau(u, x), tau.tau(v, x)))
            if lhs != rhs:
                return Verdict(False, f"t^{n}: tau o s~ = s o tau", {"x": xl, "lhs": lhs, "rhs": rhs})
    return Verdict(True, "equivalent modulo t^{N+1}")


def gauge_by_first_order(d: TruncatedDeformation, tau1: Matrix) -> TruncatedDeformation:
    """The order-1 deformation equivalent to d through id + tau1 t."""
    if d.order != 1:
        raise OrderMismatchError("gauge transform is implemented at order 1")
    cx = d.complex
    w = cx.d(1, tau_to_cochain(cx, tau1).values)
    return TruncatedDeformation(d.algebra, [CochainPair(cx, 2, [a ^ b for a, b in zip(d.terms[0].values, w)])])


def tau_to_cochain(cx: CochainComplex, tau1: Matrix) -> CochainPair:
    lay = cx.layout(1)
    D = lay.d
    vals = [0] * lay.ncoords
    for s, (i,) in enumerate(lay.c_slots):
        vals[s * D:(s + 1) * D] = tau1.column(i)
    return CochainPair(cx, 1, vals)


def cochain_to_tau(pair: CochainPair) -> Matrix:
    lay = pair.layout
    cols = [pair.slot_value(lay.c_index[(i,)]) for i in range(len(lay.c_slots))]
    return Matrix.from_columns(pair.field, cols)


def gauge_first_order(d: TruncatedDeformation) -> EquivalenceMap | None:
    """tau_1 with d^1 tau_1 = (c_1, p_1) in even equivariant 1-cochains, or None when the class is nontrivial."""
    if d.order < 1:
        raise OrderMismatchError("no first-order term")
    cx = d.complex
    w = solve_even_preimage(cx, 1, d.terms[0].values)
    if w is None:
        return None
    return EquivalenceMap([cochain_to_tau(CochainPair(cx, 1, w))])


def gauge_agrees_with_coboundary(d: TruncatedDeformation) -> bool:
    witness = gauge_first_order(d)
    cob = is_coboundary(d.algebra, d.complex.rep, d.terms[0])
    return (witness is None) == (cob is None)


# first-order classes counted without the cochain differential


def _order_defect(d: TruncatedDeformation, n: int) -> tuple[int, ...]:
    """Every t^n axiom coefficient concatenated; affine in the n-th term."""
    g = d.algebra
    N = g.dim
    A = g.alpha
    par = g.basis.parities
    e = [unit(N, i) for i in range(N)]
    out: list[int] = []
    for a, b, c in combinations_with_replacement(range(N), 3):
        if par[a] + par[b] + par[c] > 1:
            continue
        acc = (0,) * N
        for i in range(n + 1):
            for u, v, w in ((e[a], e[b], e[c]), (e[b], e[c], e[a]), (e[c], e[a], e[b])):
                acc = _vadd(acc, d.c(i, A.apply(u), d.c(n - i, v, w)))
        out.extend(acc)
    for _, x in g.odd_test_vectors():
        ax = A.apply(x)
        for k in range(N):
            ay = A.column(k)
            acc = (0,) * N
            for i in range(n + 1):
                acc = _vadd(acc, d.c(i, d.p(n - i, x), ay), d.c(i, ax, d.c(n - i, x, e[k])))
            out.extend(acc)
        out.extend(_vadd(A.apply(d.p(n, x)), d.p(n, ax)))
    for a, b in combinations(range(N), 2):
        out.extend(_vadd(A.apply(d.c(n, e[a], e[b])), d.c(n, A.column(a), A.column(b))))
    return tuple(out)


def extension_solvable_directly(d: TruncatedDeformation) -> bool:
    """Whether some even next term makes the axioms hold at the next order, solved from the axioms alone."""
    from .linalg import solve_rows as _solve

    g = d.algebra
    F = g.field
    n = d.order + 1
    cx = d.complex
    lay = cx.layout(2)
    zero = [0] * lay.ncoords
    base = _order_defect(d.extended(CochainPair(cx, 2, zero)), n)
    cols = []
    for k in lay.coords_of_parity(EVEN):
        w = list(zero)
        w[k] = 1
        img = _order_defect(d.extended(CochainPair(cx, 2, w)), n)
        cols.append([a ^ b for a, b in zip(img, base)])
    if not cols:
        return not any(base)
    rows = [[c[t] for c in cols] for t in range(len(base))]
    return _solve(F, rows, len(cols), base) is not None


def _gauge_image(g: HomLieSuper2, cx: CochainComplex, T: Matrix) -> tuple[int, ...]:
    """(c1, p1) = (tau[x, y] + [x, tau y] + [y, tau x], tau s(x) + [x, tau x]) on the free slots."""
    lay = cx.layout(2)
    N = g.dim
    e = [unit(N, i) for i in range(N)]
    vals = [0] * lay.ncoords
    D = lay.d
    for s, (a, b) in enumerate(lay.c_slots):
        x, y = e[a], e[b]
        vals[s * D:(s + 1) * D] = _vadd(T.apply(g.bracket(x, y)), g.bracket(x, T.apply(y)), g.bracket(y, T.apply(x)))
    for (i, t) in lay.p_slots:
        s = lay.p_index[(i, t)]
        x = e[i]
        vals[s * D:(s + 1) * D] = _vadd(T.apply(g.square(x)), g.bracket(x, T.apply(x)))
    return tuple(vals)


@dataclass
class InfinitesimalCount:
    valid: int
    trivial: int

    @property
    def classes(self) -> int:
        return self.valid - self.trivial

    def to_json(self) -> dict:
        return {"valid_first_order": self.valid, "trivial_first_order": self.trivial, "classes": self.classes}


def infinitesimal_deformations(g: HomLieSuper2) -> InfinitesimalCount:
    """Dimensions of even first-order deformations and of those equivalent to zero.

    Validity is tested against the deformed axioms directly and triviality
    uses gauge transformations id + tau t with tau even and commuting with the
    twist, so the count is independent of the differential's implementation.
    """
    from .linalg import kernel_vectors, rref_rows

    F = g.field
    cx = complex_for(g, adjoint_rep(g))
    lay = cx.layout(2)
    even = lay.coords_of_parity(EVEN)
    cols = []
    for k in even:
        w = [0] * lay.ncoords
        w[k] = 1
        cols.append(_order_defect(TruncatedDeformation(g, [CochainPair(cx, 2, w)]), 1))
    rows = [[c[t] for c in cols] for t in range(len(cols[0]))] if cols else []
    valid = len(kernel_vectors(F, rows, len(even))) if cols else 0
    N = g.dim
    par = g.basis.parities
    A = g.alpha
    units = [(r, c) for r in range(N) for c in range(N) if par[r] == par[c]]
    comm = []
    for r, c in units:
        E = [[0] * N for _ in range(N)]
        E[r][c] = 1
        M = Matrix(F, E, N)
        D = M @ A + A @ M
        comm.append([a for row in D.rows for a in row])
    crow = [[col[t] for col in comm] for t in range(N * N)]
    images = []
    for v in kernel_vectors(F, crow, len(units)):
        E = [[0] * N for _ in range(N)]
        for (r, c), a in zip(units, v):
            E[r][c] = a
        images.append(list(_gauge_image(g, cx, Matrix(F, E, N))))
    trivial = len(rref_rows(F, images, len(images[0]))[1]) if images else 0
    return InfinitesimalCount(valid, trivial)


def transport(d: TruncatedDeformation, tau: EquivalenceMap, squaring_rule: str = "complete") -> TruncatedDeformation:
    """The deformation d~ with tau: d~ -> d an equivalence, solved order by order from the equivalence identities."""
    g = d.algebra
    N = g.dim
    cx = d.complex
    lay = cx.layout(2)
    D = lay.d
    e = [unit(N, i) for i in range(N)]
    j0 = 0 if squaring_rule == "complete" else 1
    out = TruncatedDeformation(g, [])
    for n in range(1, d.order + 1):
        vals = [0] * lay.ncoords
        for s, (a, b) in enumerate(lay.c_slots):
            x, y = e[a], e[b]
            acc = (0,) * N
            for i in range(n + 1):
                for j in range(n - i + 1):
                    acc = _vadd(acc, d.c(i, tau.tau(j, x), tau.tau(n - i - j, y)))
            for i in range(1, n + 1):
                acc = _vadd(acc, tau.tau(i, out.c(n - i, x, y)))
            vals[s * D:(s + 1) * D] = acc
        for (i_odd, t) in lay.p_slots:
            s = lay.p_index[(i_odd, t)]
            x = e[i_odd]
            acc = (0,) * N
            for i in range(n + 1):
                acc = _vadd(acc, d.c(i, x, tau.tau(n - i, x)))
            for i in range(n // 2 + 1):
                acc = _vadd(acc, d.p(n - 2 * i, tau.tau(i, x)))
            for u in range(1, n + 1):
                for v in range(u + 1, n + 1):
                    if n - u - v >= j0:
                        acc = _vadd(acc, d.c(n - u - v, tau.tau(u, x), tau.tau(v, x)))
            for i in range(1, n + 1):
                acc = _vadd(acc, tau.tau(i, out.p(n - i, x)))
            vals[s * D:(s + 1) * D] = acc
        out = out.extended(CochainPair(cx, 2, vals))
    return out


def random_equivariant_tau(g: HomLieSuper2, order: int, rng) -> EquivalenceMap:
    """Random even endomorphisms commuting with the twist."""
    from .linalg import kernel_vectors

    F = g.field
    N = g.dim
    par = g.basis.parities
    A = g.alpha
    units = [(r, c) for r in range(N) for c in range(N) if par[r] == par[c]]
    comm = []
    for r, c in units:
        E = [[0] * N for _ in range(N)]
        E[r][c] = 1
        M = Matrix(F, E, N)
        comm.append([a for row in (M @ A + A @ M).rows for a in row])
    basis = kernel_vectors(F, [[col[t] for col in comm] for t in range(N * N)], len(units))
    taus = []
    for _ in range(order):
        E = [[0] * N for _ in range(N)]
        for v in basis:
            a = rng.randrange(F.q)
            for (r, c), b in zip(units, v):
                E[r][c] ^= F.mul(a, b)
        taus.append(Matrix(F, E, N))
    return EquivalenceMap(taus)
