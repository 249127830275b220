"""Representations, semidirect products and the twisted general linear superalgebra."""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .algebra import (
    EVEN,
    ODD,
    AxiomReport,
    HomLieSuper2,
    SuperBasis,
    Verdict,
    _first_failure,
    check_morphism,
    twist_by_morphism,
)
from .linalg import Matrix, ShapeError, axpy, unit


class InvalidRepresentationError(ValueError):
    def __init__(self, report: AxiomReport):
        super().__init__(f"not a representation: {report.failures()}")
        self.report = report


class IncompatibleTwistError(ValueError):
    def __init__(self, verdict: Verdict):
        super().__init__(f"{verdict.condition} fails at {verdict.witness}")
        self.verdict = verdict


class Representation:
    """A module over a Hom-Lie superalgebra: one action matrix per algebra basis vector and a twist beta."""

    __slots__ = ("algebra", "module_basis", "action", "beta")

    def __init__(self, algebra: HomLieSuper2, module_basis: SuperBasis, action: Sequence[Matrix], beta: Matrix | None = None):
        d = module_basis.dim
        if len(action) != algebra.dim:
            raise ShapeError(f"{len(action)} action matrices for a {algebra.dim}-dimensional algebra")
        for a in action:
            if a.shape != (d, d):
                raise ShapeError(f"action matrix of shape {a.shape} on a {d}-dimensional module")
        if beta is None:
            beta = Matrix.identity(algebra.field, d)
        if beta.shape != (d, d):
            raise ShapeError(f"module twist has shape {beta.shape}")
        self.algebra = algebra
        self.module_basis = module_basis
        self.action = tuple(action)
        self.beta = beta

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.module_basis.dim

    def rho(self, x: Sequence[int]) -> Matrix:
        """Action matrix of a general algebra vector."""
        d = self.dim
        F = self.field
        acc = [[0] * d for _ in range(d)]
        for i, a in enumerate(x):
            if a:
                for r, row in enumerate(self.action[i].rows):
                    axpy(F, acc[r], a, row)
        return Matrix(F, acc, d)

    def act(self, x: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        F = self.field
        acc = [0] * self.dim
        for i, a in enumerate(x):
            if a:
                axpy(F, acc, a, self.action[i].apply(v))
        return tuple(acc)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Representation)
            and self.algebra == other.algebra
            and self.module_basis == other.module_basis
            and self.action == other.action
            and self.beta == other.beta
        )

    def __hash__(self) -> int:
        return hash((self.algebra, self.module_basis, self.action, self.beta))

    def to_json(self) -> dict:
        entries = []
        for i, a in enumerate(self.action):
            for k, row in enumerate(a.rows):
                for j, c in enumerate(row):
                    if c:
                        entries.append({"i": i, "j": j, "k": k, "c": c})
        entries.sort(key=lambda e: (e["i"], e["j"], e["k"]))
        return {
            "algebra": self.algebra.to_json(),
            "module_basis": self.module_basis.to_json(),
            "action": entries,
            "beta": self.beta.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict, algebra: HomLieSuper2 | None = None) -> "Representation":
        g = algebra if algebra is not None else HomLieSuper2.from_json(data["algebra"])
        mb = SuperBasis.from_json(data["module_basis"])
        d = mb.dim
        mats = [[[0] * d for _ in range(d)] for _ in range(g.dim)]
        for e in data.get("action", []):
            mats[int(e["i"])][int(e["k"])][int(e["j"])] ^= int(e["c"])
        action = [Matrix(g.field, m, d) for m in mats]
        beta = Matrix.from_json(g.field, data["beta"]) if "beta" in data else None
        return cls(g, mb, action, beta)


def _primed(labels: Sequence[str], taken: set[str]) -> tuple[str, ...]:
    out = []
    for lab in labels:
        new = lab + "'"
        while new in taken:
            new += "'"
        taken.add(new)
        out.append(new)
    return tuple(out)


def adjoint_rep(g: HomLieSuper2) -> Representation:
    n = g.dim
    mb = SuperBasis(_primed(g.basis.labels, set(g.basis.labels)), g.basis.parities)
    return Representation(g, mb, [g.ad(unit(n, i)) for i in range(n)], g.alpha)


def trivial_rep(g: HomLieSuper2, dim: int = 1) -> Representation:
    """The module K^dim (even) with zero action and identity twist."""
    mb = SuperBasis(tuple(f"m{i + 1}" for i in range(dim)), (EVEN,) * dim)
    zero = Matrix.zeros(g.field, dim, dim)
    return Representation(g, mb, [zero] * g.dim, Matrix.identity(g.field, dim))


def check_representation(r: Representation) -> AxiomReport:
    """[a(x), b(v)] = b([x,v]), the mixed Jacobi rule and [s(x), b(v)] = [a(x), [x,v]]."""
    g = r.algebra
    n, d = g.dim, r.dim
    gl, ml = g.basis.labels, r.module_basis.labels
    gp, mp = g.basis.parities, r.module_basis.parities
    beta = r.beta
    report = AxiomReport()
    zero_vec = (0,) * d

    def parity_cases():
        for i, a in enumerate(r.action):
            for k, row in enumerate(a.rows):
                for j, c in enumerate(row):
                    if c and mp[k] != gp[i] ^ mp[j]:
                        yield {"x": gl[i], "v": ml[j]}, a.column(j), zero_vec
        for j in range(d):
            col = beta.column(j)
            if any(c and mp[k] != mp[j] for k, c in enumerate(col)):
                yield {"beta": ml[j]}, col, zero_vec

    report.verdicts["parity"] = _first_failure(parity_cases(), "action and module twist respect parity")

    twisted = [r.rho(g.twist(unit(n, i))) for i in range(n)]

    def twist_cases():
        for i in range(n):
            lhs, rhs = twisted[i] @ beta, beta @ r.action[i]
            if lhs != rhs:
                for j in range(d):
                    yield {"x": gl[i], "v": ml[j]}, lhs.column(j), rhs.column(j)

    report.verdicts["twist_compatibility"] = _first_failure(twist_cases(), "[a(x), b(v)] = b([x, v])")

    def jacobi_cases():
        for i in range(n):
            for j in range(i + 1, n):
                lhs = r.rho(g.bracket_basis(i, j)) @ beta
                rhs = twisted[i] @ r.action[j] + twisted[j] @ r.action[i]
                if lhs != rhs:
                    for k in range(d):
                        yield {"x": gl[i], "y": gl[j], "v": ml[k]}, lhs.column(k), rhs.column(k)

    report.verdicts["jacobi"] = _first_failure(jacobi_cases(), "[[x,y], b(v)] = [a(x),[y,v]] + [a(y),[x,v]]")

    def squaring_cases():
        for xl, x in g.odd_test_vectors():
            lhs = r.rho(g.square(x)) @ beta
            rhs = r.rho(g.twist(x)) @ r.rho(x)
            if lhs != rhs:
                for k in range(d):
                    yield {"x": xl, "v": ml[k]}, lhs.column(k), rhs.column(k)

    report.verdicts["squaring"] = _first_failure(squaring_cases(), "[s(x), b(v)] = [a(x), [x, v]]")
    return report


def semidirect_product(r: Representation) -> HomLieSuper2:
    """g + V with [x, v] the action, [v, w] = 0, s(x + v) = s(x) + [x, v] and twist a + b."""
    rep_report = check_representation(r)
    if not rep_report:
        raise InvalidRepresentationError(rep_report)
    g = r.algebra
    n, d = g.dim, r.dim
    N = n + d
    labels = list(g.basis.labels)
    taken = set(labels)
    for lab in r.module_basis.labels:
        while lab in taken:
            lab += "'"
        taken.add(lab)
        labels.append(lab)
    basis = SuperBasis(tuple(labels), g.basis.parities + r.module_basis.parities)

    def embed_g(v):
        return tuple(v) + (0,) * d

    def embed_m(v):
        return (0,) * n + tuple(v)

    br = {(i, j): embed_g(v) for i, j, v in g.bracket_items()}
    for i in range(n):
        for a in range(d):
            br[(i, n + a)] = embed_m(r.action[i].column(a))
    sq = {i: embed_g(v) for i, v in g.square_items()}
    rows = [list(row) + [0] * d for row in g.alpha.rows] + [[0] * n + list(row) for row in r.beta.rows]
    return HomLieSuper2(g.field, basis, br, sq, Matrix(g.field, rows, N))


# the twisted general linear superalgebra


def gl_basis(module_basis: SuperBasis) -> SuperBasis:
    d = module_basis.dim
    p = module_basis.parities
    sep = "," if d > 9 else ""
    labels = tuple(f"E{a + 1}{sep}{b + 1}" for a, b in product(range(d), repeat=2))
    return SuperBasis(labels, tuple(p[a] ^ p[b] for a, b in product(range(d), repeat=2)))


def _flatten(m: Matrix) -> tuple[int, ...]:
    return tuple(a for row in m.rows for a in row)


def _matrix_unit(F, d: int, a: int, b: int) -> Matrix:
    rows = [[0] * d for _ in range(d)]
    rows[a][b] = 1
    return Matrix(F, rows, d)


def gl_structure(module_basis: SuperBasis, beta: Matrix) -> HomLieSuper2:
    """gl(V) with [f,g] = b f b^-1 g b^-1 + b g b^-1 f b^-1, s(f) = b f b^-1 f b^-1 and twist f -> b f b^-1."""
    F = beta.field
    d = module_basis.dim
    binv = beta.inverse()
    basis = gl_basis(module_basis)
    units = [_matrix_unit(F, d, a, b) for a, b in product(range(d), repeat=2)]
    conj = [beta @ u @ binv for u in units]
    br = {}
    for i in range(len(units)):
        for j in range(i, len(units)):
            val = conj[i] @ units[j] @ binv + conj[j] @ units[i] @ binv
            br[(i, j)] = _flatten(val)
    sq = {i: _flatten(conj[i] @ units[i] @ binv) for i, p in enumerate(basis.parities) if p == ODD}
    alpha = Matrix.from_columns(F, [_flatten(c) for c in conj])
    return HomLieSuper2(F, basis, br, sq, alpha)


def gl_hom_structure(dim_even: int, dim_odd: int, beta: Matrix) -> HomLieSuper2:
    mb = SuperBasis.standard(dim_even, dim_odd, even="v", odd="w")
    return gl_structure(mb, beta)


def rep_as_map(r: Representation) -> Matrix:
    """Matrix of x -> rho(x) into the matrix-unit basis of gl(V)."""
    return Matrix.from_columns(r.field, [_flatten(a) for a in r.action], r.dim * r.dim)


def check_rep_as_morphism(r: Representation) -> Verdict:
    gl = gl_structure(r.module_basis, r.beta)
    return check_morphism(r.algebra, gl, rep_as_map(r))


def twist_representation(
    g: HomLieSuper2, r: Representation, alpha: Matrix, beta: Matrix
) -> tuple[HomLieSuper2, Representation]:
    """Twist g by alpha and the module action by beta, given rho(a x) b = b rho(x)."""
    n = g.dim
    for i in range(n):
        lhs = r.rho(alpha.apply(unit(n, i))) @ beta
        rhs = beta @ r.action[i]
        if lhs != rhs:
            raise IncompatibleTwistError(
                Verdict(False, "rho(a(x)) b = b rho(x)", {"inputs": {"x": g.basis.labels[i]}, "lhs": lhs.rows, "rhs": rhs.rows})
            )
    gt = twist_by_morphism(g, alpha)
    return gt, Representation(gt, r.module_basis, [beta @ a for a in r.action], beta)
