"""2-structures on Hom-Lie algebras and queerification."""

from __future__ import annotations

from typing import Mapping, Sequence

from .algebra import (
    EVEN,
    ODD,
    AxiomReport,
    HomLieSuper2,
    InvalidMorphismError,
    ParityError,
    SuperBasis,
    Verdict,
    _first_failure,
    check_axioms,
    check_morphism,
    twist_by_morphism,
)
from .gf2k import FieldSpec
from .linalg import Matrix, as_vector, axpy, unit, vec_add


class InvalidTwoStructureError(ValueError):
    def __init__(self, report: AxiomReport):
        super().__init__(f"not a 2-structure: {report.failures()}")
        self.report = report


class RestrictedHomLie2:
    """A purely even Hom-Lie algebra with a 2-map given on basis vectors.

    On general vectors the 2-map is sum(l_i^2 e_i^[2]) + sum_{i<j} l_i l_j [e_i, e_j].
    """

    __slots__ = ("algebra", "two_map")

    def __init__(self, algebra: HomLieSuper2, two_map: Mapping[int, Sequence[int]] | Sequence[Sequence[int]]):
        if algebra.basis.odd_indices:
            raise ParityError("a restricted Hom-Lie algebra has no odd part")
        n = algebra.dim
        items = two_map.items() if isinstance(two_map, Mapping) else enumerate(two_map)
        tm = [(0,) * n for _ in range(n)]
        for i, v in items:
            tm[int(i)] = as_vector(v, n)
        self.algebra = algebra
        self.two_map = tuple(tm)

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def power(self, x: Sequence[int]) -> tuple[int, ...]:
        F, g = self.field, self.algebra
        acc = [0] * self.dim
        nz = [(i, a) for i, a in enumerate(x) if a]
        for a, (i, li) in enumerate(nz):
            axpy(F, acc, F.mul(li, li), self.two_map[i])
            for j, lj in nz[a + 1:]:
                axpy(F, acc, F.mul(li, lj), g.bracket_basis(i, j))
        return tuple(acc)

    def test_vectors(self) -> list[tuple[str, tuple[int, ...]]]:
        n = self.dim
        labels = self.algebra.basis.labels
        out = [(labels[i], unit(n, i)) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                out.append((f"{labels[i]}+{labels[j]}", vec_add(unit(n, i), unit(n, j))))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, RestrictedHomLie2) and (self.algebra, self.two_map) == (other.algebra, other.two_map)

    def __hash__(self) -> int:
        return hash((self.algebra, self.two_map))

    def to_json(self) -> dict:
        data = self.algebra.to_json()
        data["two_map"] = [{"i": i, "values": list(v)} for i, v in enumerate(self.two_map) if any(v)]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "RestrictedHomLie2":
        g = HomLieSuper2.from_json(data)
        return cls(g, {int(e["i"]): e["values"] for e in data.get("two_map", [])})


def restricted_from_labels(
    F: FieldSpec,
    labels: Sequence[str],
    brackets: Mapping[tuple[str, str], Mapping[str, int]] = (),
    two_map: Mapping[str, Mapping[str, int]] = (),
    alpha: Mapping[str, Mapping[str, int]] | None = None,
) -> RestrictedHomLie2:
    basis = SuperBasis(tuple(labels), (EVEN,) * len(labels))
    g = HomLieSuper2.from_labels(F, basis, brackets=brackets, alpha=alpha)
    tm = {basis.index(a): g.vec(v) for a, v in dict(two_map).items()}
    return RestrictedHomLie2(g, tm)


def check_2_structure(r: RestrictedHomLie2) -> AxiomReport:
    """[x^[2], a(y)] = [a(x), [x, y]], a(x^[2]) = a(x)^[2], plus the algebra's own axioms."""
    g = r.algebra
    n = g.dim
    labels = g.basis.labels
    report = AxiomReport()
    base = check_axioms(g)
    report.verdicts["algebra"] = Verdict(True, "Hom-Lie algebra axioms") if base.ok else Verdict(
        False, "Hom-Lie algebra axioms", {"failures": base.failures()}
    )
    tests = r.test_vectors()

    def r1_cases():
        for xl, x in tests:
            p = r.power(x)
            ax = g.twist(x)
            for j in range(n):
                y = unit(n, j)
                yield {"x": xl, "y": labels[j]}, g.bracket(p, g.twist(y)), g.bracket(ax, g.bracket(x, y))

    report.verdicts["r1"] = _first_failure(r1_cases(), "[x^[2], a(y)] = [a(x), [x, y]]")

    def polar_cases():
        for i in range(n):
            for j in range(i + 1, n):
                x, y = unit(n, i), unit(n, j)
                lhs = vec_add(vec_add(r.power(vec_add(x, y)), r.power(x)), r.power(y))
                yield {"x": labels[i], "y": labels[j]}, lhs, g.bracket(x, y)

    report.verdicts["polarization"] = _first_failure(polar_cases(), "(x+y)^[2] + x^[2] + y^[2] = [x, y]")

    def mult_cases():
        for i in range(n):
            x = unit(n, i)
            yield {"x": labels[i]}, g.twist(r.power(x)), r.power(g.twist(x))

    report.verdicts["multiplicative"] = _first_failure(mult_cases(), "a(x^[2]) = a(x)^[2]")
    return report


def _require_restricted_morphism(r: RestrictedHomLie2, alpha: Matrix) -> None:
    g = r.algebra
    v = check_morphism(g, g, alpha)
    if not v:
        raise InvalidMorphismError(v)
    n = g.dim
    for i in range(n):
        x = unit(n, i)
        lhs, rhs = alpha.apply(r.power(x)), r.power(alpha.apply(x))
        if lhs != rhs:
            raise InvalidMorphismError(
                Verdict(False, "a(x^[2]) = a(x)^[2]", {"inputs": {"x": g.basis.labels[i]}, "lhs": lhs, "rhs": rhs})
            )


def twist_2_structure(r: RestrictedHomLie2, alpha: Matrix) -> RestrictedHomLie2:
    """Twist bracket by alpha and set x^[2]_a = alpha(x^[2])."""
    _require_restricted_morphism(r, alpha)
    gt = twist_by_morphism(r.algebra, alpha)
    return RestrictedHomLie2(gt, [alpha.apply(v) for v in r.two_map])


def _pi_label(label: str) -> str:
    return f"Pi({label})"


def queerify(r: RestrictedHomLie2, validate: bool = True) -> HomLieSuper2:
    """g + Pi(g): [x, y], [Pi x, y] = Pi[x, y], [Pi x, Pi y] = [x, y], s(Pi x) = x^[2], twist a + a."""
    if validate:
        report = check_2_structure(r)
        if not report.ok:
            raise InvalidTwoStructureError(report)
    g = r.algebra
    n = g.dim
    basis = SuperBasis(
        g.basis.labels + tuple(_pi_label(lab) for lab in g.basis.labels), (EVEN,) * n + (ODD,) * n
    )
    zeros = (0,) * n
    br = {}
    for i, j, v in g.bracket_items():
        br[(i, j)] = tuple(v) + zeros
        br[(i, n + j)] = zeros + tuple(v)
        br[(j, n + i)] = zeros + tuple(v)
        br[(n + i, n + j)] = tuple(v) + zeros
    sq = {n + i: tuple(v) + zeros for i, v in enumerate(r.two_map) if any(v)}
    A = g.alpha
    rows = [list(row) + [0] * n for row in A.rows] + [[0] * n + list(row) for row in A.rows]
    return HomLieSuper2(g.field, basis, br, sq, Matrix(g.field, rows, 2 * n))


def doubled_twist(alpha: Matrix) -> Matrix:
    n = alpha.shape[0]
    rows = [list(row) + [0] * n for row in alpha.rows] + [[0] * n + list(row) for row in alpha.rows]
    return Matrix(alpha.field, rows, 2 * n)


def check_queerify_twist_commute(r: RestrictedHomLie2, alpha: Matrix) -> Verdict:
    """Queerify-then-twist against twist-then-queerify, compared bit-exactly."""
    _require_restricted_morphism(r, alpha)
    left = twist_by_morphism(queerify(r), doubled_twist(alpha))
    right = queerify(twist_2_structure(r, alpha))
    if left == right:
        return Verdict(True, "queerification commutes with twisting")
    return Verdict(
        False,
        "queerification commutes with twisting",
        {"queerify_then_twist": left.to_json(), "twist_then_queerify": right.to_json()},
    )


# small restricted Lie algebras (identity twist)


def one_dim_restricted(F: FieldSpec) -> RestrictedHomLie2:
    return restricted_from_labels(F, ["e"], two_map={"e": {"e": 1}})


def two_dim_restricted(F: FieldSpec) -> RestrictedHomLie2:
    """[e1, e2] = e2, e1^[2] = e1, e2^[2] = 0."""
    return restricted_from_labels(F, ["e1", "e2"], brackets={("e1", "e2"): {"e2": 1}}, two_map={"e1": {"e1": 1}})


def heisenberg_restricted(F: FieldSpec) -> RestrictedHomLie2:
    return restricted_from_labels(F, ["x", "y", "z"], brackets={("x", "y"): {"z": 1}})


def abelian_restricted(F: FieldSpec, n: int) -> RestrictedHomLie2:
    return restricted_from_labels(F, [f"e{i + 1}" for i in range(n)])


def restricted_examples(F: FieldSpec) -> dict[str, RestrictedHomLie2]:
    return {
        "one_dim": one_dim_restricted(F),
        "two_dim": two_dim_restricted(F),
        "heisenberg": heisenberg_restricted(F),
        "abelian2": abelian_restricted(F, 2),
    }


def restricted_morphisms(r: RestrictedHomLie2, limit: int | None = None) -> list[Matrix]:
    """Every linear self-map over the field that is a restricted morphism (small algebras only)."""
    from itertools import product

    F, n = r.field, r.dim
    if F.q ** (n * n) > 1 << 16:
        raise ValueError("search space too large")
    out = []
    for entries in product(range(F.q), repeat=n * n):
        A = Matrix(F, [list(entries[k * n:(k + 1) * n]) for k in range(n)], n)
        try:
            _require_restricted_morphism(r, A)
        except InvalidMorphismError:
            continue
        out.append(A)
        if limit is not None and len(out) >= limit:
            break
    return out
