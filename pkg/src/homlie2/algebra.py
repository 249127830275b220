"""Hom-Lie superalgebras over GF(2^k).

A :class:`HomLieSuper2` is a parity-labelled basis, symmetric structure
constants, squaring values on the odd basis vectors and a twist matrix.
Squares of general odd vectors are computed by the polarization rule

    s(sum a_i f_i) = sum a_i^2 s(f_i) + sum_{i<j} a_i a_j [f_i, f_j].

Quadratic identities are checked on odd basis vectors and on the sums of
pairs of them, which is enough over any field.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .gf2k import FieldSpec
from .linalg import Matrix, ShapeError, SubspaceBasis, as_vector, axpy, unit, vec_add

EVEN, ODD = 0, 1


class ParityError(ValueError):
    """A vector or subspace is not of the required parity."""


class InvalidMorphismError(ValueError):
    def __init__(self, verdict: "Verdict"):
        super().__init__(f"not a morphism: {verdict.condition} fails at {verdict.witness}")
        self.verdict = verdict


class InvalidIdealError(ValueError):
    def __init__(self, verdict: "Verdict"):
        super().__init__(f"not an ideal: {verdict.condition} fails at {verdict.witness}")
        self.verdict = verdict


@dataclass(frozen=True)
class SuperBasis:
    labels: tuple[str, ...]
    parities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "parities", tuple(int(p) for p in self.parities))
        if len(self.labels) != len(self.parities):
            raise ShapeError("labels and parities differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be distinct")
        if any(p not in (EVEN, ODD) for p in self.parities):
            raise ValueError("parities must be 0 or 1")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> "SuperBasis":
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @classmethod
    def standard(cls, m: int, n: int, even: str = "e", odd: str = "f") -> "SuperBasis":
        labels = [f"{even}{i + 1}" for i in range(m)] + [f"{odd}{i + 1}" for i in range(n)]
        return cls(tuple(labels), (EVEN,) * m + (ODD,) * n)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def even_indices(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parities) if p == EVEN)

    @property
    def odd_indices(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parities) if p == ODD)

    @property
    def sdim(self) -> tuple[int, int]:
        return len(self.even_indices), len(self.odd_indices)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def vector_parity(self, v: Sequence[int]) -> int | None:
        """0 or 1 for a homogeneous nonzero vector, None for a mixed one; 0 for zero."""
        ps = {self.parities[i] for i, a in enumerate(v) if a}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else EVEN

    def to_json(self) -> list[dict]:
        return [{"label": l, "parity": p} for l, p in zip(self.labels, self.parities)]

    @classmethod
    def from_json(cls, data: list[dict]) -> "SuperBasis":
        return cls(tuple(str(b["label"]) for b in data), tuple(int(b["parity"]) for b in data))


def _dense(n: int, value) -> tuple[int, ...]:
    if isinstance(value, Mapping):
        v = [0] * n
        for k, c in value.items():
            v[int(k)] ^= int(c)
        return tuple(v)
    return as_vector(value, n)


class HomLieSuper2:
    """Structure constants of a Hom-Lie superalgebra in characteristic 2.

    ``brackets`` maps index pairs (i, j) to the value of [e_i, e_j] (a dense
    vector or a sparse {k: c} dict); the other order is filled in by symmetry.
    ``squares`` maps odd indices to s(e_i).  ``alpha`` defaults to the identity.
    Construction does not validate the axioms; see :func:`check_axioms`.
    """

    __slots__ = ("field", "basis", "alpha", "_br", "_sq", "_hash")

    def __init__(
        self,
        field: FieldSpec,
        basis: SuperBasis,
        brackets: Mapping[tuple[int, int], object] | None = None,
        squares: Mapping[int, object] | None = None,
        alpha: Matrix | None = None,
    ):
        n = basis.dim
        self.field = field
        self.basis = basis
        br: list[list[tuple[int, ...] | None]] = [[None] * n for _ in range(n)]
        for (i, j), val in (brackets or {}).items():
            v = _dense(n, val)
            if not any(v):
                continue
            if br[i][j] is not None and br[i][j] != v:
                raise ValueError(f"conflicting values for [{basis.labels[i]}, {basis.labels[j]}]")
            br[i][j] = br[j][i] = v
        self._br = br
        sq: dict[int, tuple[int, ...]] = {}
        for i, val in (squares or {}).items():
            v = _dense(n, val)
            if any(v):
                sq[int(i)] = v
        self._sq = sq
        if alpha is None:
            alpha = Matrix.identity(field, n)
        if alpha.shape != (n, n):
            raise ShapeError(f"twist has shape {alpha.shape}, expected {(n, n)}")
        if alpha.field != field:
            raise ValueError("twist matrix over a different field")
        self.alpha = alpha
        self._hash = None

    @classmethod
    def from_labels(
        cls,
        field: FieldSpec,
        basis: SuperBasis,
        brackets: Mapping[tuple[str, str], Mapping[str, int]] = (),
        squares: Mapping[str, Mapping[str, int]] = (),
        alpha: Mapping[str, Mapping[str, int]] | None = None,
    ) -> "HomLieSuper2":
        """Build from label-keyed sparse data; ``alpha`` gives the image of each basis vector."""
        idx = basis.index
        n = basis.dim
        br = {}
        for (a, b), val in dict(brackets).items():
            v = [0] * n
            for k, c in val.items():
                v[idx(k)] ^= c
            key = (idx(a), idx(b))
            br[key] = vec_add(br.get(key, (0,) * n), v)
        sq = {}
        for a, val in dict(squares).items():
            v = [0] * n
            for k, c in val.items():
                v[idx(k)] ^= c
            sq[idx(a)] = tuple(v)
        A = None
        if alpha is not None:
            cols = []
            for j, lab in enumerate(basis.labels):
                v = [0] * n
                for k, c in alpha.get(lab, {lab: 1}).items():
                    v[idx(k)] ^= c
                cols.append(v)
            A = Matrix.from_columns(field, cols)
        return cls(field, basis, br, sq, A)

    # evaluation

    @property
    def dim(self) -> int:
        return self.basis.dim

    def bracket_basis(self, i: int, j: int) -> tuple[int, ...]:
        v = self._br[i][j]
        return v if v is not None else (0,) * self.dim

    def square_basis(self, i: int) -> tuple[int, ...]:
        return self._sq.get(i, (0,) * self.dim)

    def bracket(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        n = self.dim
        if len(u) != n or len(v) != n:
            raise ShapeError(f"vectors of length {len(u)}, {len(v)} in a {n}-dimensional algebra")
        F = self.field
        acc = [0] * n
        nv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in enumerate(u):
            if not a:
                continue
            row = self._br[i]
            for j, b in nv:
                w = row[j]
                if w is not None:
                    axpy(F, acc, F.mul(a, b), w)
        return tuple(acc)

    def square(self, x: Sequence[int]) -> tuple[int, ...]:
        n = self.dim
        if len(x) != n:
            raise ShapeError(f"vector of length {len(x)} in a {n}-dimensional algebra")
        par = self.basis.parities
        if any(a and par[i] == EVEN for i, a in enumerate(x)):
            raise ParityError("squaring is defined on odd vectors only")
        F = self.field
        acc = [0] * n
        nz = [(i, a) for i, a in enumerate(x) if a]
        for i, a in nz:
            s = self._sq.get(i)
            if s is not None:
                axpy(F, acc, F.mul(a, a), s)
        for (i, a), (j, b) in combinations(nz, 2):
            w = self._br[i][j]
            if w is not None:
                axpy(F, acc, F.mul(a, b), w)
        return tuple(acc)

    def twist(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.alpha.apply(x)

    def ad(self, x: Sequence[int]) -> Matrix:
        """Matrix of y -> [x, y]."""
        n = self.dim
        return Matrix.from_columns(self.field, [self.bracket(x, unit(n, j)) for j in range(n)])

    def unit(self, i: int | str) -> tuple[int, ...]:
        if isinstance(i, str):
            i = self.basis.index(i)
        return unit(self.dim, i)

    def vec(self, coeffs: Mapping[str, int]) -> tuple[int, ...]:
        v = [0] * self.dim
        for lab, c in coeffs.items():
            v[self.basis.index(lab)] ^= c
        return tuple(v)

    def odd_test_vectors(self) -> list[tuple[str, tuple[int, ...]]]:
        """Odd basis vectors and sums of pairs of them."""
        return odd_test_vectors(self.basis)

    # structure

    def bracket_items(self) -> Iterable[tuple[int, int, tuple[int, ...]]]:
        for i in range(self.dim):
            for j in range(i, self.dim):
                v = self._br[i][j]
                if v is not None:
                    yield i, j, v

    def square_items(self) -> Iterable[tuple[int, tuple[int, ...]]]:
        return sorted(self._sq.items())

    def replace(self, brackets=None, squares=None, alpha=None) -> "HomLieSuper2":
        br = brackets if brackets is not None else {(i, j): v for i, j, v in self.bracket_items()}
        sq = squares if squares is not None else dict(self._sq)
        return HomLieSuper2(self.field, self.basis, br, sq, alpha if alpha is not None else self.alpha)

    def map_structure(self, phi: Matrix) -> "HomLieSuper2":
        """Compose bracket and squaring with phi, keeping the twist."""
        return self.replace(
            brackets={(i, j): phi.apply(v) for i, j, v in self.bracket_items()},
            squares={i: phi.apply(v) for i, v in self._sq.items()},
        )

    def _key(self):
        return (
            self.field,
            self.basis,
            tuple(self.bracket_items()),
            tuple(self.square_items()),
            self.alpha.rows,
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, HomLieSuper2) and self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        m, n = self.basis.sdim
        return f"HomLieSuper2(sdim=({m}|{n}), {self.field})"

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "basis": self.basis.to_json(),
            "bracket": [
                {"i": i, "j": j, "k": k, "c": c}
                for i, j, v in self.bracket_items()
                for k, c in enumerate(v)
                if c
            ],
            "squaring": [
                {"i": i, "values": [{"k": k, "c": c} for k, c in enumerate(v) if c]}
                for i, v in self.square_items()
            ],
            "alpha": self.alpha.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "HomLieSuper2":
        F = FieldSpec.from_json(data["field"])
        basis = SuperBasis.from_json(data["basis"])
        n = basis.dim
        br: dict[tuple[int, int], list[int]] = {}
        for e in data.get("bracket", []):
            i, j = int(e["i"]), int(e["j"])
            if i > j:
                i, j = j, i
            v = br.setdefault((i, j), [0] * n)
            v[int(e["k"])] ^= int(e["c"])
        sq = {}
        for e in data.get("squaring", []):
            v = [0] * n
            for kv in e["values"]:
                v[int(kv["k"])] ^= int(kv["c"])
            sq[int(e["i"])] = v
        alpha = Matrix.from_json(F, data["alpha"]) if "alpha" in data else None
        return cls(F, basis, br, sq, alpha)


def odd_test_vectors(basis: SuperBasis) -> list[tuple[str, tuple[int, ...]]]:
    n = basis.dim
    odd = basis.odd_indices
    out = [(basis.labels[i], unit(n, i)) for i in odd]
    for i, j in combinations(odd, 2):
        v = [0] * n
        v[i] = v[j] = 1
        out.append((f"{basis.labels[i]}+{basis.labels[j]}", tuple(v)))
    return out


# verification


@dataclass
class Verdict:
    ok: bool
    condition: str | None = None
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out: dict = {"ok": self.ok}
        if not self.ok:
            out["condition"] = self.condition
            out["witness"] = _jsonable(self.witness)
        return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


@dataclass
class AxiomReport:
    """Per-axiom verdicts; a failed axiom keeps its first counterexample."""

    verdicts: dict[str, Verdict] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts.values())

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if not v.ok]

    def __getitem__(self, name: str) -> Verdict:
        return self.verdicts[name]

    def to_json(self) -> dict:
        return {"ok": self.ok, "axioms": {k: v.to_json() for k, v in self.verdicts.items()}}


AXIOMS = (
    "symmetry",
    "parity",
    "hom_jacobi",
    "squaring_jacobi",
    "multiplicative_bracket",
    "multiplicative_squaring",
)


def _first_failure(cases, condition: str) -> Verdict:
    for inputs, lhs, rhs in cases:
        if lhs != rhs:
            return Verdict(False, condition, {"inputs": inputs, "lhs": lhs, "rhs": rhs})
    return Verdict(True)


def _structural(g: HomLieSuper2) -> tuple[Verdict, Verdict]:
    n = g.dim
    par = g.basis.parities
    labels = g.basis.labels
    zero = (0,) * n
    sym = Verdict(True)
    for i in range(n):
        v = g.bracket_basis(i, i)
        if any(v):
            sym = Verdict(False, "[x, x] = 0 on basis vectors", {"inputs": {"x": labels[i]}, "lhs": v, "rhs": zero})
            break

    def parity_cases():
        for i, j, v in g.bracket_items():
            want = par[i] ^ par[j]
            bad = tuple(c if par[k] != want else 0 for k, c in enumerate(v))
            yield {"bracket": [labels[i], labels[j]]}, bad, zero
        for i, v in g.square_items():
            if par[i] != ODD:
                yield {"square_of_even": labels[i]}, v, zero
            bad = tuple(c if par[k] != EVEN else 0 for k, c in enumerate(v))
            yield {"square": labels[i]}, bad, zero
        A = g.alpha
        for j in range(n):
            col = A.column(j)
            bad = tuple(c if par[k] != par[j] else 0 for k, c in enumerate(col))
            yield {"twist": labels[j]}, bad, zero

    return sym, _first_failure(parity_cases(), "parity of structure constants, squares and twist")


def check_axioms(g: HomLieSuper2, require_multiplicative: bool = True) -> AxiomReport:
    """Verify every defining identity of a Hom-Lie superalgebra on a finite test set."""
    n = g.dim
    par = g.basis.parities
    labels = g.basis.labels
    units = [unit(n, i) for i in range(n)]
    tw = [g.twist(e) for e in units]
    report = AxiomReport()
    report.verdicts["symmetry"], report.verdicts["parity"] = _structural(g)

    def jacobi_cases():
        for i, j, k in combinations_with_replacement(range(n), 3):
            if par[i] + par[j] + par[k] > 1:
                continue
            total = vec_add(
                vec_add(g.bracket(tw[i], g.bracket_basis(j, k)), g.bracket(tw[j], g.bracket_basis(k, i))),
                g.bracket(tw[k], g.bracket_basis(i, j)),
            )
            yield {"x": labels[i], "y": labels[j], "z": labels[k]}, total, (0,) * n

    report.verdicts["hom_jacobi"] = _first_failure(jacobi_cases(), "[a(x),[y,z]] + cyclic = 0")

    odd_tests = g.odd_test_vectors()

    def squaring_cases():
        for xl, x in odd_tests:
            sx = g.square(x)
            ax = g.twist(x)
            for j in range(n):
                lhs = g.bracket(sx, tw[j])
                rhs = g.bracket(ax, g.bracket(x, units[j]))
                yield {"x": xl, "y": labels[j]}, lhs, rhs

    report.verdicts["squaring_jacobi"] = _first_failure(squaring_cases(), "[s(x), a(y)] = [a(x), [x, y]]")

    if require_multiplicative:

        def mult_cases():
            for i in range(n):
                for j in range(i, n):
                    yield (
                        {"x": labels[i], "y": labels[j]},
                        g.twist(g.bracket_basis(i, j)),
                        g.bracket(tw[i], tw[j]),
                    )

        def mult_sq_cases():
            for xl, x in odd_tests:
                ax = g.twist(x)
                if g.basis.vector_parity(ax) != ODD and any(ax):
                    yield {"x": xl, "twist_not_odd": True}, ax, (0,) * n
                    continue
                yield {"x": xl}, g.twist(g.square(x)), g.square(ax)

        report.verdicts["multiplicative_bracket"] = _first_failure(mult_cases(), "a([x,y]) = [a(x), a(y)]")
        report.verdicts["multiplicative_squaring"] = _first_failure(mult_sq_cases(), "a(s(x)) = s(a(x))")
    return report


def _parity_check_map(src_basis: SuperBasis, dst_basis: SuperBasis, phi: Matrix) -> Verdict:
    for j in range(src_basis.dim):
        col = phi.column(j)
        for k, c in enumerate(col):
            if c and dst_basis.parities[k] != src_basis.parities[j]:
                return Verdict(
                    False,
                    "map preserves parity",
                    {"inputs": {"x": src_basis.labels[j]}, "lhs": col, "rhs": None},
                )
    return Verdict(True)


def check_morphism(src: HomLieSuper2, dst: HomLieSuper2, phi: Matrix) -> Verdict:
    """phi[x,y] = [phi x, phi y], phi s = s' phi and phi a = a' phi."""
    if phi.shape != (dst.dim, src.dim):
        raise ShapeError(f"map of shape {phi.shape} between dimensions {src.dim} -> {dst.dim}")
    v = _parity_check_map(src.basis, dst.basis, phi)
    if not v:
        return v
    n = src.dim
    labels = src.basis.labels
    images = [phi.apply(unit(n, i)) for i in range(n)]

    def bracket_cases():
        for i in range(n):
            for j in range(i, n):
                yield {"x": labels[i], "y": labels[j]}, phi.apply(src.bracket_basis(i, j)), dst.bracket(images[i], images[j])

    v = _first_failure(bracket_cases(), "phi([x,y]) = [phi(x), phi(y)]")
    if not v:
        return v

    def square_cases():
        for xl, x in src.odd_test_vectors():
            yield {"x": xl}, phi.apply(src.square(x)), dst.square(phi.apply(x))

    v = _first_failure(square_cases(), "phi(s(x)) = s(phi(x))")
    if not v:
        return v

    def twist_cases():
        for i in range(n):
            yield {"x": labels[i]}, phi.apply(src.twist(unit(n, i))), dst.twist(images[i])

    return _first_failure(twist_cases(), "phi(a(x)) = a(phi(x))")


def twist_by_morphism(g: HomLieSuper2, beta: Matrix) -> HomLieSuper2:
    """The algebra with bracket beta[.,.], squaring beta s and twist beta a."""
    verdict = check_morphism(g, g, beta)
    if not verdict:
        raise InvalidMorphismError(verdict)
    return g.map_structure(beta).replace(alpha=beta @ g.alpha)


# ideals, quotients, derived series


def _homogeneous_parts(g: HomLieSuper2, sub: SubspaceBasis) -> tuple[list, list]:
    even, odd = [], []
    for v in sub.vectors:
        p = g.basis.vector_parity(v)
        if p is None:
            raise ParityError("subspace is not spanned by homogeneous vectors")
        (odd if p == ODD else even).append(v)
    return even, odd


def check_ideal(g: HomLieSuper2, sub: SubspaceBasis) -> Verdict:
    """[I, g] in I, a(I) in I and s(I_odd) in I."""
    _, odd = _homogeneous_parts(g, sub)
    n = g.dim
    labels = g.basis.labels
    for v in sub.vectors:
        for j in range(n):
            w = g.bracket(v, unit(n, j))
            if not sub.contains(w):
                return Verdict(False, "[I, g] in I", {"inputs": {"i": v, "x": labels[j]}, "lhs": w, "rhs": None})
        w = g.twist(v)
        if not sub.contains(w):
            return Verdict(False, "a(I) in I", {"inputs": {"i": v}, "lhs": w, "rhs": None})
    tests = list(odd) + [vec_add(a, b) for a, b in combinations(odd, 2)]
    for v in tests:
        w = g.square(v)
        if not sub.contains(w):
            return Verdict(False, "s(I odd) in I", {"inputs": {"i": v}, "lhs": w, "rhs": None})
    return Verdict(True)


def quotient(g: HomLieSuper2, sub: SubspaceBasis) -> HomLieSuper2:
    """Structure induced on g/I, with the non-pivot unit vectors as coset representatives."""
    verdict = check_ideal(g, sub)
    if not verdict:
        raise InvalidIdealError(verdict)
    reps = sub.complement_units()
    _, odd_gens = _homogeneous_parts(g, sub)

    def proj(v):
        r = sub.reduce(v)
        return tuple(r[j] for j in reps)

    basis = SuperBasis(tuple(g.basis.labels[j] for j in reps), tuple(g.basis.parities[j] for j in reps))
    br = {}
    for a, i in enumerate(reps):
        for b in range(a, len(reps)):
            br[(a, b)] = proj(g.bracket_basis(i, reps[b]))
    sq = {}
    for a, i in enumerate(reps):
        if g.basis.parities[i] == ODD:
            sq[a] = proj(g.square_basis(i))
            # the square of a coset must not depend on the representative
            for w in odd_gens:
                if proj(g.square(vec_add(unit(g.dim, i), w))) != sq[a]:
                    raise InvalidIdealError(
                        Verdict(False, "squaring well defined on cosets", {"inputs": {"x": g.basis.labels[i], "i": w}})
                    )
    cols = [proj(g.twist(unit(g.dim, i))) for i in reps]
    A = Matrix.from_columns(g.field, cols, len(reps)) if reps else Matrix.zeros(g.field, 0, 0)
    return HomLieSuper2(g.field, basis, br, sq, A)


def derived_subalgebra(g: HomLieSuper2, steps: int) -> SubspaceBasis:
    """g^(0) = g, g^(i+1) = [g^(i), g^(i)] + span s(odd part of g^(i))."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    cur = SubspaceBasis.full(g.field, g.dim)
    for _ in range(steps):
        vecs = cur.vectors
        gens = [g.bracket(u, v) for u, v in combinations_with_replacement(vecs, 2)]
        _, odd = _homogeneous_parts(g, cur)
        gens += [g.square(v) for v in odd]
        cur = SubspaceBasis(g.field, g.dim, gens)
    return cur


def even_part(g: HomLieSuper2) -> HomLieSuper2:
    """Restriction to the even basis vectors; a Hom-Lie algebra when g is valid."""
    ev = g.basis.even_indices
    basis = SuperBasis(tuple(g.basis.labels[i] for i in ev), (EVEN,) * len(ev))
    br = {}
    for a, i in enumerate(ev):
        for b in range(a, len(ev)):
            v = g.bracket_basis(i, ev[b])
            br[(a, b)] = tuple(v[k] for k in ev)
    A = Matrix(g.field, [[g.alpha[i, j] for j in ev] for i in ev], len(ev)) if ev else Matrix.zeros(g.field, 0, 0)
    return HomLieSuper2(g.field, basis, br, {}, A)


def bracket_eval(g: HomLieSuper2, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
    return g.bracket(as_vector(x), as_vector(y))


def squaring_eval(g: HomLieSuper2, x: Sequence[int]) -> tuple[int, ...]:
    return g.square(as_vector(x))
