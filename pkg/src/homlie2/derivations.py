"""alpha^k-derivations as kernels of linear systems, and the superalgebra they span."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import EVEN, ODD, HomLieSuper2, SuperBasis, check_axioms, AxiomReport
from .linalg import Matrix, SubspaceBasis, kernel_vectors, solve_rows, unit


class FixedPointError(ValueError):
    """The vector is not fixed by the twist."""


def _flatten(m: Matrix) -> tuple[int, ...]:
    return tuple(a for row in m.rows for a in row)


def _unflatten(F, v: Sequence[int], n: int) -> Matrix:
    return Matrix(F, [list(v[r * n:(r + 1) * n]) for r in range(n)], n)


def _matrix_parity(basis: SuperBasis, D: Matrix) -> int | None:
    """EVEN or ODD for a parity-pure nonzero matrix, EVEN for zero, None if mixed."""
    par = basis.parities
    seen = set()
    for r, row in enumerate(D.rows):
        for c, a in enumerate(row):
            if a:
                seen.add(par[r] ^ par[c])
    if len(seen) > 1:
        return None
    return seen.pop() if seen else EVEN


def derivation_defect(g: HomLieSuper2, D: Matrix, k: int) -> tuple[int, ...]:
    """Concatenated values of every defining condition; zero iff D is an alpha^k-derivation.

    Linear in D: commutation with the twist, the Leibniz rule for even first
    argument, and the squaring rule on odd basis vectors and its polar form.
    """
    n = g.dim
    F = g.field
    ak = g.alpha.power(k)
    out: list[int] = []
    out.extend(_flatten(D @ g.alpha + g.alpha @ D))
    De = [D.column(i) for i in range(n)]
    ake = [ak.column(i) for i in range(n)]
    ev, od = g.basis.even_indices, g.basis.odd_indices

    def add3(a, b, c):
        return [x ^ y ^ z for x, y, z in zip(a, b, c)]

    for i in ev:
        for j in range(n):
            out.extend(add3(D.apply(g.bracket_basis(i, j)), g.bracket(De[i], ake[j]), g.bracket(ake[i], De[j])))
    for a, i in enumerate(od):
        out.extend(x ^ y for x, y in zip(D.apply(g.square_basis(i)), g.bracket(De[i], ake[i])))
        for j in od[a + 1:]:
            out.extend(add3(D.apply(g.bracket_basis(i, j)), g.bracket(De[i], ake[j]), g.bracket(De[j], ake[i])))
    del F
    return tuple(out)


def is_derivation(g: HomLieSuper2, D: Matrix, k: int) -> bool:
    return not any(derivation_defect(g, D, k))


def _solve_parity(g: HomLieSuper2, k: int, parity: int) -> list[Matrix]:
    n = g.dim
    F = g.field
    par = g.basis.parities
    slots = [(r, c) for r in range(n) for c in range(n) if par[r] ^ par[c] == parity]
    if not slots:
        return []
    columns = []
    for r, c in slots:
        E = [[0] * n for _ in range(n)]
        E[r][c] = 1
        columns.append(derivation_defect(g, Matrix(F, E, n), k))
    nrows = len(columns[0])
    rows = [[columns[u][t] for u in range(len(slots))] for t in range(nrows)]
    out = []
    for v in kernel_vectors(F, rows, len(slots)):
        D = [[0] * n for _ in range(n)]
        for (r, c), a in zip(slots, v):
            D[r][c] = a
        out.append(Matrix(F, D, n))
    return out


@dataclass
class DerivationSpace:
    algebra: HomLieSuper2
    power: int
    even: list[Matrix]
    odd: list[Matrix]
    _span: SubspaceBasis | None = dc_field(default=None, repr=False, compare=False)

    @property
    def even_dim(self) -> int:
        return len(self.even)

    @property
    def odd_dim(self) -> int:
        return len(self.odd)

    @property
    def dim(self) -> int:
        return self.even_dim + self.odd_dim

    @property
    def basis(self) -> list[Matrix]:
        return self.even + self.odd

    def span(self) -> SubspaceBasis:
        if self._span is None:
            n = self.algebra.dim
            self._span = SubspaceBasis(self.algebra.field, n * n, [_flatten(D) for D in self.basis])
        return self._span

    def __contains__(self, D: Matrix) -> bool:
        return _flatten(D) in self.span()

    def coordinates(self, D: Matrix) -> tuple[int, ...] | None:
        """Coordinates of D in this space's basis (even first), or None."""
        n = self.algebra.dim
        cols = [_flatten(B) for B in self.basis]
        if not cols:
            return () if D.is_zero() else None
        rows = [[c[t] for c in cols] for t in range(n * n)]
        return solve_rows(self.algebra.field, rows, len(cols), _flatten(D))

    def to_json(self, with_basis: bool = False) -> dict:
        out = {"k": self.power, "even_dim": self.even_dim, "odd_dim": self.odd_dim}
        if with_basis:
            out["basis"] = [D.to_json() for D in self.basis]
        return out


def derivation_space(g: HomLieSuper2, k: int, parity: str = "both") -> DerivationSpace:
    """alpha^k-derivations of g; ``parity`` is 'even', 'odd' or 'both'."""
    if k < 0:
        raise ValueError("k must be non-negative")
    want = {"both": (EVEN, ODD), "even": (EVEN,), "odd": (ODD,), "e": (EVEN,), "o": (ODD,)}[parity]
    even = _solve_parity(g, k, EVEN) if EVEN in want else []
    odd = _solve_parity(g, k, ODD) if ODD in want else []
    return DerivationSpace(g, k, even, odd)


def adjoint_alpha_derivation(g: HomLieSuper2, x: Sequence[int], k: int) -> Matrix:
    """y -> [x, a^k(y)] for x fixed by the twist."""
    x = tuple(x)
    if g.twist(x) != x:
        raise FixedPointError(f"a(x) = {g.twist(x)} differs from x = {x}")
    ak = g.alpha.power(k)
    return Matrix.from_columns(g.field, [g.bracket(x, ak.column(j)) for j in range(g.dim)])


@dataclass
class GradingReport:
    closure_failures: list = dc_field(default_factory=list)
    overflow: list = dc_field(default_factory=list)
    axioms: AxiomReport | None = None

    @property
    def ok(self) -> bool:
        return not self.closure_failures and (self.axioms is None or self.axioms.ok)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "closure_failures": self.closure_failures,
            "overflow": self.overflow,
            "axioms": self.axioms.to_json() if self.axioms else None,
        }


def derivation_superalgebra(g: HomLieSuper2, max_k: int) -> tuple[HomLieSuper2, GradingReport, list[DerivationSpace]]:
    """Graded sum of the alpha^k-derivation spaces for k <= max_k.

    Bracket is the commutator DE + ED, squaring of odd D is D^2, twist is the
    identity.  Products landing in degree > max_k are truncated to zero and
    listed as overflow.
    """
    F = g.field
    spaces = [derivation_space(g, k) for k in range(max_k + 1)]
    labels, parities, owner = [], [], []
    offsets = []
    for k, sp in enumerate(spaces):
        offsets.append(len(labels))
        for i, D in enumerate(sp.basis):
            labels.append(f"D{k}_{i + 1}")
            parities.append(EVEN if i < sp.even_dim else ODD)
            owner.append((k, D))
    N = len(labels)
    basis = SuperBasis(tuple(labels), tuple(parities))
    report = GradingReport()

    def place(val: Matrix, deg: int, what: str):
        if deg > max_k:
            if not val.is_zero():
                report.overflow.append(what)
            return None
        if not is_derivation(g, val, deg):
            report.closure_failures.append(what)
            return None
        coords = spaces[deg].coordinates(val)
        if coords is None:
            report.closure_failures.append(what)
            return None
        v = [0] * N
        for t, c in enumerate(coords):
            v[offsets[deg] + t] = c
        return v

    br = {}
    for a in range(N):
        ka, Da = owner[a]
        for b in range(a, N):
            kb, Db = owner[b]
            val = Da @ Db + Db @ Da
            v = place(val, ka + kb, f"[{labels[a]}, {labels[b]}]")
            if v is not None and any(v):
                br[(a, b)] = v
    sq = {}
    for a in range(N):
        if parities[a] == ODD:
            ka, Da = owner[a]
            v = place(Da @ Da, 2 * ka, f"s({labels[a]})")
            if v is not None and any(v):
                sq[a] = v
    h = HomLieSuper2(F, basis, br, sq)
    report.axioms = check_axioms(h)
    return h, report, spaces
