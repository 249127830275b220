"""The quadratic-cochain complex of a Hom-Lie superalgebra with coefficients in a module.

A degree-n cochain is a pair (c, p): c is alternating n-linear with values in
the module, p(x, z_1..z_{n-2}) is quadratic in the odd argument x with polar
form c.  Free coordinates are the values of c on strictly increasing index
tuples and of p on (odd index, strictly increasing tuple); every other value
follows from multilinearity and p(sum l_i f_i, z) = sum l_i^2 p(f_i, z) +
sum_{i<j} l_i l_j c(f_i, f_j, z).

Degree 0 cochains are module vectors, degree 1 cochains are linear maps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from .algebra import EVEN, ODD, HomLieSuper2, SuperBasis
from .linalg import Matrix, SubspaceBasis, axpy, kernel_vectors, rref_rows, solve_rows, unit
from .reps import Representation, adjoint_rep, trivial_rep


class NotACochainError(ValueError):
    pass


class NotClosedError(ValueError):
    pass


class ComplexViolationError(ValueError):
    pass


# layout


class CochainLayout:
    """Slot bookkeeping for degree-n cochains with values in a d-dimensional module."""

    def __init__(self, algebra_basis: SuperBasis, module_basis: SuperBasis, n: int):
        if n < 0:
            raise ValueError("negative degree")
        N = algebra_basis.dim
        self.n = n
        self.algebra_basis = algebra_basis
        self.module_basis = module_basis
        self.d = module_basis.dim
        self.c_slots: list[tuple[int, ...]] = list(combinations(range(N), n))
        self.p_slots: list[tuple[int, tuple[int, ...]]] = (
            [(i, t) for i in algebra_basis.odd_indices for t in combinations(range(N), n - 2)] if n >= 2 else []
        )
        self.c_index = {t: a for a, t in enumerate(self.c_slots)}
        nc = len(self.c_slots)
        self.p_index = {s: nc + a for a, s in enumerate(self.p_slots)}
        self.nslots = nc + len(self.p_slots)

    @property
    def ncoords(self) -> int:
        return self.nslots * self.d

    def slot_parity(self, slot: int) -> int:
        par = self.algebra_basis.parities
        if slot < len(self.c_slots):
            return sum(par[i] for i in self.c_slots[slot]) & 1
        _, t = self.p_slots[slot - len(self.c_slots)]
        return sum(par[i] for i in t) & 1

    def coord_parity(self, coord: int) -> int:
        slot, k = divmod(coord, self.d)
        return self.slot_parity(slot) ^ self.module_basis.parities[k]

    def coords_of_parity(self, parity: int) -> list[int]:
        return [u for u in range(self.ncoords) if self.coord_parity(u) == parity]

    def slot_name(self, slot: int) -> dict:
        labels = self.algebra_basis.labels
        if slot < len(self.c_slots):
            return {"c": [labels[i] for i in self.c_slots[slot]]}
        i, t = self.p_slots[slot - len(self.c_slots)]
        return {"p": labels[i], "args": [labels[j] for j in t]}


# linear expansion of cochain values into slots


def _nonzero(v: Sequence[int]) -> list[tuple[int, int]]:
    return [(i, a) for i, a in enumerate(v) if a]


def expand_c(F, layout: CochainLayout, vecs: Sequence[Sequence[int]]) -> dict[int, int]:
    """c(v_1, ..., v_n) as {c slot: coefficient}."""
    out: dict[int, int] = {}
    if not vecs:
        out[layout.c_index[()]] = 1
        return out
    supports = [_nonzero(v) for v in vecs]
    if any(not s for s in supports):
        return out

    def rec(pos: int, used: tuple[int, ...], coef: int):
        if pos == len(supports):
            key = layout.c_index[tuple(sorted(used))]
            out[key] = out.get(key, 0) ^ coef
            return
        for i, a in supports[pos]:
            if i not in used:
                rec(pos + 1, used + (i,), F.mul(coef, a))

    rec(0, (), 1)
    return {k: v for k, v in out.items() if v}


def _expand_tail(F, vecs: Sequence[Sequence[int]]) -> dict[tuple[int, ...], int]:
    """Alternating multilinear expansion of the z-arguments into increasing tuples."""
    out: dict[tuple[int, ...], int] = {}
    supports = [_nonzero(v) for v in vecs]
    if any(not s for s in supports):
        return out

    def rec(pos: int, used: tuple[int, ...], coef: int):
        if pos == len(supports):
            key = tuple(sorted(used))
            out[key] = out.get(key, 0) ^ coef
            return
        for i, a in supports[pos]:
            if i not in used:
                rec(pos + 1, used + (i,), F.mul(coef, a))

    rec(0, (), 1)
    return out


def expand_p(F, layout: CochainLayout, x: Sequence[int], vecs: Sequence[Sequence[int]]) -> dict[int, int]:
    """p(x, v_1, ..., v_{n-2}) for odd x as {slot: coefficient}."""
    par = layout.algebra_basis.parities
    xs = _nonzero(x)
    for i, _ in xs:
        if par[i] != ODD:
            raise ValueError("the quadratic argument of p must be odd")
    out: dict[int, int] = {}
    tail = _expand_tail(F, vecs)
    for i, a in xs:
        a2 = F.mul(a, a)
        for t, cf in tail.items():
            key = layout.p_index[(i, t)]
            out[key] = out.get(key, 0) ^ F.mul(a2, cf)
    for u, (i, a) in enumerate(xs):
        for j, b in xs[u + 1:]:
            for key, cf in expand_c(F, layout, [unit(len(x), i), unit(len(x), j)] + list(vecs)).items():
                out[key] = out.get(key, 0) ^ F.mul(F.mul(a, b), cf)
    return {k: v for k, v in out.items() if v}


# sparse linear operators between coordinate spaces


class SparseOperator:
    """Rows of (column, coefficient) lists."""

    def __init__(self, F, nrows: int, ncols: int):
        self.field = F
        self.nrows = nrows
        self.ncols = ncols
        self.rows: list[dict[int, int]] = [dict() for _ in range(nrows)]

    def add_block(self, out_slot: int, in_slot: int, d_out: int, d_in: int, coef: int, op: Matrix | None) -> None:
        F = self.field
        if op is None:
            for a in range(d_out):
                r = self.rows[out_slot * d_out + a]
                col = in_slot * d_in + a
                val = r.get(col, 0) ^ coef
                if val:
                    r[col] = val
                else:
                    r.pop(col, None)
            return
        for a in range(d_out):
            r = self.rows[out_slot * d_out + a]
            for b, m in enumerate(op.rows[a]):
                if m:
                    col = in_slot * d_in + b
                    val = r.get(col, 0) ^ F.mul(coef, m)
                    if val:
                        r[col] = val
                    else:
                        r.pop(col, None)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        F = self.field
        mul = F.mul
        out = []
        for r in self.rows:
            acc = 0
            for c, a in r.items():
                x = v[c]
                if x:
                    acc ^= mul(a, x)
            out.append(acc)
        return tuple(out)

    def dense_rows(self, columns: Sequence[int] | None = None) -> list[list[int]]:
        cols = list(range(self.ncols)) if columns is None else list(columns)
        return [[r.get(c, 0) for c in cols] for r in self.rows]


# the complex


class CochainComplex:
    """Cached layouts, cochain spaces and differentials for one (algebra, module) pair."""

    def __init__(self, r: Representation):
        self.rep = r
        self.algebra = r.algebra
        self.field = r.field
        self._layouts: dict[int, CochainLayout] = {}
        self._diff: dict[int, SparseOperator] = {}
        self._cons: dict[int, SparseOperator] = {}
        self._spaces: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        self._rho_cache: dict[tuple[int, ...], Matrix] = {}
        self._apow: dict[int, Matrix] = {}

    # helpers

    def layout(self, n: int) -> CochainLayout:
        if n not in self._layouts:
            self._layouts[n] = CochainLayout(self.algebra.basis, self.rep.module_basis, n)
        return self._layouts[n]

    def rho(self, w: Sequence[int]) -> Matrix:
        key = tuple(w)
        m = self._rho_cache.get(key)
        if m is None:
            m = self.rep.rho(key)
            self._rho_cache[key] = m
        return m

    def apow(self, k: int) -> Matrix:
        if k not in self._apow:
            self._apow[k] = self.algebra.alpha.power(k)
        return self._apow[k]

    # differential

    def differential_terms(self, n: int, out_slot: int) -> list[tuple[int, int, tuple[int, ...] | None]]:
        """Terms (input slot, coefficient, acting vector or None) of d^n at one output slot."""
        g, F = self.algebra, self.field
        N = g.dim
        src, dst = self.layout(n), self.layout(n + 1)
        e = [unit(N, i) for i in range(N)]
        A = g.alpha
        terms: list[tuple[int, int, tuple[int, ...] | None]] = []

        def add_c(vecs, w):
            for s, cf in expand_c(F, src, vecs).items():
                terms.append((s, cf, w))

        def add_p(x, vecs, w):
            for s, cf in expand_p(F, src, x, vecs).items():
                terms.append((s, cf, w))

        if n == 0:
            (i,) = dst.c_slots[out_slot]
            terms.append((0, 1, e[i]))
            return terms
        an1 = self.apow(n - 1)
        nc = len(dst.c_slots)
        if out_slot < nc:
            z = dst.c_slots[out_slot]
            for a in range(n + 1):
                add_c([e[z[b]] for b in range(n + 1) if b != a], an1.apply(e[z[a]]))
            for a, b in combinations(range(n + 1), 2):
                rest = [A.column(z[t]) for t in range(n + 1) if t not in (a, b)]
                add_c([g.bracket_basis(z[a], z[b])] + rest, None)
            return terms
        i, z = dst.p_slots[out_slot - nc]
        x = e[i]
        ax = A.column(i)
        m = len(z)
        add_c([x] + [e[t] for t in z], an1.apply(x))
        add_c([g.square_basis(i)] + [A.column(t) for t in z], None)
        for a in range(m):
            hat = [e[z[t]] for t in range(m) if t != a]
            add_p(x, hat, an1.apply(e[z[a]]))
            add_c([g.bracket_basis(i, z[a]), ax] + [A.column(z[t]) for t in range(m) if t != a], None)
        for a, b in combinations(range(m), 2):
            rest = [A.column(z[t]) for t in range(m) if t not in (a, b)]
            add_p(ax, [g.bracket_basis(z[a], z[b])] + rest, None)
        return terms

    def differential_operator(self, n: int) -> SparseOperator:
        if n not in self._diff:
            src, dst = self.layout(n), self.layout(n + 1)
            d = src.d
            op = SparseOperator(self.field, dst.ncoords, src.ncoords)
            for s in range(dst.nslots):
                for slot, cf, w in self.differential_terms(n, s):
                    op.add_block(s, slot, d, d, cf, None if w is None else self.rho(w))
            self._diff[n] = op
        return self._diff[n]

    # cochain spaces

    def constraint_operator(self, n: int) -> SparseOperator:
        """Equivariance conditions (and the degree-0 conditions) as a linear map to be annihilated."""
        if n in self._cons:
            return self._cons[n]
        g, F = self.algebra, self.field
        lay = self.layout(n)
        d = lay.d
        beta = self.rep.beta
        N = g.dim
        A = g.alpha
        if n == 0:
            pairs = [(x, y) for x in range(N) for y in range(N)]
            op = SparseOperator(F, d * (1 + len(pairs)), d)
            op.add_block(0, 0, d, d, 1, beta)
            op.add_block(0, 0, d, d, 1, None)
            for u, (x, y) in enumerate(pairs):
                diff = self.rho(A.column(x)) @ self.rep.action[y] + self.rep.action[x] @ self.rep.action[y]
                op.add_block(u + 1, 0, d, d, 1, diff)
            self._cons[n] = op
            return op
        op = SparseOperator(F, lay.ncoords, lay.ncoords)
        for s, z in enumerate(lay.c_slots):
            op.add_block(s, s, d, d, 1, beta)
            for t, cf in expand_c(F, lay, [A.column(i) for i in z]).items():
                op.add_block(s, t, d, d, cf, None)
        for (i, z) in lay.p_slots:
            s = lay.p_index[(i, z)]
            op.add_block(s, s, d, d, 1, beta)
            for t, cf in expand_p(F, lay, A.column(i), [A.column(j) for j in z]).items():
                op.add_block(s, t, d, d, cf, None)
        self._cons[n] = op
        return op

    def space(self, n: int, parity: int) -> list[tuple[int, ...]]:
        """Basis (full coordinate vectors) of the parity-homogeneous part of XC^n."""
        key = (n, parity)
        if key not in self._spaces:
            lay = self.layout(n)
            cols = lay.coords_of_parity(parity)
            if not cols:
                self._spaces[key] = []
            else:
                op = self.constraint_operator(n)
                rows = [r for r in op.dense_rows(cols) if any(r)]
                out = []
                for v in kernel_vectors(self.field, rows, len(cols)):
                    full = [0] * lay.ncoords
                    for c, a in zip(cols, v):
                        full[c] = a
                    out.append(tuple(full))
                self._spaces[key] = out
        return self._spaces[key]

    def is_cochain(self, n: int, v: Sequence[int]) -> bool:
        return not any(self.constraint_operator(n).apply(v))

    def d(self, n: int, v: Sequence[int]) -> tuple[int, ...]:
        return self.differential_operator(n).apply(v)


@lru_cache(maxsize=64)
def _complex_for(r: Representation) -> CochainComplex:
    return CochainComplex(r)


def complex_for(g: HomLieSuper2, r: Representation | None = None) -> CochainComplex:
    if r is None:
        r = adjoint_rep(g)
    if r.algebra != g:
        raise ValueError("representation is over a different algebra")
    return _complex_for(r)


def coefficients(g: HomLieSuper2, kind: str | Representation = "adjoint") -> Representation:
    if isinstance(kind, Representation):
        return kind
    if kind == "adjoint":
        return adjoint_rep(g)
    if kind == "trivial":
        return trivial_rep(g)
    raise ValueError(f"unknown coefficients {kind!r}")


# cochain values


_PARITY_NAMES = {"even": (EVEN,), "odd": (ODD,), "both": (EVEN, ODD), "e": (EVEN,), "o": (ODD,)}


class CochainPair:
    """A cochain of a fixed degree stored on its free coordinates."""

    __slots__ = ("complex", "degree", "values")

    def __init__(self, cx: CochainComplex, degree: int, values: Sequence[int]):
        lay = cx.layout(degree)
        if len(values) != lay.ncoords:
            raise ValueError(f"expected {lay.ncoords} coordinates, got {len(values)}")
        self.complex = cx
        self.degree = degree
        self.values = tuple(values)

    @property
    def layout(self) -> CochainLayout:
        return self.complex.layout(self.degree)

    @property
    def field(self):
        return self.complex.field

    def slot_value(self, slot: int) -> tuple[int, ...]:
        d = self.layout.d
        return self.values[slot * d:(slot + 1) * d]

    def _combine(self, terms: dict[int, int]) -> tuple[int, ...]:
        F = self.field
        acc = [0] * self.layout.d
        for s, cf in terms.items():
            axpy(F, acc, cf, self.slot_value(s))
        return tuple(acc)

    def c(self, *vecs: Sequence[int]) -> tuple[int, ...]:
        if len(vecs) != self.degree:
            raise ValueError(f"c takes {self.degree} arguments")
        return self._combine(expand_c(self.field, self.layout, vecs))

    def p(self, x: Sequence[int], *vecs: Sequence[int]) -> tuple[int, ...]:
        if self.degree < 2 or len(vecs) != self.degree - 2:
            raise ValueError(f"p takes 1 + {self.degree - 2} arguments")
        return self._combine(expand_p(self.field, self.layout, x, vecs))

    @property
    def parity(self) -> int | None:
        lay = self.layout
        seen = {lay.coord_parity(u) for u, a in enumerate(self.values) if a}
        if len(seen) > 1:
            return None
        return seen.pop() if seen else EVEN

    def is_zero(self) -> bool:
        return not any(self.values)

    def is_cochain(self) -> bool:
        return self.complex.is_cochain(self.degree, self.values)

    def __add__(self, other: "CochainPair") -> "CochainPair":
        if other.complex is not self.complex or other.degree != self.degree:
            raise ValueError("cochains of different complexes or degrees")
        return CochainPair(self.complex, self.degree, [a ^ b for a, b in zip(self.values, other.values)])

    def scale(self, a: int) -> "CochainPair":
        F = self.field
        return CochainPair(self.complex, self.degree, [F.mul(a, v) for v in self.values])

    def __eq__(self, other) -> bool:
        return isinstance(other, CochainPair) and other.complex is self.complex and (other.degree, other.values) == (
            self.degree,
            self.values,
        )

    def __hash__(self) -> int:
        return hash((id(self.complex), self.degree, self.values))

    def __repr__(self) -> str:
        return f"CochainPair(degree={self.degree}, nonzero={sum(1 for a in self.values if a)})"

    def to_json(self) -> dict:
        lay = self.layout
        c_entries, p_entries = [], []
        for s in range(lay.nslots):
            v = self.slot_value(s)
            if not any(v):
                continue
            if s < len(lay.c_slots):
                c_entries.append({"args": list(lay.c_slots[s]), "value": list(v)})
            else:
                i, t = lay.p_slots[s - len(lay.c_slots)]
                p_entries.append({"x": i, "args": list(t), "value": list(v)})
        return {"degree": self.degree, "c": c_entries, "p": p_entries}

    @classmethod
    def from_json(cls, cx: CochainComplex, data: dict) -> "CochainPair":
        n = int(data["degree"])
        lay = cx.layout(n)
        vals = [0] * lay.ncoords
        d = lay.d

        def put(slot, value):
            for k, a in enumerate(value):
                vals[slot * d + k] ^= int(a)

        for e in data.get("c", []):
            args = [int(a) for a in e["args"]]
            if len(set(args)) < len(args):
                if any(e["value"]):
                    raise NotACochainError("c must vanish on repeated arguments")
                continue
            put(lay.c_index[tuple(sorted(args))], e["value"])
        for e in data.get("p", []):
            args = tuple(sorted(int(a) for a in e["args"]))
            put(lay.p_index[(int(e["x"]), args)], e["value"])
        return cls(cx, n, vals)


def cochain_from_labels(
    cx: CochainComplex,
    n: int,
    c: dict[tuple[str, ...], dict[str, int]] | None = None,
    p: dict[tuple[str, ...], dict[str, int]] | None = None,
) -> CochainPair:
    """Build a cochain from label-keyed values; p keys are (odd label, *argument labels)."""
    lay = cx.layout(n)
    ab, mb = cx.algebra.basis, cx.rep.module_basis
    vals = [0] * lay.ncoords
    d = lay.d
    for key, val in (c or {}).items():
        idx = tuple(sorted(ab.index(k) for k in key))
        if len(set(idx)) < len(idx):
            raise NotACochainError("c must vanish on repeated arguments")
        s = lay.c_index[idx]
        for lab, a in val.items():
            vals[s * d + mb.index(lab)] ^= a
    for key, val in (p or {}).items():
        i = ab.index(key[0])
        t = tuple(sorted(ab.index(k) for k in key[1:]))
        s = lay.p_index[(i, t)]
        for lab, a in val.items():
            vals[s * d + mb.index(lab)] ^= a
    return CochainPair(cx, n, vals)


# public operations


@dataclass
class CochainSpace:
    degree: int
    even: list[CochainPair]
    odd: list[CochainPair]

    @property
    def basis(self) -> list[CochainPair]:
        return self.even + self.odd

    @property
    def dim(self) -> int:
        return len(self.even) + len(self.odd)

    @property
    def even_dim(self) -> int:
        return len(self.even)

    @property
    def odd_dim(self) -> int:
        return len(self.odd)

    def to_json(self) -> dict:
        return {"degree": self.degree, "even_dim": self.even_dim, "odd_dim": self.odd_dim}


def cochain_space(g: HomLieSuper2, r: Representation | None, n: int, parity: str = "both") -> CochainSpace:
    cx = complex_for(g, r)
    want = _PARITY_NAMES[parity]
    ev = [CochainPair(cx, n, v) for v in cx.space(n, EVEN)] if EVEN in want else []
    od = [CochainPair(cx, n, v) for v in cx.space(n, ODD)] if ODD in want else []
    return CochainSpace(n, ev, od)


def differential(g: HomLieSuper2, r: Representation | None, pair: CochainPair) -> CochainPair:
    cx = complex_for(g, r)
    if pair.complex is not cx:
        pair = CochainPair(cx, pair.degree, pair.values)
    if not pair.is_cochain():
        raise NotACochainError(f"degree-{pair.degree} values violate equivariance")
    return CochainPair(cx, pair.degree + 1, cx.d(pair.degree, pair.values))


def _rank(F, vectors: list[Sequence[int]], ncols: int) -> int:
    if not vectors:
        return 0
    return len(rref_rows(F, [list(v) for v in vectors], ncols)[1])


@dataclass
class CohomologyResult:
    n: int
    dim_Z: int
    dim_B: int
    parity_split: tuple[int, int]
    z_split: tuple[int, int]
    b_split: tuple[int, int]
    cocycles: dict = dc_field(default_factory=dict, repr=False)
    coboundaries: dict = dc_field(default_factory=dict, repr=False)
    representatives: dict = dc_field(default_factory=dict, repr=False)

    @property
    def dim_H(self) -> int:
        return self.dim_Z - self.dim_B

    def to_json(self, with_basis: bool = False) -> dict:
        out = {
            "n": self.n,
            "dim_Z": self.dim_Z,
            "dim_B": self.dim_B,
            "dim_H": self.dim_H,
            "parity_split": list(self.parity_split),
        }
        if with_basis:
            out["cocycle_basis"] = [p.to_json() for par in (EVEN, ODD) for p in self.representatives.get(par, [])]
        return out


def _cohomology_part(cx: CochainComplex, n: int, parity: int):
    F = cx.field
    lay = cx.layout(n)
    Kn = cx.space(n, parity)
    images = [cx.d(n, v) for v in Kn]
    ncols_next = cx.layout(n + 1).ncoords
    # cocycles: kernel of the map from coordinates on Kn to images
    if Kn:
        rows = [[img[t] for img in images] for t in range(ncols_next)]
        rows = [row for row in rows if any(row)]
        combos = kernel_vectors(F, rows, len(Kn))
    else:
        combos = []
    Z = []
    for cmb in combos:
        acc = [0] * lay.ncoords
        for a, v in zip(cmb, Kn):
            if a:
                axpy(F, acc, a, v)
        Z.append(tuple(acc))
    if n >= 1:
        prev = cx.space(n - 1, parity)
        B_raw = [cx.d(n - 1, v) for v in prev]
    else:
        B_raw = []
    for b in B_raw:
        if any(cx.d(n, b)):
            raise ComplexViolationError(f"d^{n} o d^{n - 1} is nonzero on a degree-{n - 1} cochain")
        if not cx.is_cochain(n, b):
            raise ComplexViolationError(f"d^{n - 1} leaves the equivariant cochains")
    Bspace = SubspaceBasis(F, lay.ncoords, B_raw)
    reps = []
    acc_space = Bspace
    for z in Z:
        if z not in acc_space:
            reps.append(z)
            acc_space = acc_space + SubspaceBasis(F, lay.ncoords, [z])
    return Z, Bspace, reps


def cohomology(g: HomLieSuper2, r: Representation | None, n: int) -> CohomologyResult:
    """Z^n, B^n and representatives of H^n, split by parity."""
    if n < 0:
        raise ValueError("negative degree")
    cx = complex_for(g, r)
    parts = {par: _cohomology_part(cx, n, par) for par in (EVEN, ODD)}
    z = tuple(len(parts[p][0]) for p in (EVEN, ODD))
    b = tuple(parts[p][1].dim for p in (EVEN, ODD))
    return CohomologyResult(
        n=n,
        dim_Z=sum(z),
        dim_B=sum(b),
        parity_split=(z[0] - b[0], z[1] - b[1]),
        z_split=z,
        b_split=b,
        cocycles={p: [CochainPair(cx, n, v) for v in parts[p][0]] for p in (EVEN, ODD)},
        coboundaries={p: parts[p][1] for p in (EVEN, ODD)},
        representatives={p: [CochainPair(cx, n, v) for v in parts[p][2]] for p in (EVEN, ODD)},
    )


def cohomology_dims(g: HomLieSuper2, r: Representation | None, n: int) -> dict:
    return cohomology(g, r, n).to_json()


def cocycle_basis(g: HomLieSuper2, r: Representation | None, n: int, parity: str = "both") -> list[CochainPair]:
    res = cohomology(g, r, n)
    return [p for par in _PARITY_NAMES[parity] for p in res.cocycles[par]]


def is_cocycle(pair: CochainPair) -> bool:
    return not any(pair.complex.d(pair.degree, pair.values))


def is_coboundary(g: HomLieSuper2, r: Representation | None, pair: CochainPair) -> CochainPair | None:
    """A preimage under the previous differential, or None; raises NotClosedError for non-cocycles."""
    cx = complex_for(g, r)
    if pair.complex is not cx:
        pair = CochainPair(cx, pair.degree, pair.values)
    n = pair.degree
    if not pair.is_cochain():
        raise NotACochainError("not an equivariant cochain")
    if not is_cocycle(pair):
        raise NotClosedError(f"degree-{n} cochain is not closed")
    if pair.is_zero():
        return CochainPair(cx, n - 1, [0] * cx.layout(n - 1).ncoords) if n >= 1 else None
    if n == 0:
        return None
    F = cx.field
    prev = cx.space(n - 1, EVEN) + cx.space(n - 1, ODD)
    if not prev:
        return None
    images = [cx.d(n - 1, v) for v in prev]
    rows = [[img[t] for img in images] for t in range(cx.layout(n).ncoords)]
    sol = solve_rows(F, rows, len(prev), pair.values)
    if sol is None:
        return None
    acc = [0] * cx.layout(n - 1).ncoords
    for a, v in zip(sol, prev):
        if a:
            axpy(F, acc, a, v)
    return CochainPair(cx, n - 1, acc)


def class_coordinates(res: CohomologyResult, pair: CochainPair) -> tuple[int, ...] | None:
    """Coordinates of a cocycle's class against res.representatives (even then odd); None if not a cocycle."""
    cx = pair.complex
    F = cx.field
    reps = [p.values for par in (EVEN, ODD) for p in res.representatives[par]]
    bvecs = [v for par in (EVEN, ODD) for v in res.coboundaries[par].vectors]
    cols = reps + bvecs
    if not cols:
        return () if pair.is_zero() else None
    rows = [[c[t] for c in cols] for t in range(len(pair.values))]
    sol = solve_rows(F, rows, len(cols), pair.values)
    if sol is None:
        return None
    return tuple(sol[: len(reps)])


# functional transcription of the differential, used as an independent check


Cfun = Callable[..., tuple[int, ...]]


def functional_differential(cx: CochainComplex, n: int, cfun: Cfun, pfun: Cfun | None) -> tuple[Cfun, Cfun | None]:
    """d^n of (cfun, pfun) as closures over arbitrary vectors."""
    g, F, r = cx.algebra, cx.field, cx.rep
    A = g.alpha
    d = r.dim

    def add(*vs):
        out = [0] * d
        for v in vs:
            for k, a in enumerate(v):
                out[k] ^= a
        return tuple(out)

    if n == 0:
        def c0(x):
            return r.act(x, cfun())

        return c0, None

    an1 = cx.apow(n - 1)

    def dc(*z):
        terms = []
        for i in range(n + 1):
            hat = [z[t] for t in range(n + 1) if t != i]
            terms.append(r.act(an1.apply(z[i]), cfun(*hat)))
        for i, j in combinations(range(n + 1), 2):
            rest = [A.apply(z[t]) for t in range(n + 1) if t not in (i, j)]
            terms.append(cfun(g.bracket(z[i], z[j]), *rest))
        return add(*terms)

    def dp(x, *z):
        m = len(z)
        ax = A.apply(x)
        terms = [r.act(an1.apply(x), cfun(x, *z)), cfun(g.square(x), *[A.apply(v) for v in z])]
        for i in range(m):
            hat = [z[t] for t in range(m) if t != i]
            terms.append(r.act(an1.apply(z[i]), pfun(x, *hat)))
            terms.append(cfun(g.bracket(x, z[i]), ax, *[A.apply(z[t]) for t in range(m) if t != i]))
        for i, j in combinations(range(m), 2):
            rest = [A.apply(z[t]) for t in range(m) if t not in (i, j)]
            terms.append(pfun(ax, g.bracket(z[i], z[j]), *rest))
        return add(*terms)

    return dc, dp


def _random_vector(F, rng: random.Random, n: int, indices: Iterable[int]) -> tuple[int, ...]:
    v = [0] * n
    for i in indices:
        v[i] = rng.randrange(F.q)
    return tuple(v)


@dataclass
class ComplexReport:
    checks: int = 0
    violations: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "violations": self.violations[:20], "violation_count": len(self.violations)}


def verify_complex(
    g: HomLieSuper2, r: Representation | None, n_max: int, trials: int = 5, seed: int = 0
) -> ComplexReport:
    """d^{n+1} o d^n = 0 for n + 1 <= n_max, by two routes, plus equivariance of d and the two module identities."""
    cx = complex_for(g, r)
    F = cx.field
    N = g.dim
    rep = cx.rep
    rng = random.Random(seed)
    report = ComplexReport()
    odd = g.basis.odd_indices
    for n in range(0, n_max):
        for par in (EVEN, ODD):
            basis = cx.space(n, par)
            for idx, v in enumerate(basis):
                dv = cx.d(n, v)
                report.checks += 2
                if not cx.is_cochain(n + 1, dv):
                    report.violations.append({"kind": "equivariance", "degree": n, "parity": par, "basis_index": idx})
                if any(cx.d(n + 1, dv)):
                    report.violations.append({"kind": "d_squared", "degree": n, "parity": par, "basis_index": idx})
            for t in range(trials if basis else 0):
                acc = [0] * cx.layout(n).ncoords
                for v in basis:
                    axpy(F, acc, rng.randrange(F.q), v)
                pair = CochainPair(cx, n, acc)
                cf = (lambda pr=pair: pr.values) if n == 0 else pair.c
                pf = pair.p if n >= 2 else None
                c1, p1 = functional_differential(cx, n, cf, pf)
                c2, p2 = functional_differential(cx, n + 1, c1, p1)
                zs = [_random_vector(F, rng, N, range(N)) for _ in range(n + 2)]
                report.checks += 1
                if any(c2(*zs)):
                    report.violations.append({"kind": "d_squared_functional_c", "degree": n, "trial": t})
                if odd and n + 2 >= 2:
                    x = _random_vector(F, rng, N, odd)
                    zs = [_random_vector(F, rng, N, range(N)) for _ in range(n)]
                    report.checks += 1
                    if any(p2(x, *zs)):
                        report.violations.append({"kind": "d_squared_functional_p", "degree": n, "trial": t})
    # module identities used by the vanishing argument
    for n in range(2, n_max + 1):
        an1, an2 = cx.apow(n - 1), cx.apow(n - 2)
        for par in (EVEN, ODD):
            basis = cx.space(n, par)
            if not basis:
                continue
            for t in range(trials):
                acc = [0] * cx.layout(n).ncoords
                for v in basis:
                    axpy(F, acc, rng.randrange(F.q), v)
                pair = CochainPair(cx, n, acc)
                zs = [_random_vector(F, rng, N, range(N)) for _ in range(n)]
                val = pair.c(*zs)
                tw = pair.c(*[g.twist(z) for z in zs])
                if odd:
                    x = _random_vector(F, rng, N, odd)
                    lhs = rep.act(an1.apply(x), rep.act(an2.apply(x), val))
                    rhs = rep.act(an2.apply(g.square(x)), tw)
                    report.checks += 1
                    if lhs != rhs:
                        report.violations.append({"kind": "module_identity_i", "degree": n, "trial": t})
                if n >= 2:
                    zi, zj = zs[0], zs[1]
                    lhs = tuple(
                        a ^ b
                        for a, b in zip(
                            rep.act(g.twist(zi), rep.act(zj, val)), rep.act(g.twist(zj), rep.act(zi, val))
                        )
                    )
                    rhs = rep.act(g.bracket(zi, zj), tw)
                    report.checks += 1
                    if lhs != rhs:
                        report.violations.append({"kind": "module_identity_ii", "degree": n, "trial": t})
    return report
