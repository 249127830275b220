"""Dense linear algebra over GF(2^k).

Vectors are tuples of raw field ints.  :class:`Matrix` is an immutable
row-major matrix tied to a field; :class:`SubspaceBasis` stores a subspace by
its reduced row-echelon basis.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import _kernels
from .gf2k import FieldSpec, Scalar, SpecMismatchError


class ShapeError(ValueError):
    """Operand dimensions do not fit together."""


class NotASubspaceError(ValueError):
    """A claimed subspace is not contained in the ambient one."""


def as_vector(v: Iterable, n: int | None = None) -> tuple[int, ...]:
    out = tuple(int(a) for a in v)
    if n is not None and len(out) != n:
        raise ShapeError(f"expected a vector of length {n}, got {len(out)}")
    return out


def vec_add(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(a ^ b for a, b in zip(u, v))


def vec_scale(F: FieldSpec, a: int, v: Sequence[int]) -> tuple[int, ...]:
    if a == 1:
        return tuple(v)
    if a == 0:
        return (0,) * len(v)
    return tuple(F.mul(a, x) for x in v)


def axpy(F: FieldSpec, acc: list[int], a: int, v: Sequence[int]) -> None:
    """acc += a*v in place."""
    if not a:
        return
    if a == 1:
        for i, x in enumerate(v):
            if x:
                acc[i] ^= x
        return
    mt = F.mul_table
    if mt is not None:
        ma = mt[a]
        for i, x in enumerate(v):
            if x:
                acc[i] ^= ma[x]
    else:
        for i, x in enumerate(v):
            if x:
                acc[i] ^= F.mul(a, x)


def unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(n))


def rref_rows(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    return _kernels.rref_rows([list(r) for r in rows], ncols, F)


class Matrix:
    """Immutable matrix over GF(2^k); acts on column vectors."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field: FieldSpec, rows: Iterable[Iterable], ncols: int | None = None):
        self.field = field
        data = tuple(as_vector(r) for r in rows)
        if ncols is None:
            if not data:
                raise ShapeError("cannot infer the column count of an empty matrix")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise ShapeError("ragged rows")
            if any(not 0 <= a < field.q for a in r):
                raise ValueError("entry outside the field")
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [(0,) * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, [unit(n, i) for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence[int]], nrows: int | None = None) -> "Matrix":
        if not columns:
            return cls.zeros(field, nrows or 0, 0)
        n = len(columns[0])
        return cls(field, [[col[i] for col in columns] for i in range(n)], len(columns))

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self._rows[r][c]

    def row(self, r: int) -> tuple[int, ...]:
        return self._rows[r]

    def column(self, c: int) -> tuple[int, ...]:
        return tuple(r[c] for r in self._rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(c) for c in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.columns(), self.nrows)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ncols:
            raise ShapeError(f"matrix with {self.ncols} columns applied to length-{len(v)} vector")
        F = self.field
        acc = [0] * self.nrows
        for c, a in enumerate(v):
            if a:
                axpy(F, acc, a, self.column(c))
        return tuple(acc)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if other.field != self.field:
                raise SpecMismatchError("matrices over different fields")
            if self.ncols != other.nrows:
                raise ShapeError(f"{self.shape} @ {other.shape}")
            cols = [self.apply(other.column(c)) for c in range(other.ncols)]
            return Matrix.from_columns(self.field, cols, self.nrows) if cols else Matrix.zeros(self.field, self.nrows, 0)
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} + {other.shape}")
        return Matrix(self.field, [vec_add(a, b) for a, b in zip(self._rows, other._rows)], self.ncols)

    def scale(self, a: int) -> "Matrix":
        return Matrix(self.field, [vec_scale(self.field, a, r) for r in self._rows], self.ncols)

    def power(self, e: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ShapeError("power of a non-square matrix")
        if e < 0:
            return self.inverse().power(-e)
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def rank(self) -> int:
        return len(rref_rows(self.field, self._rows, self.ncols)[1])

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ShapeError("inverse of a non-square matrix")
        aug = [list(r) + list(unit(n, i)) for i, r in enumerate(self._rows)]
        red, piv = rref_rows(self.field, aug, 2 * n)
        if piv[:n] != list(range(n)) or len(red) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix(self.field, [r[n:] for r in red[:n]], n)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self._rows == other._rows
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ncols, self._rows))

    def __repr__(self) -> str:
        return f"Matrix({[list(r) for r in self._rows]})"

    def to_json(self) -> dict:
        return {"rows": self.nrows, "cols": self.ncols, "entries": [a for r in self._rows for a in r]}

    @classmethod
    def from_json(cls, field: FieldSpec, data: dict) -> "Matrix":
        r, c = int(data["rows"]), int(data["cols"])
        flat = [int(a) for a in data["entries"]]
        if len(flat) != r * c:
            raise ShapeError(f"entries length {len(flat)} != {r}*{c}")
        return cls(field, [flat[i * c:(i + 1) * c] for i in range(r)], c)

    @classmethod
    def from_scalars(cls, rows: Sequence[Sequence[Scalar]]) -> "Matrix":
        F = rows[0][0].spec
        return cls(F, [[s.bits for s in r] for r in rows], len(rows[0]))


def rref(m: Matrix) -> tuple[Matrix, int]:
    red, piv = rref_rows(m.field, m.rows, m.ncols)
    rank = len(piv)
    full = red + [[0] * m.ncols for _ in range(m.nrows - rank)]
    return Matrix(m.field, full, m.ncols), rank


def rank(m: Matrix) -> int:
    return m.rank()


class SubspaceBasis:
    """A subspace of F^n stored by its reduced row-echelon basis."""

    __slots__ = ("field", "ambient_dim", "vectors", "pivots")

    def __init__(self, field: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence[int]] = ()):
        vecs = [as_vector(v, ambient_dim) for v in vectors]
        red, piv = rref_rows(field, vecs, ambient_dim) if vecs else ([], [])
        self.field = field
        self.ambient_dim = ambient_dim
        self.vectors = tuple(tuple(r) for r in red)
        self.pivots = tuple(piv)

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "SubspaceBasis":
        return cls(field, n, [unit(n, i) for i in range(n)])

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "SubspaceBasis":
        return cls(field, n, [])

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Remainder of v after clearing the pivot columns."""
        acc = list(as_vector(v, self.ambient_dim))
        for p, b in zip(self.pivots, self.vectors):
            a = acc[p]
            if a:
                axpy(self.field, acc, a, b)
        return tuple(acc)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Coefficients of v in this basis, or None if v is outside the span."""
        v = as_vector(v, self.ambient_dim)
        if not self.contains(v):
            return None
        return tuple(v[p] for p in self.pivots)

    def contains_space(self, other: "SubspaceBasis") -> bool:
        return all(self.contains(v) for v in other.vectors)

    def __add__(self, other: "SubspaceBasis") -> "SubspaceBasis":
        return SubspaceBasis(self.field, self.ambient_dim, self.vectors + other.vectors)

    def complement_units(self) -> list[int]:
        """Non-pivot coordinates; their unit vectors complete this basis."""
        ps = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in ps]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubspaceBasis)
            and self.ambient_dim == other.ambient_dim
            and self.vectors == other.vectors
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.vectors))

    def __repr__(self) -> str:
        return f"SubspaceBasis(dim={self.dim}, ambient={self.ambient_dim})"


def span(field: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence[int]]) -> SubspaceBasis:
    return SubspaceBasis(field, ambient_dim, vectors)


def kernel_basis(m: Matrix) -> SubspaceBasis:
    return SubspaceBasis(m.field, m.ncols, kernel_vectors(m.field, m.rows, m.ncols))


def kernel_vectors(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """One kernel vector per free column of the row-reduced system."""
    red, piv = rref_rows(F, rows, ncols)
    pset = set(piv)
    out = []
    for f in range(ncols):
        if f in pset:
            continue
        x = [0] * ncols
        x[f] = 1
        for r, p in zip(red, piv):
            x[p] = r[f]
        out.append(tuple(x))
    return out


def solve(m: Matrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """A particular solution of m x = b, or None when the system is inconsistent."""
    b = as_vector(b)
    if len(b) != m.nrows:
        raise ShapeError(f"right-hand side has length {len(b)}, matrix has {m.nrows} rows")
    return solve_rows(m.field, m.rows, m.ncols, b)


def solve_rows(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int, b: Sequence[int]) -> tuple[int, ...] | None:
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    red, piv = rref_rows(F, aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [0] * ncols
    for r, p in zip(red, piv):
        x[p] = r[ncols]
    return tuple(x)


def quotient_dim(z: SubspaceBasis, b: SubspaceBasis) -> int:
    if z.ambient_dim != b.ambient_dim:
        raise ShapeError("subspaces of different ambient spaces")
    if not z.contains_space(b):
        raise NotASubspaceError("the smaller space is not contained in the larger one")
    return z.dim - b.dim
