"""Arithmetic in GF(2^k).

Field elements are plain ints whose bits are polynomial coefficients
(bit 0 is the constant term).  A :class:`FieldSpec` carries the modulus and
the lookup tables; every other module does arithmetic through it on raw ints.
:class:`Scalar` wraps an int together with its field for interactive use.
"""

from __future__ import annotations

import random
from functools import lru_cache

STANDARD_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    8: 0b100011011,
}

# full q*q multiplication table up to this degree, log/exp tables above it
_FULL_TABLE_MAX_K = 8
_LOG_TABLE_MAX_K = 16


class SpecMismatchError(ValueError):
    """Operands live in different fields."""


def degree(p: int) -> int:
    return p.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def polymod(a: int, m: int) -> int:
    dm = degree(m)
    while a and degree(a) >= dm:
        a ^= m << (degree(a) - dm)
    return a


def mulmod(a: int, b: int, m: int) -> int:
    return polymod(clmul(a, b), m)


def is_irreducible(modulus: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    k = degree(modulus)
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for p in range(1 << d, 1 << (d + 1)):
            if polymod(modulus, p) == 0:
                return False
    return True


class FieldSpec:
    """GF(2^k) defined by an irreducible modulus of degree k."""

    __slots__ = ("k", "modulus", "q", "_mul", "_inv", "_log", "_exp")

    def __init__(self, k: int, modulus: int | None = None):
        if k < 1:
            raise ValueError("extension degree must be at least 1")
        if modulus is None:
            if k not in STANDARD_MODULI:
                raise ValueError(f"no standard modulus for k={k}; pass one explicitly")
            modulus = STANDARD_MODULI[k]
        if degree(modulus) != k:
            raise ValueError(f"modulus {modulus:#b} does not have degree {k}")
        if not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus:#b} is reducible over GF(2)")
        self.k = k
        self.modulus = modulus
        self.q = 1 << k
        self._mul = None
        self._log = None
        self._exp = None
        self._build_tables()

    def _build_tables(self) -> None:
        q, m = self.q, self.modulus
        if self.k <= _LOG_TABLE_MAX_K:
            gen = self._find_generator()
            exp = [0] * (2 * q)
            log = [0] * q
            x = 1
            for i in range(q - 1):
                exp[i] = x
                log[x] = i
                x = mulmod(x, gen, m)
            for i in range(q - 1, 2 * q):
                exp[i] = exp[i - (q - 1)]
            self._exp, self._log = exp, log
            self._inv = [0] + [exp[(q - 1 - log[a]) % (q - 1)] for a in range(1, q)]
            if self.k <= _FULL_TABLE_MAX_K:
                self._mul = [
                    [0] * q if a == 0 else [0] + [exp[log[a] + log[b]] for b in range(1, q)]
                    for a in range(q)
                ]
        else:
            self._inv = None

    def _find_generator(self) -> int:
        q, m = self.q, self.modulus
        if q == 2:
            return 1
        order = q - 1
        primes = [p for p in range(2, order + 1) if order % p == 0 and all(p % d for d in range(2, p))]
        for g in range(2, q):
            if all(self._pow_slow(g, order // p) != 1 for p in primes):
                return g
        raise AssertionError("multiplicative group has no generator")

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = mulmod(r, a, self.modulus)
            a = mulmod(a, a, self.modulus)
            e >>= 1
        return r

    # raw-int arithmetic

    @property
    def mul_table(self) -> list[list[int]] | None:
        """q*q product table, or None for large fields."""
        return self._mul

    @property
    def inv_table(self) -> list[int] | None:
        return self._inv

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        if not a or not b:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return mulmod(a, b, self.modulus)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^k)")
        if self._inv is not None:
            return self._inv[a]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def sq(self, a: int) -> int:
        return self.mul(a, a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def random(self, rng: random.Random, nonzero: bool = False) -> int:
        return rng.randrange(1 if nonzero else 0, self.q)

    def __call__(self, bits: int) -> "Scalar":
        return Scalar(bits, self)

    # identity and serialization

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.k, self.modulus) == (other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.k, self.modulus))

    def __repr__(self) -> str:
        return f"GF(2^{self.k}, modulus={self.modulus:#x})"

    def to_json(self) -> dict:
        return {"k": self.k, "modulus": self.modulus}

    @staticmethod
    def from_json(data: dict) -> "FieldSpec":
        return field(int(data["k"]), int(data["modulus"]))


@lru_cache(maxsize=None)
def field(k: int, modulus: int | None = None) -> FieldSpec:
    """Cached field constructor; the standard modulus is used when omitted."""
    if modulus is not None and STANDARD_MODULI.get(k) == modulus:
        modulus = None
    return FieldSpec(k, modulus)


def parse_field(name: str) -> FieldSpec:
    """Accept 'gf2', 'gf16', 'GF(256)', or a bare order like '4'."""
    s = name.strip().lower().replace("gf", "").strip("()")
    q = int(s)
    if q < 2 or q & (q - 1):
        raise ValueError(f"not a power of two: {name!r}")
    return field(q.bit_length() - 1)


GF2 = field(1)
GF4 = field(2)
GF8 = field(3)
GF16 = field(4)
GF256 = field(8)


class Scalar:
    """An element of GF(2^k) tied to its field."""

    __slots__ = ("bits", "spec")

    def __init__(self, bits: int, spec: FieldSpec):
        if not 0 <= bits < spec.q:
            bits = polymod(bits, spec.modulus) if bits >= 0 else None
            if bits is None:
                raise ValueError("negative bit-polynomial")
        self.bits = bits
        self.spec = spec

    def _check(self, other: "Scalar") -> None:
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatchError(f"{self.spec} vs {other.spec}")

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, int) and not isinstance(other, bool):
            return Scalar(other, self.spec)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return Scalar(self.bits ^ other.bits, self.spec)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        return Scalar(self.spec.mul(self.bits, other.bits), self.spec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return Scalar(self.spec.div(self.bits, other.bits), self.spec)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        return Scalar(self.spec.pow(self.bits, e), self.spec)

    def inverse(self) -> "Scalar":
        return Scalar(self.spec.inv(self.bits), self.spec)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.spec == other.spec and self.bits == other.bits
        if isinstance(other, int):
            return self.bits == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.bits, self.spec))

    def __bool__(self) -> bool:
        return self.bits != 0

    def __int__(self) -> int:
        return self.bits

    def __repr__(self) -> str:
        return f"Scalar({self.bits:#x}, GF(2^{self.spec.k}))"


def f_add(a: Scalar, b: Scalar) -> Scalar:
    a._check(b)
    return a + b


def f_mul(a: Scalar, b: Scalar) -> Scalar:
    a._check(b)
    return a * b


def f_inv(a: Scalar) -> Scalar:
    return a.inverse()
