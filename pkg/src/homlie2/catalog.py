"""Named algebras, the low-dimensional families and a brute-force enumerator.

Families in superdimension (1|2) use the basis e, f1, f2 with

    a(e) = s e,  a(f1) = t1 f1,  a(f2) = r2 f2        (diagonal shape)
    a(e) = s e,  a(f1) = t1 f1,  a(f2) = f1 + t1 f2   (jordan shape)
    [e, f1] = a1 f1 + a2 f2,  [e, f2] = b1 f1 + b2 f2,
    s(f1) = rho1 e,  s(f2) = rho2 e,  s(f1 + f2) = rho3 e.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import permutations, product
from typing import Callable, Iterable

from .algebra import EVEN, ODD, AxiomReport, HomLieSuper2, SuperBasis, check_axioms
from .gf2k import FieldSpec, GF2, field as make_field
from .linalg import Matrix

OO_BASIS = SuperBasis(("h", "x2", "y2", "x1", "y1"), (EVEN, EVEN, EVEN, ODD, ODD))
BASIS_11 = SuperBasis(("e", "f"), (EVEN, ODD))
BASIS_12 = SuperBasis(("e", "f1", "f2"), (EVEN, ODD, ODD))

ENUMERATION_LIMIT = 1 << 20


class AdmissibilityError(ValueError):
    """Parameters violate a condition of the requested family."""


class CatalogDefectError(ValueError):
    """An admissible instance of a family fails the axioms."""

    def __init__(self, name: str, params: dict, report: AxiomReport):
        super().__init__(f"{name} with {params} fails {report.failures()}")
        self.name = name
        self.params = params
        self.report = report


class UnsupportedError(ValueError):
    pass


class TooLargeError(ValueError):
    pass


# oo and its twists


def oo_alpha(F: FieldSpec, eps: int = 0) -> HomLieSuper2:
    e2 = F.mul(eps, eps)
    return HomLieSuper2.from_labels(
        F,
        OO_BASIS,
        brackets={
            ("x1", "y1"): {"h": 1},
            ("x2", "y2"): {"h": 1},
            ("h", "x1"): {"x1": 1},
            ("h", "y1"): {"x1": eps, "y1": 1},
            ("x2", "y1"): {"x1": 1},
            ("y2", "x1"): {"x1": eps, "y1": 1},
        },
        squares={"x1": {"x2": 1}, "y1": {"h": eps, "x2": e2, "y2": 1}},
        alpha={"y1": {"x1": eps, "y1": 1}, "y2": {"h": eps, "x2": e2, "y2": 1}},
    )


def oo(F: FieldSpec = GF2) -> HomLieSuper2:
    return oo_alpha(F, 0)


def oo_morphism(F: FieldSpec, d1: int, d2: int, e1: int, e2: int) -> Matrix:
    """The four-parameter map x1 -> d1 x1 + d2 y1, y1 -> e1 x1 + e2 y1 extended to oo."""
    m = F.mul
    cols = {
        "h": {"h": 1},
        "x1": {"x1": d1, "y1": d2},
        "y1": {"x1": e1, "y1": e2},
        "x2": {"h": m(d1, d2), "x2": m(d1, d1), "y2": m(d2, d2)},
        "y2": {"h": m(e1, e2), "x2": m(e1, e1), "y2": m(e2, e2)},
    }
    idx = OO_BASIS.index
    columns = []
    for lab in OO_BASIS.labels:
        v = [0] * 5
        for k, c in cols[lab].items():
            v[idx(k)] ^= c
        columns.append(v)
    return Matrix.from_columns(F, columns)


# (1|1) and (1|2) structures from parameters


def algebra_11(F: FieldSpec, lam1: int, lam2: int, rho: int, gamma: int) -> HomLieSuper2:
    """a(e) = lam1 e, a(f) = lam2 f, s(f) = rho e, [e, f] = gamma f."""
    return HomLieSuper2.from_labels(
        F,
        BASIS_11,
        brackets={("e", "f"): {"f": gamma}},
        squares={"f": {"e": rho}},
        alpha={"e": {"e": lam1}, "f": {"f": lam2}},
    )


def algebra_12(F: FieldSpec, shape: str, p: dict) -> HomLieSuper2:
    g = p.get
    s, t1 = g("s", 0), g("t1", 0)
    if shape == "diagonal":
        af2 = {"f2": g("r2", 0)}
    elif shape == "jordan":
        af2 = {"f1": 1, "f2": t1}
    else:
        raise ValueError(f"unknown shape {shape!r}")
    rho1, rho2, rho3 = g("rho1", 0), g("rho2", 0), g("rho3", 0)
    return HomLieSuper2.from_labels(
        F,
        BASIS_12,
        brackets={
            ("e", "f1"): {"f1": g("a1", 0), "f2": g("a2", 0)},
            ("e", "f2"): {"f1": g("b1", 0), "f2": g("b2", 0)},
            ("f1", "f2"): {"e": rho1 ^ rho2 ^ rho3},
        },
        squares={"f1": {"e": rho1}, "f2": {"e": rho2}},
        alpha={"e": {"e": s}, "f1": {"f1": t1}, "f2": af2},
    )


def params_12(g: HomLieSuper2) -> tuple[str | None, dict]:
    """Read (shape, parameters) off a (1|2) algebra; shape is None when the twist fits neither form."""
    if g.basis.sdim != (1, 2):
        raise UnsupportedError(f"superdimension {g.basis.sdim} is not (1|2)")
    (e,) = g.basis.even_indices
    f1, f2 = g.basis.odd_indices
    A = g.alpha
    p = {
        "s": A[e, e],
        "t1": A[f1, f1],
        "a1": g.bracket_basis(e, f1)[f1],
        "a2": g.bracket_basis(e, f1)[f2],
        "b1": g.bracket_basis(e, f2)[f1],
        "b2": g.bracket_basis(e, f2)[f2],
        "rho1": g.square_basis(f1)[e],
        "rho2": g.square_basis(f2)[e],
    }
    p["rho3"] = p["rho1"] ^ p["rho2"] ^ g.bracket_basis(f1, f2)[e]
    shape = None
    if A[f2, f1] == 0:
        if A[f1, f2] == 0:
            shape = "diagonal"
            p["r2"] = A[f2, f2]
        elif A[f1, f2] == 1 and A[f2, f2] == A[f1, f1]:
            shape = "jordan"
    return shape, p


# family descriptors

Condition = tuple[str, Callable[[FieldSpec, dict], bool]]


@dataclass(frozen=True)
class FamilyDescriptor:
    name: str
    params: tuple[str, ...]
    description: str
    conditions: tuple[Condition, ...] = ()
    sdim: tuple[int, int] = (1, 2)
    shape: str | None = None
    squaring_form: Callable[[FieldSpec, dict, int], int] | None = None
    fixed_zero: tuple[str, ...] = ()
    defaults: Callable[[FieldSpec, dict], dict] | None = None
    builder: Callable[[FieldSpec, dict], HomLieSuper2] | None = dc_field(default=None, compare=False)

    def complete(self, F: FieldSpec, params: dict) -> dict:
        unknown = set(params) - set(self.params)
        if unknown:
            raise AdmissibilityError(f"{self.name}: unknown parameters {sorted(unknown)}")
        p = {k: 0 for k in self.params}
        if self.defaults is not None:
            p.update(self.defaults(F, params))
        p.update(params)
        for k in self.fixed_zero:
            p[k] = 0
        return p

    def violations(self, F: FieldSpec, p: dict) -> list[str]:
        bad = [desc for desc, pred in self.conditions if not pred(F, p)]
        for k in self.fixed_zero:
            if p.get(k, 0):
                bad.append(f"{k} = 0")
        if self.squaring_form is not None and not _form_holds(F, p, self.squaring_form):
            bad.append(f"s(f1 + l f2) has the form {self.description}")
        return bad

    def build(self, F: FieldSpec, params: dict) -> HomLieSuper2:
        if self.builder is not None:
            return self.builder(F, params)
        return algebra_12(F, self.shape, params)


def _form_holds(F: FieldSpec, p: dict, form) -> bool:
    """Compare a row's closed form for s(f1 + l f2) with rho1 + l^2 rho2 + l [f1, f2] at every l."""
    r1, r2 = p.get("rho1", 0), p.get("rho2", 0)
    cross = r1 ^ r2 ^ p.get("rho3", 0)
    return all(
        form(F, p, lam) == r1 ^ F.mul(F.mul(lam, lam), r2) ^ F.mul(lam, cross) for lam in range(F.q)
    )


def _nz(*names: str) -> Condition:
    return (" != 0".join(names) + " != 0" if len(names) == 1 else ", ".join(names) + " != 0",
            lambda F, p: all(p[n] for n in names))


def _zero(*names: str) -> Condition:
    return (", ".join(names) + " = 0", lambda F, p: not any(p[n] for n in names))


def _eq(desc: str, f: Callable[[FieldSpec, dict], tuple[int, int]]) -> Condition:
    return (desc, lambda F, p: (lambda ab: ab[0] == ab[1])(f(F, p)))


_S_EQ_T1SQ = _eq("s = t1^2", lambda F, p: (p["s"], F.mul(p["t1"], p["t1"])))
_S_NOT_01 = ("s != 0, 1", lambda F, p: p["s"] not in (0, 1))
_TYPE_I = ("a1 = a2 = b1 = b2 = 0", lambda F, p: not any(p[k] for k in ("a1", "a2", "b1", "b2")))
_TYPE_II = ("[e, g1] != 0", lambda F, p: any(p[k] for k in ("a1", "a2", "b1", "b2")))
_ZERO_SQ = _zero("rho1", "rho2", "rho3")


def _t1sq(F, params):
    return {"s": F.mul(params.get("t1", 0), params.get("t1", 0))}


def _rho3_jordan(F, p, extra):
    t1 = p["t1"]
    if t1 == 0:
        return None
    return F.mul(F.div(1 ^ t1, t1), p["rho1"]) ^ extra


def _a5_rho3(F, p):
    return _rho3_jordan(F, p, p["rho2"])


def _a6_rho3(F, p):
    return _rho3_jordan(F, p, 0)


# reading of the token "rs2" in the B5/B6 rows: "product" means s*r2, "r2" means r2
RS2_READING = os.environ.get("HOMLIE2_RS2_READING", "product")


def _rs2(F, p, reading=None):
    reading = reading or RS2_READING
    return F.mul(p["s"], p["r2"]) if reading == "product" else p["r2"]


def _mk_families() -> dict[str, FamilyDescriptor]:
    fams: dict[str, FamilyDescriptor] = {}
    diag = ("s", "t1", "r2")
    jor = ("s", "t1")
    rhos = ("rho1", "rho2", "rho3")
    ab = ("a1", "a2", "b1", "b2")
    m = lambda F, a, b: F.mul(a, b)  # noqa: E731
    sq = lambda F, a: F.mul(a, a)  # noqa: E731

    fams["oo"] = FamilyDescriptor(
        "oo", (), "the ortho-orthogonal Lie superalgebra, identity twist", sdim=(3, 2), builder=lambda F, p: oo(F)
    )
    fams["oo_alpha"] = FamilyDescriptor(
        "oo_alpha", ("eps",), "oo twisted by x1 -> x1, y1 -> eps x1 + y1", sdim=(3, 2),
        builder=lambda F, p: oo_alpha(F, p["eps"]),
    )
    fams["dim11"] = FamilyDescriptor(
        "dim11", ("lam", "rho"), "a(e) = e, a(f) = lam f, s(f) = rho e, [e, f] = rho lam f",
        conditions=(_nz("lam"), _nz("rho")), sdim=(1, 1),
        builder=lambda F, p: algebra_11(F, 1, p["lam"], p["rho"], F.mul(p["rho"], p["lam"])),
    )

    def row(name, shape, desc, conds, form, zero=(), defaults=_t1sq):
        params = (diag if shape == "diagonal" else jor) + rhos + ab
        fams[name] = FamilyDescriptor(
            name, params, desc, tuple(conds), shape=shape, squaring_form=form,
            fixed_zero=tuple(zero), defaults=defaults,
        )

    # type I, diagonal twist
    row("A1", "diagonal", "s(f1) = rho1 e, s(f2) = 0, s(f1 + l f2) = rho1 e",
        [_nz("rho1"), _S_EQ_T1SQ], lambda F, p, l: p["rho1"], zero=("rho2",) + ab,
        defaults=lambda F, q: {**_t1sq(F, q), "rho3": q.get("rho1", 0)})
    row("A2", "diagonal", "s(f1 + l f2) = (rho1 + l^2 rho2) e",
        [_nz("rho1", "rho2"), _S_EQ_T1SQ, _eq("r2 = t1", lambda F, p: (p["r2"], p["t1"]))],
        lambda F, p, l: p["rho1"] ^ m(F, sq(F, l), p["rho2"]), zero=ab,
        defaults=lambda F, q: {**_t1sq(F, q), "r2": q.get("t1", 0),
                               "rho3": q.get("rho1", 0) ^ q.get("rho2", 0)})
    row("A3", "diagonal", "s(f2) = 0, s(f1 + l f2) = ((1 + l) rho1 + l rho3) e",
        [_nz("rho1"), ("rho1 + rho3 != 0", lambda F, p: p["rho1"] ^ p["rho3"] != 0), _S_EQ_T1SQ,
         _eq("s = t1 r2", lambda F, p: (p["s"], m(F, p["t1"], p["r2"]))), _nz("r2")],
        lambda F, p, l: m(F, 1 ^ l, p["rho1"]) ^ m(F, l, p["rho3"]), zero=("rho2",) + ab)
    row("A4", "diagonal", "s(f1 + l f2) = l (rho1 + (1 + l) rho2 + rho3) e + rho1 e",
        [_nz("rho1", "rho2"), ("rho1 + rho2 + rho3 != 0", lambda F, p: p["rho1"] ^ p["rho2"] ^ p["rho3"] != 0),
         _S_EQ_T1SQ, _eq("t1 = r2", lambda F, p: (p["t1"], p["r2"])), _nz("r2")],
        lambda F, p, l: m(F, l, p["rho1"] ^ m(F, 1 ^ l, p["rho2"]) ^ p["rho3"]) ^ p["rho1"], zero=ab,
        defaults=lambda F, q: {**_t1sq(F, q), "r2": q.get("t1", 0)})
    # type I, jordan twist
    row("A5", "jordan", "s(f2) = rho2 e, s(f1 + l f2) = l (rho1 + (1 + l) rho2) e + (l rho3 + rho1) e",
        [_nz("rho1", "rho2"), _nz("t1"),
         ("rho3 = ((1 + t1)/t1) rho1 + rho2", lambda F, p: _a5_rho3(F, p) == p["rho3"]), _S_EQ_T1SQ],
        lambda F, p, l: m(F, l, p["rho1"] ^ m(F, 1 ^ l, p["rho2"])) ^ m(F, l, p["rho3"]) ^ p["rho1"], zero=ab,
        defaults=lambda F, q: {**_t1sq(F, q), "rho3": (_a5_rho3(F, {"rho1": 0, "rho2": 0, **q}) or 0)})
    row("A6", "jordan", "s(f2) = 0, s(f1 + l f2) = (l (rho1 + rho3) + rho1) e",
        [_nz("rho1", "rho3"), _nz("t1"),
         ("rho3 = ((1 + t1)/t1) rho1", lambda F, p: _a6_rho3(F, p) == p["rho3"]), _S_EQ_T1SQ],
        lambda F, p, l: m(F, l, p["rho1"] ^ p["rho3"]) ^ p["rho1"], zero=("rho2",) + ab,
        defaults=lambda F, q: {**_t1sq(F, q), "rho3": (_a6_rho3(F, {"rho1": 0, **q}) or 0)})
    row("A7", "jordan", "s(f2) = 0, s(f1 + l f2) = rho1 (1 + l) e",
        [_nz("rho1"), _eq("s = 1", lambda F, p: (p["s"], 1)), _eq("t1 = 1", lambda F, p: (p["t1"], 1))],
        lambda F, p, l: m(F, p["rho1"], 1 ^ l), zero=("rho2", "rho3") + ab,
        defaults=lambda F, q: {"s": 1, "t1": 1})
    row("A8", "jordan", "s(f1) = 0, s(f1 + l f2) = l (rho2 + rho3 + l rho2) e",
        [_nz("rho2"), _eq("s = 0", lambda F, p: (p["s"], 0)), _eq("t1 = 0", lambda F, p: (p["t1"], 0))],
        lambda F, p, l: m(F, l, p["rho2"] ^ p["rho3"] ^ m(F, l, p["rho2"])), zero=("rho1",) + ab,
        defaults=lambda F, q: {})
    row("A9", "jordan", "s(f1) = 0, s(f1 + l f2) = l^2 rho2 e",
        [_nz("rho2"), _S_EQ_T1SQ, _nz("t1")],
        lambda F, p, l: m(F, sq(F, l), p["rho2"]), zero=("rho1",) + ab,
        defaults=lambda F, q: {**_t1sq(F, q), "rho3": q.get("rho2", 0)})
    row("A10", "jordan", "s(f1) = s(f2) = 0, s(f1 + l f2) = l rho3 e",
        [_nz("rho3"), _eq("s = 0", lambda F, p: (p["s"], 0)), _eq("t1 = 0", lambda F, p: (p["t1"], 0))],
        lambda F, p, l: m(F, l, p["rho3"]), zero=("rho1", "rho2") + ab, defaults=lambda F, q: {})
    # type II, diagonal twist
    zero_form = lambda F, p, l: 0  # noqa: E731
    row("B1", "diagonal", "[e, f1] = a1 f1 + a2 f2, [e, f2] = b1 f1 + b2 f2",
        [_TYPE_II, _eq("s = 1", lambda F, p: (p["s"], 1)), _eq("t1 = r2", lambda F, p: (p["t1"], p["r2"]))],
        zero_form, zero=rhos, defaults=lambda F, q: {"s": 1, "r2": q.get("t1", 0)})
    row("B2", "diagonal", "[e, f1] = a1 f1, [e, f2] = b2 f2",
        [_TYPE_II, _eq("s = 1", lambda F, p: (p["s"], 1)), ("t1 != r2", lambda F, p: p["t1"] != p["r2"])],
        zero_form, zero=rhos + ("a2", "b1"), defaults=lambda F, q: {"s": 1})
    row("B3", "diagonal", "[e, f1] = a1 f1 + a2 f2, [e, f2] = b1 f1 + b2 f2",
        [_TYPE_II, _S_NOT_01, _zero("t1", "r2")], zero_form, zero=rhos, defaults=lambda F, q: {})
    row("B4", "diagonal", "[e, f1] = 0, [e, f2] = b2 f2",
        [_TYPE_II, _S_NOT_01, _nz("t1"), _zero("r2")], zero_form, zero=rhos + ("a1", "a2", "b1"),
        defaults=lambda F, q: {})
    row("B5", "diagonal", "[e, f1] = 0, [e, f2] = b1 f1",
        [_nz("b1"), _S_NOT_01, _eq("t1 = rs2", lambda F, p: (p["t1"], _rs2(F, p)))],
        zero_form, zero=rhos + ("a1", "a2", "b2"), defaults=lambda F, q: {})
    row("B6", "diagonal", "[e, f1] = a2 f2, [e, f2] = 0",
        [_nz("a2"), _S_NOT_01, ("t1 != rs2", lambda F, p: p["t1"] != _rs2(F, p))],
        zero_form, zero=rhos + ("a1", "b1", "b2"), defaults=lambda F, q: {})
    row("B7", "diagonal", "[e, f1] = a2 f2, [e, f2] = b2 f2",
        [_TYPE_II, _S_NOT_01, _zero("r2")], zero_form, zero=rhos + ("a1", "b1"), defaults=lambda F, q: {})
    # type II, jordan twist
    row("B8", "jordan", "[e, f1] = a1 f1, [e, f2] = b1 f1 + a1 f2",
        [_TYPE_II, _eq("b2 = a1", lambda F, p: (p["b2"], p["a1"])), _eq("s = 1", lambda F, p: (p["s"], 1)),
         _eq("t1 = 0", lambda F, p: (p["t1"], 0))],
        zero_form, zero=rhos + ("a2",), defaults=lambda F, q: {"s": 1, "b2": q.get("a1", 0)})
    row("B9", "jordan", "[e, f1] = 0, [e, f2] = b1 f1",
        [_nz("b1"), ("s != 1", lambda F, p: p["s"] != 1), _eq("t1 = 0", lambda F, p: (p["t1"], 0))],
        zero_form, zero=rhos + ("a1", "a2", "b2"), defaults=lambda F, q: {})
    row("B10", "jordan", "[e, f1] = a1 f1, [e, f2] = a1 f2",
        [_nz("a1"), _eq("b2 = a1", lambda F, p: (p["b2"], p["a1"])), _eq("s = 1", lambda F, p: (p["s"], 1)),
         _nz("t1")],
        zero_form, zero=rhos + ("a2", "b1"), defaults=lambda F, q: {"s": 1, "b2": q.get("a1", 0)})
    return fams


FAMILIES = _mk_families()
TABLE_ROWS = tuple(f"A{i}" for i in range(1, 11)) + tuple(f"B{i}" for i in range(1, 11))


def family(name: str) -> FamilyDescriptor:
    try:
        return FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; known: {sorted(FAMILIES)}") from None


def build(name: str, params: dict | None = None, F: FieldSpec = GF2, verify: bool = True) -> HomLieSuper2:
    """Instantiate a family; raises AdmissibilityError or CatalogDefectError."""
    fam = family(name)
    params = dict(params or {})
    for k, v in params.items():
        if not 0 <= int(v) < F.q:
            raise AdmissibilityError(f"{name}: parameter {k}={v} is not an element of {F}")
    p = fam.complete(F, params)
    bad = fam.violations(F, p)
    if bad:
        raise AdmissibilityError(f"{name}: violated conditions: {'; '.join(bad)}")
    g = fam.build(F, p)
    if verify:
        report = check_axioms(g)
        if not report.ok:
            raise CatalogDefectError(name, p, report)
    return g


def admissible_parameters(name: str, F: FieldSpec) -> Iterable[dict]:
    """Every full parameter assignment over F satisfying the family's conditions."""
    fam = family(name)
    free = [k for k in fam.params if k not in fam.fixed_zero]
    for values in product(range(F.q), repeat=len(free)):
        p = dict(zip(free, values))
        for k in fam.fixed_zero:
            p[k] = 0
        if not fam.violations(F, p):
            yield p


# matching


@dataclass
class FamilyMatch:
    name: str
    params: dict

    def to_json(self) -> dict:
        return {"family": self.name, "params": self.params}


def match_to_family(g: HomLieSuper2, rs2_reading: str | None = None) -> list[FamilyMatch]:
    """All family rows whose conditions hold for g in its given basis."""
    F = g.field
    sd = g.basis.sdim
    if sd == (1, 1):
        (e,), (f,) = g.basis.even_indices, g.basis.odd_indices
        lam1, lam = g.alpha[e, e], g.alpha[f, f]
        rho = g.square_basis(f)[e]
        gamma = g.bracket_basis(e, f)[f]
        fam = FAMILIES["dim11"]
        p = {"lam": lam, "rho": rho}
        if (
            lam1 == 1
            and g.alpha[e, f] == 0
            and g.alpha[f, e] == 0
            and gamma == F.mul(rho, lam)
            and not fam.violations(F, p)
        ):
            return [FamilyMatch("dim11", p)]
        return []
    if sd != (1, 2):
        raise UnsupportedError(f"no family table for superdimension {sd}")
    shape, p = params_12(g)
    if shape is None:
        return []
    global RS2_READING
    saved = RS2_READING
    if rs2_reading is not None:
        RS2_READING = rs2_reading
    try:
        out = []
        for name in TABLE_ROWS:
            fam = FAMILIES[name]
            if fam.shape != shape:
                continue
            q = {k: p.get(k, 0) for k in fam.params}
            if not fam.violations(F, q):
                out.append(FamilyMatch(name, q))
        return out
    finally:
        RS2_READING = saved


# enumeration


def _coordinate_layout(basis: SuperBasis, shape: str) -> list[tuple]:
    """Free coefficients of a structure on ``basis``, as (kind, ...) records."""
    n = basis.dim
    par = basis.parities
    coords: list[tuple] = []
    for i in range(n):
        for j in range(i + 1, n):
            want = par[i] ^ par[j]
            for k in range(n):
                if par[k] == want:
                    coords.append(("br", i, j, k))
    for i in basis.odd_indices:
        for k in basis.even_indices:
            coords.append(("sq", i, k))
    for block in (basis.even_indices, basis.odd_indices):
        if shape == "all":
            for r in block:
                for c in block:
                    coords.append(("al", r, c))
        elif shape == "diagonal":
            for r in block:
                coords.append(("al", r, r))
        elif shape == "jordan":
            if block:
                coords.append(("jordan", tuple(block)))
        else:
            raise ValueError(f"unknown twist shape {shape!r}")
    return coords


def _assemble(F: FieldSpec, basis: SuperBasis, coords: list[tuple], values: tuple[int, ...]) -> HomLieSuper2:
    n = basis.dim
    br: dict[tuple[int, int], list[int]] = {}
    sq: dict[int, list[int]] = {}
    A = [[0] * n for _ in range(n)]
    for rec, v in zip(coords, values):
        kind = rec[0]
        if kind == "br":
            if v:
                br.setdefault((rec[1], rec[2]), [0] * n)[rec[3]] = v
        elif kind == "sq":
            if v:
                sq.setdefault(rec[1], [0] * n)[rec[2]] = v
        elif kind == "al":
            A[rec[1]][rec[2]] = v
        else:
            block = rec[1]
            for a, r in enumerate(block):
                A[r][r] = v
                if a + 1 < len(block):
                    A[r][block[a + 1]] = 1
    return HomLieSuper2(F, basis, br, sq, Matrix(F, A, n))


def permute_basis(g: HomLieSuper2, perm: tuple[int, ...]) -> HomLieSuper2:
    """Relabel so that new basis vector a is old vector perm[a]."""
    n = g.dim
    inv = [0] * n
    for a, old in enumerate(perm):
        inv[old] = a

    def mv(v):
        out = [0] * n
        for i, c in enumerate(v):
            out[inv[i]] = c
        return out

    basis = SuperBasis(tuple(g.basis.labels[i] for i in perm), tuple(g.basis.parities[i] for i in perm))
    br = {(inv[i], inv[j]): mv(v) for i, j, v in g.bracket_items()}
    sq = {inv[i]: mv(v) for i, v in g.square_items()}
    A = Matrix(g.field, [[g.alpha[perm[r], perm[c]] for c in range(n)] for r in range(n)], n)
    return HomLieSuper2(g.field, basis, br, sq, A)


def _canonical_key(g: HomLieSuper2):
    ev, od = g.basis.even_indices, g.basis.odd_indices
    keys = []
    for pe in permutations(ev):
        for po in permutations(od):
            h = permute_basis(g, pe + po)
            keys.append((tuple(h.bracket_items()), tuple(h.square_items()), h.alpha.rows))
    return min(keys)


def _enumerate_chunk(args) -> list[tuple[int, ...]]:
    m, n, k, modulus, shape, prefix = args
    F = make_field(k, modulus)
    basis = SuperBasis.standard(m, n)
    coords = _coordinate_layout(basis, shape)
    rest = len(coords) - len(prefix)
    out = []
    for tail in product(range(F.q), repeat=rest):
        values = prefix + tail
        if check_axioms(_assemble(F, basis, coords, values)).ok:
            out.append(values)
    return out


def max_workers() -> int:
    try:
        return max(1, int(os.environ.get("HOMLIE2_THREADS", "1")))
    except ValueError:
        return 1


def enumerate_structures(
    sdim: tuple[int, int], F: FieldSpec, alpha_shape: str = "all", dedupe: bool = False
) -> list[HomLieSuper2]:
    """Every structure of the given shape over F that passes check_axioms, in lexicographic coefficient order."""
    m, n = sdim
    if m + n > 3 or F.q > 4:
        raise TooLargeError("enumeration is limited to m + n <= 3 over fields with at most 4 elements")
    basis = SuperBasis.standard(m, n)
    coords = _coordinate_layout(basis, alpha_shape)
    total = F.q ** len(coords)
    if total > ENUMERATION_LIMIT:
        raise TooLargeError(f"{total} configurations exceed the limit {ENUMERATION_LIMIT}")
    split = min(len(coords), 2)
    prefixes = list(product(range(F.q), repeat=split))
    jobs = [(m, n, F.k, F.modulus, alpha_shape, pre) for pre in prefixes]
    workers = max_workers()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_enumerate_chunk, jobs))
    else:
        chunks = [_enumerate_chunk(j) for j in jobs]
    out = [_assemble(F, basis, coords, v) for chunk in chunks for v in chunk]
    if dedupe:
        seen = set()
        uniq = []
        for g in out:
            key = _canonical_key(g)
            if key not in seen:
                seen.add(key)
                uniq.append(g)
        out = uniq
    return out


def to_table_basis(g: HomLieSuper2) -> HomLieSuper2:
    """Rename a standard (1|1) or (1|2) basis to e, f or e, f1, f2."""
    if g.basis.sdim == (1, 1):
        names = BASIS_11
    elif g.basis.sdim == (1, 2):
        names = BASIS_12
    else:
        return g
    order = g.basis.even_indices + g.basis.odd_indices
    h = permute_basis(g, order)
    return HomLieSuper2(g.field, names, {(i, j): v for i, j, v in h.bracket_items()}, dict(h.square_items()), h.alpha)


def change_basis(g: HomLieSuper2, P: Matrix) -> HomLieSuper2:
    """The same algebra written in the basis given by the columns of P."""
    F = g.field
    Pinv = P.inverse()
    cols = [P.column(j) for j in range(g.dim)]
    br = {}
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            v = Pinv.apply(g.bracket(cols[i], cols[j]))
            if any(v):
                br[(i, j)] = v
    sq = {}
    for i in g.basis.odd_indices:
        v = Pinv.apply(g.square(cols[i]))
        if any(v):
            sq[i] = v
    return HomLieSuper2(F, g.basis, br, sq, Pinv @ g.alpha @ P)


def _even_basis_changes(F: FieldSpec, sdim: tuple[int, int]):
    """Block-diagonal invertible matrices for a table basis (even vectors first)."""
    m, n = sdim
    blocks = []
    for k in (m, n):
        mats = []
        for entries in product(range(F.q), repeat=k * k):
            M = Matrix(F, [list(entries[r * k:(r + 1) * k]) for r in range(k)], k)
            if M.is_invertible():
                mats.append(M)
        blocks.append(mats)
    for A, B in product(*blocks):
        rows = [list(r) + [0] * n for r in A.rows] + [[0] * m + list(r) for r in B.rows]
        yield Matrix(F, rows, m + n)


def match_up_to_isomorphism(g: HomLieSuper2, rs2_reading: str | None = None) -> tuple[list[FamilyMatch], Matrix | None]:
    """Family matches of g in its own table basis, else after the first parity-preserving change of basis that yields one."""
    h = to_table_basis(g)
    direct = match_to_family(h, rs2_reading)
    if direct:
        return direct, None
    for P in _even_basis_changes(h.field, h.basis.sdim):
        found = match_to_family(change_basis(h, P), rs2_reading)
        if found:
            return found, P
    return [], None


@dataclass
class ClassificationReport:
    sdim: tuple[int, int]
    field: FieldSpec
    shape: str
    survivors: int = 0
    trivial: int = 0
    matched: dict = dc_field(default_factory=dict)
    after_basis_change: int = 0
    unmatched: list = dc_field(default_factory=list)
    squaring_free_unmatched: int = 0

    def to_json(self) -> dict:
        return {
            "sdim": list(self.sdim),
            "field": self.field.to_json(),
            "alpha": self.shape,
            "survivors": self.survivors,
            "trivial": self.trivial,
            "matched": self.matched,
            "matched_after_basis_change": self.after_basis_change,
            "unmatched_count": len(self.unmatched),
            "unmatched_with_zero_squaring": self.squaring_free_unmatched,
            "unmatched": [g.to_json() for g in self.unmatched],
        }


def classify(sdim: tuple[int, int], F: FieldSpec, alpha_shape: str = "all", rs2_reading: str | None = None) -> ClassificationReport:
    """Enumerate and match every survivor against the family tables, up to parity-preserving change of basis.

    Survivors with zero bracket and zero squaring are counted as trivial.
    """
    rep = ClassificationReport(sdim, F, alpha_shape)
    for g in enumerate_structures(sdim, F, alpha_shape):
        rep.survivors += 1
        if not any(True for _ in g.bracket_items()) and not g.square_items():
            rep.trivial += 1
            continue
        try:
            matches, P = match_up_to_isomorphism(g, rs2_reading)
        except UnsupportedError:
            matches, P = [], None
        if matches:
            rep.after_basis_change += P is not None
            for mt in matches:
                rep.matched[mt.name] = rep.matched.get(mt.name, 0) + 1
        else:
            h = to_table_basis(g)
            rep.unmatched.append(h)
            rep.squaring_free_unmatched += not h.square_items()
    return rep


@dataclass
class SweepResult:
    name: str
    admissible: int
    failing: int
    first_failure: dict | None

    def to_json(self) -> dict:
        return {"family": self.name, "admissible": self.admissible, "failing": self.failing, "first_failure": self.first_failure}


def sweep_family(name: str, F: FieldSpec, rs2_reading: str | None = None) -> SweepResult:
    """Build every admissible instance over F without verification and count axiom failures."""
    global RS2_READING
    saved = RS2_READING
    if rs2_reading is not None:
        RS2_READING = rs2_reading
    try:
        n = bad = 0
        first = None
        for p in admissible_parameters(name, F):
            n += 1
            report = check_axioms(build(name, p, F, verify=False))
            if not report.ok:
                bad += 1
                if first is None:
                    first = {"params": p, "failures": report.failures()}
        return SweepResult(name, n, bad, first)
    finally:
        RS2_READING = saved
