"""Command-line front end: every subcommand prints one JSON report.

Exit codes: 0 pass, 1 mathematical failure (witness in the report), 2 usage or format error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .algebra import HomLieSuper2, InvalidMorphismError, check_axioms, check_morphism, twist_by_morphism
from .catalog import FAMILIES, AdmissibilityError, CatalogDefectError, TooLargeError, UnsupportedError, build, classify
from .cohomology import CochainPair, NotACochainError, coefficients, cohomology, complex_for, verify_complex
from .deform import (
    EquivalenceMap,
    OrderMismatchError,
    TruncatedDeformation,
    check_deformation,
    check_equivalence,
    extend_order,
    first_order_is_cocycle,
)
from .derivations import derivation_space
from .gf2k import parse_field
from .linalg import Matrix
from .reps import Representation, adjoint_rep
from .restricted import InvalidTwoStructureError, RestrictedHomLie2, queerify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str, digests: dict) -> dict:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    digests[path] = hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _unwrap(data: dict, key: str) -> dict:
    """Accept either a bare object or a report carrying it under ``key``."""
    if isinstance(data, dict) and key in data and "field" not in data:
        return data[key]
    return data


def _algebra(path: str, digests: dict) -> HomLieSuper2:
    data = _unwrap(_read(path, digests), "algebra")
    try:
        return HomLieSuper2.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: not an algebra file ({exc})") from None


def _parse_params(items: list[str]) -> dict:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects k=v, got {item!r}")
        try:
            out[key.strip()] = int(value, 0)
        except ValueError:
            raise UsageError(f"--param {key}: {value!r} is not an integer") from None
    return out


def _sdim(text: str) -> tuple[int, int]:
    try:
        m, n = (int(a) for a in text.split(","))
    except ValueError:
        raise UsageError(f"--sdim expects m,n, got {text!r}") from None
    return m, n


# subcommands; each returns (ok, result dict)


def cmd_verify(args, digests):
    g = _algebra(args.file, digests)
    report = check_axioms(g, require_multiplicative=not args.weak)
    return report.ok, {"axioms": report.to_json()}


def cmd_twist(args, digests):
    g = _algebra(args.file, digests)
    try:
        alpha = Matrix.from_json(g.field, _read(args.alpha, digests))
    except (KeyError, ValueError) as exc:
        raise UsageError(f"{args.alpha}: not a matrix file ({exc})") from None
    verdict = check_morphism(g, g, alpha)
    if not verdict:
        return False, {"morphism": verdict.to_json()}
    h = twist_by_morphism(g, alpha)
    report = check_axioms(h)
    return report.ok, {"algebra": h.to_json(), "axioms": report.to_json()}


def cmd_derivations(args, digests):
    g = _algebra(args.file, digests)
    parity = {"e": "even", "o": "odd", None: "both"}[args.parity]
    sp = derivation_space(g, args.k, parity)
    return True, {"derivations": sp.to_json(with_basis=args.basis)}


def _coefficients(g: HomLieSuper2, spec: str, digests: dict):
    if spec in ("trivial", "adjoint"):
        return coefficients(g, spec)
    data = _read(spec, digests)
    try:
        return Representation.from_json(data, algebra=g)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{spec}: not a representation file ({exc})") from None


def cmd_cohomology(args, digests):
    g = _algebra(args.file, digests)
    r = _coefficients(g, args.coefficients, digests)
    res = cohomology(g, r, args.n)
    return True, {"cohomology": res.to_json(with_basis=args.basis)}


def cmd_queerify(args, digests):
    data = _read(args.file, digests)
    try:
        r = RestrictedHomLie2.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.file}: not a restricted algebra file ({exc})") from None
    try:
        q = queerify(r)
    except InvalidTwoStructureError as exc:
        return False, {"two_structure": exc.report.to_json()}
    report = check_axioms(q)
    return report.ok, {"algebra": q.to_json(), "axioms": report.to_json()}


def _deformation(path: str, g: HomLieSuper2 | None, digests: dict) -> TruncatedDeformation:
    data = _unwrap(_read(path, digests), "deformation")
    try:
        if "terms" in data:
            return TruncatedDeformation.from_json(data, algebra=g)
        cx = complex_for(g, adjoint_rep(g))
        return TruncatedDeformation(g, [CochainPair.from_json(cx, {"degree": 2, **data})])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: not a deformation or cochain file ({exc})") from None


def cmd_deform(args, digests):
    g = _algebra(args.algebra, digests)
    d = _deformation(args.cocycle, g, digests)
    if d.order < 1:
        raise UsageError("the cocycle file has no first-order term")
    if args.order < d.order:
        d = d.truncated(args.order)
    report = check_deformation(d)
    out = {"orders": report.to_json()["orders"]}
    if not report.ok:
        out["first_order_cocycle"] = first_order_is_cocycle(d).to_json()
        return False, out
    steps = []
    while d.order < args.order:
        res = extend_order(d)
        steps.append(res.to_json())
        if not res.ok or not res.verified:
            out["extension"] = steps
            out["deformation"] = d.to_json()
            return False, out
        d = res.extended
    out["extension"] = steps
    out["deformation"] = d.to_json()
    return True, out


def cmd_equivalent(args, digests):
    d1 = _deformation(args.d1, None, digests)
    d2 = _deformation(args.d2, d1.algebra, digests)
    data = _read(args.tau, digests)
    try:
        tau = EquivalenceMap.from_json(d1.algebra.field, data)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"{args.tau}: not a tau file ({exc})") from None
    try:
        v = check_equivalence(d1, d2, tau, squaring_rule=args.squaring_rule)
    except OrderMismatchError as exc:
        raise UsageError(str(exc)) from None
    return v.ok, {"equivalence": v.to_json()}


def cmd_classify(args, digests):
    F = parse_field(args.field)
    try:
        rep = classify(_sdim(args.sdim), F, args.alpha)
    except (UnsupportedError, TooLargeError) as exc:
        raise UsageError(str(exc)) from None
    return True, {"classification": rep.to_json()}


def cmd_catalog(args, digests):
    if args.action == "list":
        return True, {
            "families": [
                {"name": f.name, "params": list(f.params), "sdim": list(f.sdim), "description": f.description}
                for f in FAMILIES.values()
            ]
        }
    if not args.name:
        raise UsageError("catalog emit needs a family name")
    F = parse_field(args.field)
    try:
        g = build(args.name, _parse_params(args.param), F)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    except AdmissibilityError as exc:
        raise UsageError(str(exc)) from None
    except CatalogDefectError as exc:
        return False, {"defect": {"family": exc.name, "params": exc.params, "axioms": exc.report.to_json()}}
    return True, {"algebra": g.to_json()}


def cmd_complex_check(args, digests):
    g = _algebra(args.file, digests)
    r = _coefficients(g, args.coefficients, digests)
    rep = verify_complex(g, r, args.nmax, trials=args.trials, seed=args.seed)
    return rep.ok, {"complex": rep.to_json()}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="include elapsed seconds (breaks byte-identical output)")
    common.add_argument("--output", default=argparse.SUPPRESS, help="write the report here instead of stdout")
    p = _Parser(prog="homlie2", description="Hom-Lie superalgebras in characteristic 2", parents=[common])
    p.set_defaults(timing=False, output=None)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("verify", help="check the axioms")
    s.add_argument("file")
    s.add_argument("--weak", action="store_true", help="skip multiplicativity of the twist")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("twist", help="twist by a morphism")
    s.add_argument("file")
    s.add_argument("--alpha", required=True)
    s.set_defaults(run=cmd_twist)

    s = sub.add_parser("derivations", help="alpha^k-derivations")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--parity", choices=("e", "o"))
    s.add_argument("--basis", action="store_true")
    s.set_defaults(run=cmd_derivations)

    s = sub.add_parser("cohomology", help="cohomology dimensions")
    s.add_argument("file")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--coefficients", default="adjoint", help="trivial, adjoint or a representation file")
    s.add_argument("--basis", action="store_true")
    s.set_defaults(run=cmd_cohomology)

    s = sub.add_parser("queerify", help="queer superalgebra of a restricted algebra")
    s.add_argument("file")
    s.set_defaults(run=cmd_queerify)

    s = sub.add_parser("deform", help="extend a first-order deformation")
    s.add_argument("algebra")
    s.add_argument("--cocycle", required=True)
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(run=cmd_deform)

    s = sub.add_parser("equivalent", help="check an equivalence of deformations")
    s.add_argument("d1")
    s.add_argument("d2")
    s.add_argument("--tau", required=True)
    s.add_argument("--squaring-rule", choices=("printed", "complete"), default="printed")
    s.set_defaults(run=cmd_equivalent)

    s = sub.add_parser("classify", help="enumerate and match small structures")
    s.add_argument("--sdim", required=True)
    s.add_argument("--field", default="gf2")
    s.add_argument("--alpha", choices=("diagonal", "jordan", "all"), default="all")
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("catalog", help="list or emit catalog algebras")
    s.add_argument("action", choices=("list", "emit"))
    s.add_argument("name", nargs="?")
    s.add_argument("--param", action="append", default=[])
    s.add_argument("--field", default="gf2")
    s.set_defaults(run=cmd_catalog)

    s = sub.add_parser("complex-check", help="d o d = 0 and related identities")
    s.add_argument("file")
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--trials", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--coefficients", default="adjoint")
    s.set_defaults(run=cmd_complex_check)
    return p


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    digests: dict[str, str] = {}
    t0 = time.perf_counter()
    args = None
    command = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        ok, result = args.run(args, digests)
        code = EXIT_OK if ok else EXIT_FAIL
        report = {"command": command, "inputs": digests, "ok": ok, **result}
    except (UsageError, NotACochainError, InvalidMorphismError, ValueError) as exc:
        code = EXIT_USAGE
        report = {"command": command, "inputs": digests, "ok": False, "error": str(exc)}
    if args is not None and args.timing:
        report["elapsed_s"] = round(time.perf_counter() - t0, 6)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args is not None and args.output:
        Path(args.output).write_text(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
