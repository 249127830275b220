import io
import json
import random

import pytest

from homlie2.algebra import HomLieSuper2
from homlie2.catalog import oo, oo_alpha
from homlie2.cli import run
from homlie2.cohomology import EVEN, cohomology
from homlie2.deform import TruncatedDeformation, random_equivariant_tau, transport, extend_order
from homlie2.gf2k import GF2, GF16
from homlie2.restricted import restricted_examples


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], stdout=out)
    return code, out.getvalue()


def report(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


@pytest.fixture
def write(tmp_path):
    def _write(name, data):
        p = tmp_path / name
        p.write_text(json.dumps(data))
        return p

    return _write


def test_verify_catalog_algebra(write):
    code, rep = report("verify", write("oo.hls2.json", oo(GF2).to_json()))
    assert code == 0 and rep["ok"] and rep["command"] == "verify"
    assert len(rep["inputs"]) == 1


def test_verify_mutated_algebra_reports_witness(write):
    g = oo(GF2)
    x1 = g.basis.index("x1")
    squares = dict(g.square_items())
    squares[x1] = tuple(a ^ b for a, b in zip(squares.get(x1, (0,) * g.dim), g.vec({"h": 1})))
    bad = g.replace(squares=squares)
    code, rep = report("verify", write("mutated.hls2.json", bad.to_json()))
    assert code == 1 and not rep["ok"]
    verdict = rep["axioms"]["axioms"]["squaring_jacobi"]
    assert not verdict["ok"] and verdict["witness"]


def test_emit_then_verify_round_trip(tmp_path):
    out = tmp_path / "e.json"
    code, _ = call("catalog", "emit", "oo_alpha", "--param", "eps=3", "--field", "gf16", "--output", out)
    assert code == 0
    code, rep = report("verify", out)
    assert code == 0
    emitted = json.loads(out.read_text())["algebra"]
    assert HomLieSuper2.from_json(emitted) == oo_alpha(GF16, 3)


def test_catalog_list():
    code, rep = report("catalog", "list")
    assert code == 0 and any(f["name"] == "oo_alpha" for f in rep["families"])


def test_cohomology_command(write):
    code, rep = report("cohomology", write("a.hls2.json", oo_alpha(GF16, 3).to_json()), "--n", 2, "--coefficients", "adjoint")
    assert code == 0
    assert rep["cohomology"]["dim_H"] == 6


def test_cohomology_command_computed_value(write):
    p = write("a.hls2.json", oo_alpha(GF16, 3).to_json())
    code, rep = report("cohomology", p, "--n", 2, "--basis")
    assert code == 0 and rep["cohomology"]["dim_H"] == 2
    assert len(rep["cohomology"]["cocycle_basis"]) == 2
    code, rep = report("cohomology", p, "--n", 2, "--coefficients", "trivial")
    assert rep["cohomology"]["dim_H"] == 0


def test_derivations_command(write):
    code, rep = report("derivations", write("a.json", oo_alpha(GF16, 3).to_json()), "--k", 0, "--parity", "e")
    assert code == 0 and rep["derivations"]["even_dim"] == 2


def test_queerify_and_twist(write):
    r = restricted_examples(GF2)["two_dim"]
    code, rep = report("queerify", write("r.rhl2.json", r.to_json()))
    assert code == 0 and rep["axioms"]["ok"]
    g = oo(GF2)
    from homlie2.catalog import oo_morphism

    code, rep = report("twist", write("g.json", g.to_json()), "--alpha", write("m.json", oo_morphism(GF2, 1, 1, 1, 0).to_json()))
    assert code == 0 and rep["axioms"]["ok"]


def test_deform_command(write):
    g = oo_alpha(GF16, 3)
    rep0 = cohomology(g, None, 2).representatives[EVEN][0]
    d = TruncatedDeformation(g, [rep0])
    code, rep = report("deform", write("g.json", g.to_json()), "--cocycle", write("c.json", d.to_json()), "--order", 3)
    assert code == 0 and rep["deformation"]["order"] == 3


def test_equivalent_command(write):
    g = oo_alpha(GF16, 3)
    rng = random.Random(0)
    d = TruncatedDeformation(g, [cohomology(g, None, 2).representatives[EVEN][0]])
    d = extend_order(d).extended
    tau = random_equivariant_tau(g, 2, rng)
    d2 = transport(d, tau)
    code, rep = report("equivalent", write("d1.json", d.to_json()), write("d2.json", d2.to_json()), "--tau", write("t.json", tau.to_json()))
    assert code == 0 and rep["equivalence"]["ok"]


def test_complex_check_and_classify(write):
    code, rep = report("complex-check", write("g.json", oo(GF2).to_json()), "--nmax", 2, "--trials", 2)
    assert code == 0
    code, rep = report("classify", "--sdim", "0,1", "--field", "gf2")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        [],
        ["verify"],
        ["verify", "/nonexistent/file.json"],
        ["catalog", "emit"],
        ["catalog", "emit", "no_such_family"],
        ["classify", "--sdim", "x,y"],
        ["derivations", "/nonexistent.json", "--k", "zero"],
    ],
)
def test_usage_errors_exit_two(argv):
    code, text = call(*argv)
    assert code == 2
    assert json.loads(text)["ok"] is False


def test_malformed_json_exits_two(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert call("verify", p)[0] == 2


def test_determinism(write):
    p = write("g.json", oo_alpha(GF16, 5).to_json())
    for argv in (["cohomology", p, "--n", 2, "--basis"], ["complex-check", p, "--nmax", 2, "--trials", 3, "--seed", 4]):
        assert call(*argv)[1] == call(*argv)[1]


def test_timing_flag(write):
    p = write("g.json", oo(GF2).to_json())
    code, rep = report("verify", p, "--timing")
    assert "elapsed_s" in rep
    code, rep = report("verify", p)
    assert "elapsed_s" not in rep
