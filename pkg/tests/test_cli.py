import io
import json
import random
import subprocess
import sys
from fractions import Fraction as F

from spectra.cli import dumps, run
from spectra.mc_matrix import HTLTuple, middle_convolution
from spectra.notation import normalize, parse_spectral_type
from spectra.rational import fmt
from spectra.sampling import random_mc_instance
from spectra.spectral_calc import quiver_of, shape_of
from spectra.weyl_engine import Mode, reduce_to_fundamental, sigma_membership


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def generic_lambda(text, seed=0):
    st = normalize(parse_spectral_type(text))
    q, alpha = quiver_of(st)
    rng = random.Random(seed)
    lam = [F(rng.randint(1, 999), rng.choice((7, 11, 13))) * rng.choice((-1, 1)) for _ in alpha]
    k = next(i for i, x in enumerate(alpha) if x)
    lam[k] -= sum(x * y for x, y in zip(lam, alpha)) / alpha[k]
    return st, tuple(lam), alpha


# ------------------------------------------------------------------ examples

def test_rigidity_examples():
    assert call("rigidity", "11,11,11") == (0, "2\n", "")
    assert call("rigidity", "(1)(1),(1)(1)") == (0, "0\n", "")


def test_parse_unbalanced():
    code, out, err = call("parse", "((1)(1)")
    assert code == 2 and out == ""
    assert "unbalanced parenthesis" in err
    assert err.count("\n") == 1


def test_parse_canonical_summary():
    code, out, _ = call("parse", "(11)(1),(1)(11)")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "(11)(1),(11)(1)"
    assert lines[1].startswith("point 0: pole order 2, 2 block(s)")


def test_usage_errors_exit_2():
    assert call("rigidity", "11,1x")[0] == 2
    assert call("rigidity", "11,111")[0] == 2  # rank mismatch
    assert call("enumerate", "--idx", "-1")[0] == 2
    assert call("nonsense")[0] == 2


# ------------------------------------------------------------------ byte identity with the library

def test_quiver_and_shape_match_library():
    text = "(((1)(1))((1)))(((1))),(111)(1),1111"
    st = normalize(parse_spectral_type(text))
    q, a = quiver_of(st)
    code, out, _ = call("quiver", text)
    assert code == 0
    assert out == dumps({"quiver": q.to_json(), "alpha": list(a), "vertex_tags": [str(v) for v in q.vertices]}) + "\n"
    doc = json.loads(out)
    assert len(doc["vertex_tags"]) == 11
    code, out, _ = call("shape", "(1)(1),(1)(1)")
    assert code == 0 and out == dumps(shape_of("(1)(1),(1)(1)").to_json()) + "\n"


def test_check_ds_matches_library(tmp_path):
    st, lam, alpha = generic_lambda("11,11,11,11")
    f = write_json(tmp_path / "lam.json", {"lambda": [fmt(x) for x in lam]})
    for mode, m in (("dif", Mode.DIF), ("plain", Mode.PLAIN)):
        code, out, _ = call("check-ds", "--st", "11,11,11,11", "--lambda", f, "--mode", mode)
        assert code == 0
        assert out == dumps(sigma_membership(st, lam, alpha, m).to_json()) + "\n"
        assert json.loads(out)["member"] is True


def test_check_ds_rejects_2delta(tmp_path):
    st = normalize(parse_spectral_type("11,11,11,11"))
    q, alpha = quiver_of(st)
    f = write_json(tmp_path / "lam.json", {"lambda": ["0"] * q.n, "alpha": [2 * x for x in alpha]})
    code, out, _ = call("check-ds", "--st", "11,11,11,11", "--lambda", f)
    doc = json.loads(out)
    assert code == 0 and doc["member"] is False and doc["failed_clause"] == 3


def test_check_ds_lambda_by_vertex_tag(tmp_path):
    f = write_json(tmp_path / "lam.json", {"lambda": {"[0,1]": "1/2", "[1,1,1]": "-1/2"}})
    code, out, _ = call("check-ds", "--st", "11,11", "--lambda", f)
    assert code == 0
    bad = write_json(tmp_path / "bad.json", {"lambda": {"[9,9]": "1"}})
    code, _, err = call("check-ds", "--st", "11,11", "--lambda", bad)
    assert code == 2 and "unknown vertex" in err


def test_reduce_matches_library_and_stuck(tmp_path):
    st, lam, alpha = generic_lambda("11,11,11", seed=3)
    f = write_json(tmp_path / "lam.json", {"lambda": [fmt(x) for x in lam]})
    code, out, _ = call("reduce", "--st", "11,11,11", "--lambda", f)
    assert code == 0
    assert out == dumps(reduce_to_fundamental(st, lam, alpha).to_json()) + "\n"
    zero = write_json(tmp_path / "zero.json", {"lambda": ["0"] * len(alpha)})
    code, out, err = call("reduce", "--st", "11,11,11", "--lambda", zero)
    assert code == 1 and out == "" and "stuck" in err


def test_bad_json_is_usage_error(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{")
    assert call("reduce", "--st", "11,11,11", "--lambda", str(p))[0] == 2
    assert call("reduce", "--st", "11,11,11", "--lambda", str(tmp_path / "missing.json"))[0] == 2


# ------------------------------------------------------------------ mc

def _instance_file(tmp_path, seed=5):
    inst = random_mc_instance(random.Random(seed), max_rank=3)
    doc = inst.tuple.to_json()
    doc["symbol"] = inst.data.to_json()
    return inst, write_json(tmp_path / "tuple.json", doc), ",".join(map(str, inst.choice))


def test_mc_apply_matches_library(tmp_path):
    inst, f, choice = _instance_file(tmp_path)
    code, out, _ = call("mc", "apply", "--tuple", f, "--choice", choice)
    assert code == 0
    expect = middle_convolution(inst.tuple, inst.choice, inst.data)
    assert out == dumps(expect.to_json()) + "\n"
    assert HTLTuple.from_json(json.loads(out)) == expect


def test_mc_apply_without_symbol_uses_xi(tmp_path):
    M = [[["1/2"]], [["-1/3"]], [["-1/6"]]]
    f = write_json(tmp_path / "t.json", {"rank": 1, "points": [{"pole_order": 1, "coeffs": [m]} for m in M]})
    code, out, _ = call("mc", "apply", "--tuple", f, "--choice", "1,1,1")
    # single eigenvalues are taken as the heads: xi = 0 -> exit 1
    assert code == 1
    code, _, err = call("mc", "apply", "--tuple", f, "--choice", "1,1,1", "--xi", "1/2,1/5,1/7")
    assert code == 2 and "not an eigenvalue" in err


def test_mc_verify_tuple_and_samples(tmp_path):
    _, f, choice = _instance_file(tmp_path)
    code, out, _ = call("mc", "verify", "--tuple", f, "--choice", choice)
    doc = json.loads(out)
    assert code == 0 and doc["ok"]
    r = doc["instances"][0]
    assert r["involution"] and r["qp_is_minus_xi"] and r["irreducible_out"] and r["prediction_problems"] == []
    code, out, _ = call("mc", "verify", "--samples", "2")
    assert code == 0 and len(json.loads(out)["instances"]) == 2


def test_mc_bad_choice(tmp_path):
    _, f, _ = _instance_file(tmp_path)
    assert call("mc", "apply", "--tuple", f, "--choice", "1")[0] == 2
    assert call("mc", "apply", "--tuple", f, "--choice", "a,b")[0] == 2


def test_out_file(tmp_path):
    target = tmp_path / "shape.json"
    code, out, _ = call("shape", "11,11,11,11", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == dumps(shape_of("11,11,11,11").to_json()) + "\n"


# ------------------------------------------------------------------ enumerate

def test_enumerate_small_bounds_with_fixture(tmp_path):
    b = write_json(tmp_path / "b.json", {"max_points": 4, "max_pole": 5, "max_rank": 2, "max_blocks": 5,
                                         "max_chain": 8})
    code, out, err = call("enumerate", "--idx", "0", "--bounds", b, "--fixture")
    doc = json.loads(out)
    assert code == 1 and not doc["fixture_diff"]["ok"]
    assert "missing from enumeration" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "spectra", "rigidity", "11,11,11"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "2\n"
