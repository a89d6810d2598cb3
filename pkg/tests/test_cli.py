import json
import subprocess
import sys

import numpy as np
import pytest

from rulekit.cli import main
from rulekit.formats import format_rsd, read_obj_vertices
from rulekit.zoo import builtin

SMALL = ["--nu", "5", "--nv", "5"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def helicoid_file(tmp_path):
    path = tmp_path / "helicoid.rsd"
    path.write_text(format_rsd(builtin("helicoid")))
    return str(path)


def test_verify_helicoid_file(capsys, helicoid_file):
    code, out, _ = run(capsys, "verify", "--surface", helicoid_file, "--alpha", "0", "--tol", "1e-5", *SMALL)
    assert code == 0
    assert "FAIL" not in out and "Pick invariant J" in out


def test_verify_includes_affine_rows(capsys):
    code, out, _ = run(capsys, "verify", "--surface", "builtin:edlinger", *SMALL)
    assert code == 0 and "affine image invariants" in out


def test_verify_failure_exit(capsys):
    # a tolerance below the finite-difference noise floor cannot pass
    code, out, _ = run(capsys, "verify", "--surface", "builtin:generic", "--alpha", "0.3",
                       "--tol", "1e-300", *SMALL)
    assert code == 1 and "FAIL" in out


def test_eval_report(capsys):
    code, out, _ = run(capsys, "eval", "--surface", "builtin:conoid", "--alpha", "0.25",
                       "--nu", "3", "--nv", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["surface"] == "conoid" and doc["alpha"] == 0.25
    assert doc["grid"] == {"u0": 0.0, "u1": 6.283185307179586, "nu": 3, "v0": -2.0, "v1": 2.0, "nv": 4}
    assert len(doc["samples"]) == 12
    assert [s["u"] for s in doc["samples"][:4]] == [0.0] * 4
    assert all(s["T"] == [0.0, 0.0, 0.0] for s in doc["samples"])
    assert doc["meta"]["tol"] == 1e-5


def test_eval_numbers_round_trip(capsys):
    _, out, _ = run(capsys, "eval", "--surface", "builtin:generic", "--nu", "2", "--nv", "2")
    s = json.loads(out)["samples"][3]
    from rulekit.tensors import fundamental_forms
    assert s["K"] == fundamental_forms(builtin("generic"), s["u"], s["v"]).K


def test_classify_report(capsys):
    code, out, _ = run(capsys, "classify", "--surface", "builtin:helicoid", "--nu", "9", "--nv", "5")
    doc = json.loads(out)
    assert code == 0
    assert doc["predicates"]["right_helicoid"]["holds"]
    assert doc["alpha_list"] == [0.0] and len(doc["grid"]["u"]) == 9
    assert doc["propositions"]["helicoid_equivalence"]["status"] == "holds"


def test_mesh_affine_counts(capsys, tmp_path):
    out = tmp_path / "m.obj"
    code, _, _ = run(capsys, "mesh", "--surface", "builtin:edlinger", "--target", "affine",
                     "--nu", "64", "--nv", "32", "--out", str(out))
    assert code == 0
    text = out.read_text()
    assert sum(l.startswith("v ") for l in text.splitlines()) == 2048
    assert sum(l.startswith("f ") for l in text.splitlines()) == 2 * 63 * 31


def test_mesh_base_is_helicoid(capsys, tmp_path):
    out = tmp_path / "h.obj"
    run(capsys, "mesh", "--surface", "builtin:helicoid", "--nu", "3", "--nv", "2",
        "--u1", "1", "--out", str(out))
    v = read_obj_vertices(out)
    u, w = 0.5, 2.0
    np.testing.assert_allclose(v[3], [w * np.cos(u), w * np.sin(u), u], atol=1e-7)


def test_mesh_affine_needs_kappa(capsys):
    code, _, err = run(capsys, "mesh", "--surface", "builtin:conoid", "--target", "affine", *SMALL)
    assert code == 3 and "kappa" in err


def test_curves(capsys):
    code, out, _ = run(capsys, "curves", "--surface", "builtin:generic", "--family", "u_curve",
                       "--nu", "5", "--nv", "3")
    doc = json.loads(out)
    assert code == 0 and len(doc["curves"]) == 3
    assert all(c["complete"] and len(c["samples"]) == 5 for c in doc["curves"])


def test_curves_partial(capsys):
    code, out, _ = run(capsys, "curves", "--surface", "builtin:conoid", "--family", "k_curve",
                       "--nu", "9", "--nv", "3")
    doc = json.loads(out)
    assert code == 0
    assert not doc["curves"][1]["complete"]  # starts on v = 0


def test_map_check(capsys):
    code, out, _ = run(capsys, "map-check", "--surface", "builtin:selfaffine", *SMALL)
    doc = json.loads(out)
    assert code == 0 and doc["eps0"] == 1.0
    assert doc["max"]["area"] <= 1e-8 and doc["max"]["isometry"] <= 1e-6


def test_deterministic_output(capsys):
    a = run(capsys, "eval", "--surface", "builtin:generic", "--nu", "3", "--nv", "3")[1]
    b = run(capsys, "eval", "--surface", "builtin:generic", "--nu", "3", "--nv", "3")[1]
    assert a == b


@pytest.mark.parametrize("argv", [
    ["verify"],
    ["verify", "--surface", "builtin:nope"],
    ["verify", "--surface", "builtin:generic", "--nu", "1"],
    ["verify", "--surface", "builtin:generic", "--tol", "-1"],
    ["verify", "--surface", "builtin:generic", "--u0", "2", "--u1", "1"],
    ["verify", "--surface", "builtin:generic", "--u1", "9"],
    ["eval", "--surface", "missing.rsd"],
    ["frobnicate", "--surface", "builtin:generic"],
    ["curves", "--surface", "builtin:generic"],
])
def test_flag_errors(capsys, argv):
    assert main(argv) == 2


def test_bad_expression_file(capsys, tmp_path):
    p = tmp_path / "bad.rsd"
    p.write_text("kappa = 2 +* u\ndelta = 1\nlambda = 0\n")
    code, _, err = run(capsys, "eval", "--surface", str(p))
    assert code == 2 and "offset 3" in err


def test_torsal_exit(capsys, tmp_path):
    p = tmp_path / "torsal.rsd"
    p.write_text("kappa = 1\ndelta = sin(u)\nlambda = 0\n")
    code, _, err = run(capsys, "eval", "--surface", str(p), *SMALL)
    assert code == 3


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "rulekit", "eval", "--surface", "builtin:helicoid",
                        "--nu", "2", "--nv", "2"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["surface"] == "helicoid"
