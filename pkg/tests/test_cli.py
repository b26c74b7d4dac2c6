import json
import shutil
import subprocess
from importlib import resources

import jsonschema
import numpy as np
import pytest

from conftest import FIXTURES
from tubalpf import io
from tubalpf.cli import main
from tubalpf.core import identity

FIXTURE_NAMES = sorted(p.name for p in FIXTURES.glob("*.json"))


def schema(name):
    return json.loads(resources.files("tubalpf").joinpath(f"schemas/{name}.schema.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixtures_match_tensor_schema(name):
    jsonschema.validate(json.loads((FIXTURES / name).read_text()), schema("tensor"))


@pytest.mark.parametrize("name", FIXTURE_NAMES)
@pytest.mark.filterwarnings("ignore:t-eigenvalue.*multiplicity:RuntimeWarning")
def test_every_subcommand_on_every_fixture(capsys, name):
    path = FIXTURES / name
    code, out, _ = run(capsys, "classify", path, "--json")
    assert code == 0
    jsonschema.validate(json.loads(out), schema("classify"))
    for method in ("scc", "subset", "power"):
        code, out, _ = run(capsys, "irreducible", path, "--method", method, "--json")
        assert code == 0
        jsonschema.validate(json.loads(out), schema("irreducible"))
    for extra in ([], ["--left"]):
        code, out, _ = run(capsys, "eig", path, "--values", *extra)
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, schema("eig"))
        code, out, _ = run(capsys, "eig", path, "--vectors", str(doc["rho"]), *extra)
        assert code == 0
        pair = json.loads(out)["eigenpair"]
        assert pair["residual"] <= 1e-8 * max(1, doc["rho"]) * 10
    code, out, _ = run(capsys, "pf-report", path, "--left")
    assert code == 0
    jsonschema.validate(json.loads(out), schema("pf_report"))
    code, out, _ = run(capsys, "pf-report", path, "--text")
    assert code == 0 and "rho=" in out
    code, out, _ = run(capsys, "tprod", path, path)
    assert code == 0 and io.loads(out).n == io.load(path).n


def test_classify_text(capsys):
    assert run(capsys, "classify", FIXTURES / "all_ones_2x2x2.json")[1] == "strongly_positive\n"


def test_irreducible_path_certificate(capsys):
    code, out, _ = run(capsys, "irreducible", FIXTURES / "example_3_17.json", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "reducible"
    assert doc["witness"] == [2] and doc["block_sizes"] == [2, 1]
    code, out, _ = run(capsys, "irreducible", FIXTURES / "example_3_10.json", "--method", "subset")
    assert out.splitlines()[:2] == ["reducible", "witness: {1}"]
    assert run(capsys, "irreducible", FIXTURES / "example_3_9.json")[1] == "irreducible\n"


def test_eig_swap(capsys):
    code, out, _ = run(capsys, "eig", FIXTURES / "example_4_7.json")
    doc = json.loads(out)
    assert doc["rho"] == pytest.approx(1.0)
    assert sorted(round(v[0]) for v in doc["eigenvalues"]) == [-1, -1, 1, 1]
    code, out, _ = run(capsys, "eig", FIXTURES / "example_4_7.json", "--vectors", "0.5")
    assert code == 1


def test_pf_report_swap(capsys):
    code, out, _ = run(capsys, "pf-report", FIXTURES / "example_4_7.json", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["input"]["irreducible"] and not doc["input"]["has_strongly_positive_tube"]
    status = {(it["group"], it["id"]): it["status"] for it in doc["items"]}
    assert all(v == "pass" for (g, _), v in status.items() if g in ("weak", "irreducible"))
    assert all(v == "not_applicable" for (g, _), v in status.items() if g == "enhanced")


def test_pf_report_fail_exits_one(capsys, monkeypatch):
    from tubalpf import pfverify

    monkeypatch.setattr(pfverify, "_irreducible_hypothesis", lambda an: None)
    code, _, _ = run(capsys, "pf-report", FIXTURES / "identity_2x2x2.json")
    assert code == 1


def test_tprod_of_identities(capsys, tmp_path):
    out_path = tmp_path / "c.json"
    code, _, _ = run(capsys, "tprod", FIXTURES / "identity_2x2x2.json", FIXTURES / "identity_2x2x2.json",
                     "-o", out_path)
    assert code == 0 and io.load(out_path) == identity(2, 2)
    code, out, _ = run(capsys, "tprod", FIXTURES / "example_4_7.json", FIXTURES / "example_4_7.json", "--fft")
    assert np.allclose(io.loads(out).data, identity(2, 2).data)


def test_tprod_with_vector(capsys, tmp_path):
    vec = tmp_path / "x.json"
    vec.write_text('{"n": 2, "p": 2, "tubes": [[1, 0], [0, 1]]}\n')
    code, out, _ = run(capsys, "tprod", FIXTURES / "example_4_7.json", vec)
    assert code == 0 and io.loads(out).data.tolist() == [[1, 0], [0, 1]]


def test_generate_is_deterministic(capsys, tmp_path):
    argv = ["generate", "--n", 3, "--p", 2, "--density", 0.4, "--seed", 42, "--ensure", "irreducible"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    code, out, _ = run(capsys, "generate", "--n", 2, "--p", 2, "--integer", "--range", 1, 3)
    assert code == 0 and io.loads(out).data.dtype == np.int64
    code, _, err = run(capsys, "generate", "--n", 2, "--p", 2, "--density", 0, "--ensure", "irreducible")
    assert code == 1 and "density 0" in err


def test_tolerance_from_environment(capsys, monkeypatch, tmp_path):
    path = tmp_path / "t.json"
    path.write_text('{"n": 1, "p": 2, "slices": [[[1.0]], [[1e-14]]]}\n')
    assert run(capsys, "classify", path)[1] == "positive\n"
    monkeypatch.setenv("TUBAL_TOL", "0")
    assert run(capsys, "classify", path)[1] == "strongly_positive\n"
    assert run(capsys, "classify", path, "--tol", "1e-10")[1] == "positive\n"
    monkeypatch.setenv("TUBAL_TOL", "abc")
    code, _, err = run(capsys, "classify", path)
    assert code == 2 and "TUBAL_TOL" in err


@pytest.mark.parametrize("argv, code", [
    (["bogus"], 2),
    ([], 2),
    (["classify"], 2),
    (["classify", "x.json", "--tol", "-1"], 2),
    (["irreducible", "x.json", "--method", "magic"], 2),
    (["classify", "missing.json"], 1),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_parse_error_is_reported(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 1, "p": 1,\n"slices": [[[NaN]]]}\n')
    code, _, err = run(capsys, "classify", path)
    assert code == 1 and "line 2" in err


def test_matrix_commands_reject_vectors(capsys, tmp_path):
    vec = tmp_path / "x.json"
    vec.write_text('{"n": 1, "p": 1, "tubes": [[1]]}\n')
    assert run(capsys, "irreducible", vec)[0] == 1


@pytest.mark.skipif(shutil.which("tubalpf") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["tubalpf", "irreducible", str(FIXTURES / "example_3_16.json")],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "irreducible\n"
