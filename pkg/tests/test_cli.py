import json
import pathlib
import subprocess
import sys

import jsonschema
import pytest

from frobsandwich.cli import main

SCHEMAS = pathlib.Path(__file__).resolve().parent.parent / "docs" / "schemas"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    doc = json.loads(out)
    schema = json.loads((SCHEMAS / f"{argv[0]}.schema.json").read_text())
    jsonschema.validate(doc, schema)
    return doc


def test_pclosed(capsys):
    assert run_json(capsys, "pclosed", "--field", "2", "--F", "x", "--G", "y") == \
        {"p_closed": True, "H": "1"}
    doc = run_json(capsys, "pclosed", "--coeffs", "a12=1,a10=1,b20=1")
    assert doc == {"p_closed": True, "H": "y^2 + 1"}


def test_classify_coeffs(capsys):
    doc = run_json(capsys, "classify", "--field", "2", "--coeffs", "a20=1,b02=1")
    assert doc["deg_L"] == -1 and doc["label"] == "D4^0+3A1"
    assert sorted(p["length"] for p in doc["points"]) == [1, 1, 1, 4]


def test_classify_affine_and_germ(capsys):
    doc = run_json(capsys, "classify", "--F", "y^4", "--G", "x^2", "--affine")
    assert doc["multiset"] == "E8^0"
    assert doc["presentation"]["relation"] == "Z^2 + Y^5 + X^3"
    doc = run_json(capsys, "classify", "--germ", "X^3 + X*Y^3")
    assert doc == {"germ": "X*Y^3 + X^3", "type": "E7^0", "tau": 14}


def test_classify_orbits_over_extension(capsys):
    doc = run_json(capsys, "classify", "--F", "x^2+x+1", "--G", "y")
    assert doc["field"] == "GF(2^2)"
    code, _, err = run(capsys, "classify", "--F", "x^2+x+1", "--G", "y", "--no-extend")
    assert code == 1 and "extension" in err


def test_degree_and_invariant_ring(capsys):
    doc = run_json(capsys, "degree", "--F", "x", "--G", "y")
    assert doc["deg_L"] == 1
    doc = run_json(capsys, "invariant-ring", "--F", "x*y^2", "--G", "x^2+y^3")
    assert doc["relation"] == "Z^2 + X*Y^3 + X^3"
    doc = run_json(capsys, "invariant-ring", "--field", "4", "--chart", "U1",
                   "--F", "z", "--G", "g*w^2+w")
    assert doc["chart"] == "U1"


def test_resolve_and_tjurina(capsys):
    doc = run_json(capsys, "resolve", "--germ", "X^2*Y + X*Y^3")
    assert doc["shape"] == "D6" and doc["vertices"] == 6
    assert run_json(capsys, "tjurina", "--germ", "X^3+Y^5") == {"tau": 16}


def test_survey(capsys):
    doc = run_json(capsys, "survey", "--field", "2")
    assert doc["violations"] == [] and all(doc["assertions"].values())
    doc = run_json(capsys, "survey", "--field", "4", "--samples", "40", "--seed", "1")
    assert doc["mode"] == "sampled" and doc["examined"] == 40


def test_text_format(capsys):
    code, out, _ = run(capsys, "classify", "--coeffs", "a20=1,b02=1", "--format", "text")
    assert code == 0
    assert "configuration: D4^0+3A1" in out
    assert "(1 : 0 : 0)  U0     4       D4^0" in out
    code, out, _ = run(capsys, "survey", "--format", "text")
    assert code == 0 and "ok   no_violations" in out


def test_input_errors(capsys):
    code, _, err = run(capsys, "pclosed", "--F", "x + * y", "--G", "y")
    assert code == 2
    assert err.splitlines()[-1].strip() == "^"
    code, _, err = run(capsys, "pclosed", "--F", "x^2", "--G", "x*y")
    assert code == 2 and "F and G must be coprime" in err
    code, _, err = run(capsys, "classify", "--coeffs", "a20=1,a02=1")
    assert code == 2
    code, _, err = run(capsys, "pclosed", "--F", "x")
    assert code == 2
    with pytest.raises(SystemExit) as ei:
        main(["pclosed", "--field", "6", "--F", "x", "--G", "y"])
    assert ei.value.code == 2
    with pytest.raises(SystemExit) as ei:
        main(["pclosed", "--bogus"])
    assert ei.value.code == 2


def test_computational_errors_exit_1(capsys):
    code, _, err = run(capsys, "invariant-ring", "--F", "y", "--G", "x^2+1")
    assert code == 1 and "not p-closed" in err
    code, _, err = run(capsys, "tjurina", "--germ", "X + Y^2")
    assert code == 1 and "smooth" in err


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "frobsandwich", "survey", "--field", "2"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd + ["--workers", "2"], capture_output=True, text=True, check=True).stdout
    assert a == b
