import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from splitcm.cli import run
from splitcm.invariants import weighted_equal
from splitcm.report import dumps

J_EX1 = ("1728012", "93313728006", "-186622271996", "-2176943579975806271997", "2176782336000000000000")


def cli(*args):
    return run([str(a) for a in args])


@pytest.fixture(scope="module")
def schema():
    return json.loads(resources.files("splitcm").joinpath("data/report.schema.json").read_text())


def test_enumerate():
    out, code = cli("enumerate", "-N", 163)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "n=14 t=8" and len(lines) == 16
    out, code = cli("enumerate", "-N", 43)
    assert code == 0 and out.strip().endswith("n=4 t=3")


@pytest.mark.parametrize("N", [15, 13, 2])
def test_enumerate_invalid(N):
    assert cli("enumerate", "-N", N)[1] == 2


def test_enumerate_json_roundtrip():
    out, _ = cli("enumerate", "-N", 67, "--format", "json")
    doc = json.loads(out)
    assert dumps(doc) == out and doc["n"] == "6" and doc["t"] == "4"


def test_bad_arguments():
    assert cli("curve", "-N", 43, "--digits", "5")[1] == 2
    assert cli("no-such-command")[1] == 2
    assert cli("curve", "-N", 43)[1] == 2


def test_curve_example_1_text():
    out, code = cli("curve", "-N", 43, "--form", "2,1,2,6")
    assert code == 0
    for j in J_EX1:
        assert j in out
    assert "x^4: -3/4 + 567/4*sqrt(-43)" in out
    assert "extra automorphisms" in out


def test_curve_example_2_json():
    out, code = cli("curve", "-N", 43, "--form", "3,1,2,4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert dumps(doc) == out
    assert doc["obstruction"]["places"] == ["43", "inf"]
    assert doc["det_M_factorization"] == {"2": "64", "3": "38", "5": "34", "7": "28", "19": "4", "29": "2", "37": "2", "43": "1"}
    assert doc["mestre_matrix"][0][0] == "-21538723388574481387776"
    assert doc["sextic"]["denominator"] == "27"
    assert doc["sextic"]["numerators"][3] == ["68084", "0"]
    assert doc["D_factorization"] == {"2": "12", "3": "12", "5": "12", "7": "12"}


def test_curve_deterministic():
    args = ("curve", "-N", 43, "--form", "3,-1,2,4", "--format", "json")
    assert cli(*args) == cli(*args)


def test_curve_digits_override():
    out, code = cli("curve", "-N", 43, "--form", "3,1,2,4", "--digits", "150", "--format", "json")
    assert code == 0 and json.loads(out)["digits"] == "150"


def test_curve_errors():
    assert cli("curve", "-N", 43, "--form", "1,1,0,11")[1] == 4
    assert cli("curve", "-N", 43, "--form", "3,1,2,5")[1] == 2  # wrong discriminant
    assert cli("curve", "-N", 43, "--form", "3,-5,2,4")[1] == 2  # not reduced
    assert cli("curve", "-N", 43, "--form", "junk")[1] == 2


def test_recognition_failure_exit(monkeypatch):
    import splitcm.curves as curves

    def broken(*args, **kwargs):
        raise curves.RecognitionFailed("forced")

    monkeypatch.setattr(curves, "_recognize_all", broken)
    assert cli("curve", "-N", 43, "--form", "3,1,2,4")[1] == 3


def test_invariants_file(tmp_path):
    path = tmp_path / "q.txt"
    path.write_text("1472877\n3214656\n813483\n585856\n61311\n24384\n1\n")
    out, code = cli("invariants", "--sextic", path, "--format", "json")
    assert code == 0
    J = [json.loads(out)["igusa"][k] for k in ("J2", "J4", "J6", "J8", "J10")]
    from fractions import Fraction

    assert weighted_equal([Fraction(x) for x in J], [Fraction(x) for x in J_EX1])
    path.write_text("1/2\n0\nabc\n")
    assert cli("invariants", "--sextic", path)[1] == 2
    assert cli("invariants", "--sextic", tmp_path / "missing.txt")[1] == 2


def test_obstruction_command():
    out, code = cli("obstruction", "-N", 43, "--form", "3,1,2,4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["obstructed_places"] == ["43", "inf"] and not doc["extra_automorphisms"]
    out, code = cli("obstruction", "-N", 43, "--form", "qmodel", "--format", "json")
    assert code == 0 and json.loads(out)["extra_automorphisms"]


def test_gz_verify_bundled():
    out, code = cli("gz-verify", "-N", 163)
    assert code == 0 and out.strip().endswith("EQUAL")
    assert "3^24" in out


def test_gz_verify_differ(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("200 0 0\n0 200 0\n0 0 200\n")
    out, code = cli("gz-verify", "-N", 163, "--gram", path, "--format", "json")
    doc = json.loads(out)
    assert doc["gz_exponents"] == {} and doc["disc_over_4096_factorization"]
    assert doc["verdict"] == "DIFFER" and code == 1


def test_gz_verify_bad_gram(tmp_path):
    asym = tmp_path / "a.txt"
    asym.write_text("24 4 6\n5 55 1\n6 1 83\n")
    assert cli("gz-verify", "-N", 163, "--gram", asym)[1] == 2
    short = tmp_path / "s.txt"
    short.write_text("1 2 3\n")
    assert cli("gz-verify", "-N", 163, "--gram", short)[1] == 2
    indef = tmp_path / "i.txt"
    indef.write_text("1 0 0\n0 -1 0\n0 0 1\n")
    assert cli("gz-verify", "-N", 163, "--gram", indef)[1] == 5


def test_maximal_scan_ranges():
    out, code = cli("maximal-scan", "-N", 43, "--curve", "qmodel", "--pmax", 166)
    assert code == 0 and "0 primes checked" in out
    out, code = cli("maximal-scan", "-N", 43, "--curve", "qmodel", "--pmax", 300, "--format", "json")
    ps = [r["p"] for r in json.loads(out)["rows"]]
    assert "167" in ps and "251" in ps


def test_maximal_scan_k_model_exit_zero():
    out, code = cli("maximal-scan", "-N", 43, "--curve", "3,1,2,4", "--pmax", 10000)
    assert code == 0 and "0 failures" in out


def test_maximal_scan_exit_code_tracks_failures():
    out, code = cli("maximal-scan", "-N", 43, "--curve", "qmodel", "--pmax", 10000, "--format", "json")
    doc = json.loads(out)
    assert code == (0 if doc["summary"]["all_maximal"] else 6)


def test_maximal_scan_qmodel_all_maximal():
    out, code = cli("maximal-scan", "-N", 43, "--curve", "qmodel", "--pmax", 10000)
    assert code == 0, out


def test_maximal_scan_selector_errors():
    assert cli("maximal-scan", "-N", 163, "--curve", "qmodel")[1] == 2
    assert cli("maximal-scan", "-N", 43, "--curve", "1,1,0,11")[1] == 4


def test_report_7_empty(schema):
    out, code = cli("report", "-N", 7, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["curves"] == [] and doc["t_minus_1"] == "0"
    jsonschema.validate(doc, schema)


def test_report_43(schema, tmp_path):
    path = tmp_path / "r.json"
    assert cli("report", "-N", 43, "--format", "json", "-o", path) == ("", 0)
    text = path.read_text()
    doc = json.loads(text)
    jsonschema.validate(doc, schema)
    assert dumps(doc) == text
    assert len(doc["curves"]) == 3
    assert sum(c["definable_over_Q"] for c in doc["curves"]) == 1
    assert doc["t_minus_1"] == "2"
    for c in doc["curves"]:
        assert ("obstruction" in c and c["obstruction"]["places"] != []) == (not c["definable_over_Q"])


def test_report_rejects_N_outside_list():
    assert cli("report", "-N", 23)[1] == 2


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "splitcm.cli", "enumerate", "-N", "19"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.strip().endswith("n=2 t=2")


def test_report_163(schema):
    out, code = cli("report", "-N", 163, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    assert code == 0 and len(doc["curves"]) == 13
    assert len(doc["orbits"]) == 7 and doc["t_minus_1"] == "7"
    assert doc["intro_fixture_matches"] == ["(6, -1+2i, 7)", "(6, 1+2i, 7)"]
    for c in doc["curves"]:
        assert all(v.lstrip("-").isdigit() for v in c["igusa"].values())
