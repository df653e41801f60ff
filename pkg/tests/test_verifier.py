import json
import shutil
from importlib import resources

import pytest

from crepant_kit import cli
from crepant_kit.verifier import emit_report, verify


@pytest.fixture(scope="module")
def default_report():
    return verify("plus-i")


def test_all_pass(default_report):
    assert default_report.status == "pass", [c for c in default_report.checks if not c.passed]
    assert default_report.exit_code == 0


def test_json_document(default_report):
    doc = json.loads(emit_report([default_report], "json"))
    checks = doc["reports"][0]["checks"]
    assert doc["status"] == "pass" and len(checks) >= 25
    assert {"name", "lane", "status", "residual", "witness", "claim"} <= set(checks[0])
    assert len({c["name"] for c in checks}) == len(checks)


def test_reports_are_deterministic():
    a = emit_report([verify("minus-i", "1")], "json")
    b = emit_report([verify("minus-i", "1")], "json")
    assert a == b


def test_epsilon_one_is_exact():
    r = verify("plus-i", "1")
    assert r.status == "pass"
    assert (r.alpha, r.beta) == ("3", "9")


def test_xi_perturbation_fails_with_witness():
    r = verify("plus-i", "1", xi_perturbation=[("e1", "E2")])
    bad = [c for c in r.checks if not c.passed]
    assert bad and all(c.witness is not None for c in bad if c.name.startswith("hom"))
    assert r.exit_code == 1


def test_corrupted_ring_file(tmp_path):
    src = resources.files("crepant_kit.data")
    for name in ("cr_p1344.ring", "z_resolution.ring", "f3.ring"):
        with resources.as_file(src / name) as p:
            shutil.copy(p, tmp_path / name)
    with open(tmp_path / "z_resolution.ring", "a", encoding="utf-8") as fh:
        fh.write("rel h*\n")
    r = verify("plus-i", "1", data_dir=tmp_path)
    assert r.exit_code == 1
    assert r.checks[0].name == "build:rings" and "line" in r.checks[0].witness


def test_cli_verify(capsys):
    assert cli.main(["verify", "--case", "plus-i", "--epsilon", "i", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "pass"
    assert cli.main(["verify", "--case", "plus-i", "--perturb-xi", "h:H"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_cli_epsilon_coeffs(tmp_path, capsys):
    p = tmp_path / "n.txt"
    p.write_text("1 1\n", encoding="utf-8")
    # truncated series at q = 1 is 1 - 3 = -2
    assert cli.main(["verify", "--case", "minus-i", "--epsilon-coeffs", str(p), "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["reports"][0]["epsilon"] == "-2"


def test_cli_fan_and_cr(capsys):
    assert cli.main(["fan", "--weights", "1,3,4,4", "--resolve", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["resolution"]["smooth"] and doc["resolution"]["crepant"]
    assert len(doc["resolution"]["cones"]) == 12
    assert cli.main(["fan", "--weights", "1,1,1,3", "--resolve"]) == 2
    capsys.readouterr()
    assert cli.main(["cr", "--weights", "1,3,4,4", "--report", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["dimensions"] == {"0": 1, "2": 5, "4": 5, "6": 1}
    assert cli.main(["cr", "--weights", "1,2"]) == 1


def test_cli_rejects_low_precision(capsys):
    assert cli.main(["verify", "--digits", "10"]) == 2


@pytest.mark.parametrize("eps", ["1", "2", "i", "f1"])
@pytest.mark.parametrize("branch", [0, 1, 2])
def test_isomorphism_for_every_epsilon_and_branch(rings, eps, branch):
    from crepant_kit.verifier import run_numeric_suite

    checks, _ = run_numeric_suite(rings, "plus-i", eps, branch, 30)
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]
