import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from dualhs.cli import EXIT_INPUT, EXIT_MISSING, EXIT_NUMERIC, EXIT_OK, run

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
GOLDEN = HERE / "golden"
REGEN = os.environ.get("DUALHS_REGEN_GOLDEN") == "1"

FIXTURE_NAMES = ("diag_essential", "nilpotent", "invertible3")
VERBS = ("svd", "hs", "ndmpi", "mpdgi", "dmpgi", "dggi", "inv", "group-ess", "check")

# documented exit codes for each (verb, fixture)
EXPECTED_STATUS = {
    ("dmpgi", "diag_essential"): EXIT_MISSING,
    ("dggi", "diag_essential"): EXIT_MISSING,
    ("inv", "diag_essential"): EXIT_MISSING,
    ("dggi", "nilpotent"): EXIT_MISSING,
    ("inv", "nilpotent"): EXIT_MISSING,
    ("group-ess", "nilpotent"): EXIT_MISSING,
}


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def check_golden(name, status, text):
    path = GOLDEN / f"{name}.txt"
    body = f"exit {status}\n{text}"
    if REGEN:
        path.write_text(body)
    assert path.read_text() == body


@pytest.mark.parametrize("fixture", FIXTURE_NAMES)
@pytest.mark.parametrize("verb", VERBS)
def test_golden(verb, fixture):
    status, out, err = invoke(verb, str(FIXTURES / f"{fixture}.json"))
    assert status == EXPECTED_STATUS.get((verb, fixture), EXIT_OK), err
    check_golden(f"{verb}__{fixture}", status, out)


@pytest.mark.parametrize("fixture", FIXTURE_NAMES)
def test_golden_pretty(fixture):
    status, out, _ = invoke("ndmpi", str(FIXTURES / f"{fixture}.json"), "--output", "pretty")
    check_golden(f"ndmpi_pretty__{fixture}", status, out)


def test_golden_verify():
    status, out, _ = invoke("verify", "char", "--trials", "25", "--size", "3", "--seed", "7")
    assert status == EXIT_OK
    check_golden("verify__char", status, out)


def test_ndmpi_example_payload():
    status, out, _ = invoke("ndmpi", str(FIXTURES / "diag_essential.json"))
    doc = json.loads(out)
    assert status == EXIT_OK and doc["exists"] is True
    assert doc["value"]["standard"] == [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]
    assert all(x == [0.0, 0.0] for row in doc["value"]["dual"] for x in row)


def test_dmpgi_nonexistence_payload():
    status, out, _ = invoke("dmpgi", str(FIXTURES / "diag_essential.json"))
    doc = json.loads(out)
    assert status == EXIT_MISSING and doc["exists"] is False and doc["value"] is None


def test_verify_example():
    status, out, _ = invoke("verify", "ndep-equiv", "--trials", "200", "--size", "6", "--seed", "42")
    doc = json.loads(out)
    assert status == EXIT_OK
    assert doc["verdicts"]["violation"] == 0 and doc["trials"] == 200


@pytest.mark.parametrize("fixture", FIXTURE_NAMES)
def test_svd_check_round_trip(fixture):
    status, out, _ = invoke("svd", str(FIXTURES / f"{fixture}.json"), "--check")
    doc = json.loads(out)
    assert status == EXIT_OK and doc["check"]["pass"] is True
    for key in ("reconstruction", "unitarity_u", "unitarity_v"):
        assert set(doc["check"][key]) == {"std", "dual"}
        assert max(doc["check"][key].values()) <= 1e-8


@pytest.mark.parametrize("verb", VERBS)
def test_output_is_byte_stable(verb):
    path = str(FIXTURES / "invertible3.json")
    assert invoke(verb, path) == invoke(verb, path)


def test_flags_change_behaviour():
    path = str(FIXTURES / "diag_essential.json")
    # with a huge tolerance even the inconsistent DMPGI candidate passes
    status, _, _ = invoke("dmpgi", path, "--tol", "1e12")
    assert status == EXIT_OK
    status, out, _ = invoke("svd", path, "--rank-tol", "0.4")
    assert status == EXIT_OK and json.loads(out)["r"] == 1


def test_rank_tol_truncates(tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"rows": 2, "cols": 2, "standard": [[[1, 0], [0, 0]], [[0, 0], [1e-4, 0]]],
                             "dual": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]}))
    assert json.loads(invoke("svd", str(m))[1])["r"] == 2
    status, out, _ = invoke("svd", str(m), "--rank-tol", "1e-3", "--check")
    doc = json.loads(out)
    assert doc["r"] == 1
    # the truncation error is reported, not hidden, and fails the round-trip check
    assert doc["check"]["reconstruction"]["std"] == pytest.approx(1e-4, rel=0.05)
    assert status == EXIT_NUMERIC and doc["check"]["pass"] is False


def test_malformed_json_names_field(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"rows": 1, "cols": 1, "standard": [[[1, 0]]]}))
    status, out, err = invoke("ndmpi", str(bad))
    assert status == EXIT_INPUT and out == "" and "'dual'" in err
    bad.write_text("{not json")
    status, _, err = invoke("svd", str(bad))
    assert status == EXIT_INPUT and "invalid JSON" in err


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate", "x.json"],
    ["svd"],
    ["svd", "--output", "xml", "x.json"],
    ["verify", "no-such-theorem"],
    ["svd", "does-not-exist.json"],
    ["svd", "x.json", "--tol", "-1"],
    ["verify", "char", "--size", "0"],
])
def test_usage_errors_exit_2(argv, tmp_path):
    argv = [str(FIXTURES / "nilpotent.json") if a == "x.json" else a for a in argv]
    status, _, _ = invoke(*argv)
    assert status == EXIT_INPUT


def test_rectangular_input_to_square_verb(tmp_path):
    rect = tmp_path / "rect.json"
    rect.write_text(json.dumps({"rows": 1, "cols": 2, "standard": [[[1, 0], [0, 0]]],
                                "dual": [[[0, 0], [0, 0]]]}))
    assert invoke("hs", str(rect))[0] == EXIT_INPUT
    assert invoke("svd", str(rect))[0] == EXIT_OK
    assert invoke("dmpgi", str(rect))[0] == EXIT_OK


def test_numerical_failure_exit_3(monkeypatch):
    from dualhs import cli
    from dualhs.errors import ConvergenceFailure

    def boom(*a, **k):
        raise ConvergenceFailure("no convergence")

    monkeypatch.setattr(cli, "dual_svd", boom)
    assert invoke("svd", str(FIXTURES / "nilpotent.json"))[0] == EXIT_NUMERIC


def test_help_documents_defaults():
    status, out, _ = invoke("svd", "--help")
    assert status == EXIT_OK
    assert "1e-09" in out and "1e-08" in out and "json" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dualhs.cli", "inv", str(FIXTURES / "nilpotent.json")],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_MISSING
    assert json.loads(proc.stdout)["exists"] is False
