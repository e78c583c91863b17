import contextlib
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stronglift.cli import main


def call(argv, stdin=None):
    buf = io.StringIO()
    old = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        with contextlib.redirect_stdout(buf):
            code = main(argv)
    finally:
        sys.stdin = old
    return code, buf.getvalue()


def P(coords, n, weights=None):
    return {"coords": coords, "modulus": n, "weights": weights or [1] * len(coords)}


ALL_ONES = json.dumps([[1, 1, 1, 1]] * 4)
EXAMPLE_POINTS = json.dumps([
    P([1, 1, 1, 1], 241, [2, 5, 3, 10]),
    P([1, 1, 1, 1], 601, [8, 20, 30, 24]),
    P([1, 1, 1, 1], 1201, [1, 50, 48, 40]),
    P([1, 1, 1, 1], 1321, [11, 55, 44, 22]),
])

SUBCOMMANDS = {
    "lift-sl": ["--modulus", "5", "--matrix", "[[2,0],[0,3]]"],
    "lift-sp": ["--modulus", "5", "--matrix", "[[0,0,1,0],[0,0,0,1],[4,0,0,0],[0,4,0,0]]"],
    "extend-row": ["--vector", "1,2,3,4", "--position", "3"],
    "extend-col": ["--vector", "[0,0,1,0]"],
    "multi-lift-sl": ["--rows", "[[1,1],[1,1]]", "--ideals", "3,5"],
    "multi-lift-sp": ["--rows", ALL_ONES, "--ideals", "241,601,1201,1321"],
    "surject-sl": ["--points", EXAMPLE_POINTS],
    "surject-sp": ["--points", EXAMPLE_POINTS],
    "crt-proj-lift": ["--points", json.dumps([P([1, 1], 3), P([1, 2], 5)])],
    "crt-proj-reduce": ["--point", json.dumps(P([1, 7], 15)), "--factors", "3,5"],
    "enumerate-classes": ["--modulus", "5", "--weights", "1,2"],
    "diag-det-one": ["--values", "2,3", "--moduli", "5,7"],
    "coprime-shift": ["--a", "2", "--b", "3", "--m", "6"],
    "usc-shift": ["--entries", "6,10,15", "--target", "7"],
    "cmh-perturb": ["--entries", "4,6", "--modulus", "9"],
    "obstruction": ["--point", json.dumps(P([0, 0, 1], 7)), "--p", "2", "--q", "1"],
}


def test_enumerate_classes_example():
    code, out = call(["enumerate-classes", "--modulus", "5", "--weights", "1,2"])
    assert code == 0
    data = json.loads(out)
    assert data["output"]["count"] == 7
    assert all(c["pass"] for c in data["checks"])


def test_lift_sl_example():
    code, out = call(["lift-sl", "--modulus", "5", "--matrix", "[[2,0],[0,3]]"])
    assert code == 0
    data = json.loads(out)
    assert data["operation"] == "lift-sl" and all(c["pass"] for c in data["checks"])


@pytest.mark.parametrize("name", sorted(SUBCOMMANDS))
def test_round_trip_through_verify(name, tmp_path):
    path = tmp_path / "cert.json"
    code, _ = call([name, *SUBCOMMANDS[name], "--out", str(path)])
    assert code == 0
    code, out = call(["verify", "--certificate", str(path)])
    assert code == 0, out
    assert json.loads(out)["valid"] is True


def test_verify_reads_stdin():
    _, cert = call(SUBCOMMANDS["lift-sl"] and ["lift-sl", *SUBCOMMANDS["lift-sl"]])
    code, out = call(["verify", "--certificate", "-"], stdin=cert)
    assert code == 0 and json.loads(out)["valid"]


def test_input_file_supplies_parameters(tmp_path):
    path = tmp_path / "in.json"
    path.write_text(json.dumps({"matrix": [[2, 0], [0, 3]], "modulus": "5"}))
    code, out = call(["lift-sl", "--input", str(path)])
    assert code == 0 and json.loads(out)["input"]["modulus"] == "5"


def test_verify_ignores_recorded_checks(tmp_path):
    _, out = call(["lift-sl", *SUBCOMMANDS["lift-sl"]])
    cert = json.loads(out)
    cert["output"]["entries"][0][0] = "38"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(cert))
    code, out = call(["verify", "--certificate", str(path)])
    assert code == 1
    result = json.loads(out)
    assert result["valid"] is False
    assert {c["name"] for c in result["checks"] if not c["pass"]} == {"det_exactly_one", "congruent_mod_n"}


@pytest.mark.parametrize("name", ["surject-sl", "obstruction", "enumerate-classes", "coprime-shift"])
def test_verify_catches_tampered_outputs(name, tmp_path):
    _, out = call([name, *SUBCOMMANDS[name]])
    cert = json.loads(out)
    if name == "surject-sl":
        cert["lambdas"][0] = "2"
    elif name == "obstruction":
        cert["output"] = not cert["output"]
    elif name == "enumerate-classes":
        cert["output"]["count"] = 8
    else:
        cert["output"] = "2"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(cert))
    code, _ = call(["verify", "--certificate", str(path)])
    assert code == 1


def test_precondition_exit_code():
    code, out = call(["lift-sl", "--modulus", "5", "--matrix", "[[0,1],[1,0]]"])
    assert code == 2
    err = json.loads(out)
    assert err["code"] == "NotSLModN" and err["message"]


@pytest.mark.parametrize("argv", [
    ["lift-sl", "--bogus"],
    ["no-such-command"],
    [],
    ["lift-sl", "--modulus", "5"],
    ["enumerate-classes", "--modulus", "500", "--weights", "1,1"],
    ["verify"],
    ["verify", "--certificate", "/nonexistent/file.json"],
])
def test_bad_invocations_exit_two(argv):
    code, out = call(argv)
    assert code == 2
    assert set(json.loads(out)) == {"code", "message"}


junk = st.one_of(
    st.text(max_size=30),
    st.recursive(
        st.one_of(st.none(), st.booleans(), st.integers(-10, 10), st.text(max_size=5)),
        lambda inner: st.lists(inner, max_size=4) | st.dictionaries(st.text(max_size=8), inner, max_size=3),
        max_leaves=12,
    ).map(json.dumps),
)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(sorted(SUBCOMMANDS)), st.data())
def test_fuzzed_arguments_never_crash(name, data):
    argv = list(SUBCOMMANDS[name])
    slot = data.draw(st.sampled_from(range(1, len(argv), 2)))
    argv[slot] = data.draw(junk)
    code, out = call([name, *argv])
    assert code in (0, 2)
    if code == 2:
        assert set(json.loads(out)) == {"code", "message"}


@settings(max_examples=150, deadline=None)
@given(junk)
def test_fuzzed_certificates_never_crash(text):
    code, out = call(["verify", "--certificate", "-"], stdin=text)
    assert code in (1, 2)
    if code == 2:
        assert set(json.loads(out)) == {"code", "message"}


def test_repro_default_passes():
    code, out = call(["repro"])
    report = json.loads(out)
    assert code == 0 and report["passed"]
    names = {r["name"] for r in report["results"]}
    assert {"four-primes-sl4", "four-primes-sp4", "class-count-weights-1-2-mod-5"} <= names
    assert all("seconds" in r for r in report["results"])


def test_repro_budget_small_skips_large_enumerations():
    code, out = call(["repro", "--budget-small"])
    report = json.loads(out)
    skipped = [r["name"] for r in report["results"] if r["status"] == "skipped"]
    assert code == 0 and skipped == ["class-count-weights-1-2-mod-211"]


def test_repro_tampered_fixture_fails_with_named_check(tmp_path):
    from importlib import resources

    data = json.loads(resources.files("stronglift").joinpath("data/reference_examples.json").read_text())
    for fx in data["fixtures"]:
        if fx["name"] == "class-count-weights-1-2-mod-5":
            fx["expect"]["count"] = 8
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(data))
    code, out = call(["repro", "--budget-small", "--fixtures", str(path)])
    assert code == 1
    failed = {r["name"]: r["failed_checks"] for r in json.loads(out)["results"] if r["status"] == "fail"}
    assert failed == {"class-count-weights-1-2-mod-5": ["class_count"]}


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "stronglift", "coprime-shift", "--a", "5", "--b", "7", "--m", "10"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["output"] in {str(n) for n in range(10) if (5 + 7 * n) % 2 and (5 + 7 * n) % 5}
