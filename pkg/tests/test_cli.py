import json
from pathlib import Path

import jsonschema
import pytest

from lcfield.cli import EXIT_DOMAIN, EXIT_IDENTITY, EXIT_OK, EXIT_SYNTAX, RunConfig, main
from lcfield.core import from_json, from_text
from lcfield.schemas import SCHEMAS

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "cases.json").read_text())
OK_CASES = [c for c in CASES if c["exit"] == 0]


def run(capsys, args):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_golden_text(case, capsys):
    code, out, err = run(capsys, case["args"])
    assert code == case["exit"]
    assert out + err == (GOLDEN / f"{case['name']}.out").read_text()


@pytest.mark.parametrize("case", OK_CASES, ids=[c["name"] for c in OK_CASES])
def test_golden_json_and_schema(case, capsys):
    code, out, _ = run(capsys, case["args"] + ["--json"])
    assert code == 0
    assert out == (GOLDEN / f"{case['name']}.json").read_text()
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS[case["args"][0]])


@pytest.mark.parametrize("case", OK_CASES, ids=[c["name"] for c in OK_CASES])
def test_deterministic_json(case, capsys):
    _, first, _ = run(capsys, case["args"] + ["--json"])
    _, second, _ = run(capsys, case["args"] + ["--json"])
    assert first == second


def test_spec_example_values(capsys):
    assert run(capsys, ["eval", "1/(1+d)", "--horizon", "4"])[1] == "1 - d + d^2 - d^3 [horizon 4]\n"
    assert run(capsys, ["eval", "sh(d^-1)"])[1] == "+inf\n"
    assert [float(v) for v in run(capsys, ["diff", "x^3", "--at", "2", "--order", "3"])[1].split(",")] == [8, 12, 12, 6]
    vals = [float(v) for v in run(capsys, ["diff", "exp(sin(x))", "--at", "0", "--order", "3"])[1].split(",")]
    assert vals == pytest.approx([1, 1, 1, 0], abs=1e-12)


def _dirac_json(capsys, args):
    code, out, _ = run(capsys, ["dirac", *args, "--json"])
    assert code == EXIT_OK
    return json.loads(out)


def test_dirac_examples(capsys):
    mom = _dirac_json(capsys, ["moments", "--m", "2", "--n", "5"])
    assert mom["expected_rational"] == "1/6" and mom["defect"] <= 1e-12
    prod = _dirac_json(capsys, ["product", "--f", "cos(x)"])
    assert prod["computed"] == pytest.approx(0.5, abs=1e-9)
    der = _dirac_json(capsys, ["derivative", "--k", "1", "--f", "cos(x)", "--at", "0"])
    assert der["computed"] == pytest.approx(-1, abs=1e-9)


def test_identity_failure_exit_code(capsys):
    # a degree-2 schedule cannot resolve exp to 1e-9
    code, out, _ = run(capsys, ["dirac", "product", "--f", "exp(x)", "--schedule", "1,2,3"])
    assert code == EXIT_IDENTITY
    assert "FAILED" in out


def test_text_and_json_agree(capsys):
    for case in OK_CASES:
        _, text, _ = run(capsys, case["args"])
        _, raw, _ = run(capsys, case["args"] + ["--json"])
        doc = json.loads(raw)
        cmd = doc["command"]
        if cmd in ("eval", "integrate", "norm"):
            if isinstance(doc["value"], str):
                assert text.strip() == doc["value"]
            else:
                assert from_text(text.strip()) == from_json(doc["value"])
        elif cmd == "diff":
            assert [float(v) for v in text.split(",")] == doc["derivatives"]
        elif cmd == "seq":
            head = text.splitlines()[0]
            assert head.split(":")[0] == doc["verdict"]
            if doc["verdict"] == "limit":
                assert from_text(head.split(": ", 1)[1]) == from_json(doc["value"])
        elif cmd == "dirac":
            lines = dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)
            computed = doc["computed"]
            if isinstance(computed, dict):
                assert from_text(lines["computed"]) == from_json(computed)
            else:
                assert float(lines["computed"]) == computed


def test_env_horizon(capsys, monkeypatch):
    monkeypatch.setenv("LC_DEFAULT_HORIZON", "3")
    assert run(capsys, ["eval", "1/(1+d)"])[1] == "1 - d + d^2 [horizon 3]\n"
    # the flag beats the environment
    assert run(capsys, ["eval", "1/(1+d)", "--horizon", "2"])[1] == "1 - d [horizon 2]\n"


@pytest.mark.parametrize(
    "args,code",
    [
        (["eval", "1/(1+d)", "--horizon", "0"], EXIT_SYNTAX),
        (["eval", "1", "--horizon", "abc"], EXIT_SYNTAX),
        (["eval", "1", "--tol", "-1"], EXIT_SYNTAX),
        (["eval", "x + 1"], EXIT_DOMAIN),
        (["eval", "exp(1/d)"], EXIT_DOMAIN),
        (["frobnicate"], EXIT_SYNTAX),
        (["dirac", "derivative", "--k", "2", "--order", "2"], EXIT_DOMAIN),
    ],
)
def test_error_exit_codes(args, code, capsys):
    assert run(capsys, args)[0] == code
    assert capsys.readouterr().out == ""


def test_errors_go_to_stderr(capsys):
    code, out, err = run(capsys, ["eval", "1/0"])
    assert code == EXIT_DOMAIN and out == "" and err.startswith("lc: ")


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(tol=0)
    with pytest.raises(ValueError):
        RunConfig(output="yaml")
    assert RunConfig().schedule == (2, 4, 8, 16, 32)


def test_norm_infinity_in_json(capsys):
    code, out, _ = run(capsys, ["norm", "x", "--from", "0", "--to", "2", "--p", "inf", "--json"])
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["norm"])
    assert doc["p"] == "inf" and from_json(doc["value"]).terms[0][1] == 2.0


def test_schemas_are_valid():
    for schema in SCHEMAS.values():
        jsonschema.Draft202012Validator.check_schema(schema)
