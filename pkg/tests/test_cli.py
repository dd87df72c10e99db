"""The cdcat command line: output format, exit codes, determinism."""

import json

import pytest

from cdcat import cli
from cdcat.reports import Report


def run(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_diff_output(capsys):
    code, out, _ = run(capsys, "diff", "[x1^2]")
    assert code == 0
    assert out == "[2*x1*v1]\n"


def test_diff_multi_component(capsys):
    code, out, _ = run(capsys, "diff", "[x1^2; x1*x2]")
    assert code == 0
    assert out == "[2*x1*v1; x2*v1 + x1*v2]\n"


def test_nderiv_output(capsys):
    code, out, _ = run(capsys, "nderiv", "--n", "2", "[x1^3]")
    assert code == 0
    assert out == "[6*x1*v1*w1]\n"


def test_partial_output(capsys):
    code, out, _ = run(capsys, "partial", "--i", "1", "[x1*x2]")
    assert code == 0
    assert out == "[x2*v1]\n"


def test_faa_compose_output(capsys):
    code, out, _ = run(capsys, "faa-compose", "[x1^2]", "[x1^3]")
    assert code == 0
    assert out.splitlines() == [
        "component 0: [x1^6]",
        "component 1: [6*x1^5*v1]",
        "component 2: [30*x1^4*v1*w1]",
        "component 3: [120*x1^3*v1*w1*u31]",
    ]


def test_explicit_arity(capsys):
    code, out, _ = run(capsys, "diff", "--arity", "2", "[x1]")
    assert code == 0
    assert out == "[v1]\n"


def test_rig_flag(capsys):
    code, out, _ = run(capsys, "diff", "--rig", "zmod:3", "[x1^3]")
    assert code == 0
    assert out == "[0]\n"


def test_parse_error_exit_code_and_hint(capsys):
    code, out, err = run(capsys, "diff", "[x1 +]")
    assert code == 2
    assert "parse error" in err
    assert "expected: '[' poly (';' poly)* ']'" in err


def test_nat_rig_rejects_minus(capsys):
    code, _, err = run(capsys, "diff", "--rig", "nat", "[x1 - x1]")
    assert code == 2
    assert "error" in err


def test_unknown_verb_exit_code(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_unknown_rig(capsys):
    code, _, err = run(capsys, "diff", "--rig", "gf256", "[x1]")
    assert code == 2


def test_help_mentions_variable_naming(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "v1" in out and "w" in out


def test_check_cdc_single_rig(capsys):
    code, out, _ = run(capsys, "check", "cdc", "--rig", "int", "--samples", "10")
    assert code == 0
    assert "[PASS]" in out
    assert "result: all passed" in out


def test_check_cdc_merges_all_rigs(capsys):
    code, out, _ = run(capsys, "check", "cdc", "--samples", "3")
    assert code == 0
    for prefix in ("nat:", "int:", "rat:", "zmod:5:"):
        assert prefix in out


def test_json_report_is_deterministic(capsys):
    args = ["check", "cdc", "--rig", "int", "--samples", "5", "--json"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["passed"] is True
    assert {c["status"] for c in payload["checks"]} == {"pass"}


def test_failing_suite_exits_one(capsys, monkeypatch):
    broken = Report("modality", {})
    broken.add("made-up-law", False, 1, "witness")

    monkeypatch.setattr(cli.suites, "modality_suite",
                        lambda *a, **k: broken)
    code, out, _ = run(capsys, "check", "modality")
    assert code == 1
    assert "[FAIL]" in out
    assert "witness" in out


def test_kleisli_check_small(capsys):
    code, out, _ = run(capsys, "check", "kleisli-iso", "--dim", "1", "--degree", "2")
    assert code == 0
    assert "compose-matches-faa-exhaustive-dim1" in out
