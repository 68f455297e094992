import json

from click.testing import CliRunner

from hplane.cli import cli


def run(*args):
    return CliRunner().invoke(cli, args)


def test_normalize_mixed_relation():
    result = run("normalize", "theta*x")
    assert result.exit_code == 0
    assert result.output.strip() == "h*y*theta + h*hp*y*phi + x*theta - h*x*phi"


def test_normalize_with_substitution():
    result = run("normalize", "x*y - y*x", "--subst", "hp=0")
    assert result.exit_code == 0
    assert result.output.strip() == "0"


def test_normalize_minus_h_substitution():
    result = run("normalize", "h + hp", "--subst", "hp=-h")
    assert result.exit_code == 0
    assert result.output.strip() == "0"


def test_normalize_derivative_relation():
    result = run("normalize", "pph*phi")
    assert result.exit_code == 0
    assert result.output.strip() == "1 + hp*phi*pth - phi*pph"


def test_normalize_json_format():
    result = run("normalize", "phi*theta", "--format", "json")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["version"] == 1


def test_parse_error_exits_2():
    result = run("normalize", "theta*")
    assert result.exit_code == 2


def test_bad_substitution_exits_2():
    assert run("normalize", "theta", "--subst", "q=1").exit_code == 2
    assert run("normalize", "theta", "--subst", "h=theta").exit_code == 2
    assert run("normalize", "theta", "--subst", "h=h+1").exit_code == 2


def test_verify_unknown_suite_exits_2():
    assert run("verify", "--suite", "nonsense").exit_code == 2


def test_verify_fast_suites_pass():
    for suite in ("rmatrix", "limits"):
        result = run("verify", "--suite", suite)
        assert result.exit_code == 0, result.output
        assert "FAIL" not in result.output


def test_verify_negative_control_exits_1():
    result = run("verify", "--suite", "rmatrix", "--negative-control")
    assert result.exit_code == 1
    assert "FAIL" in result.output


def test_verify_json_report_schema_and_determinism():
    first = run("verify", "--suite", "rmatrix", "--json")
    second = run("verify", "--suite", "rmatrix", "--json")
    assert first.exit_code == 0
    assert first.output == second.output
    payload = json.loads(first.output)
    assert payload["suite"] == "rmatrix"
    assert payload["pass"] is True
    for check in payload["checks"]:
        assert set(check) == {"name", "pass", "residual"}
    names = [c["name"] for c in payload["checks"]]
    assert names == sorted(names)


def test_matrix_t_zero():
    result = run("matrix", "--t", "0")
    assert result.exit_code == 0
    lines = [l for l in result.output.splitlines() if l.strip()]
    assert len(lines) == 4
    assert "-h" in result.output and "h*hp" in result.output


def test_matrix_t_one_is_identity():
    result = run("matrix", "--t", "1")
    assert result.exit_code == 0
    assert "h" not in result.output.replace("hp", "")


def test_matrix_latex():
    result = run("matrix", "--t", "0", "--format", "latex")
    assert result.exit_code == 0
    assert "\\begin{array}" in result.output


def test_matrix_bad_rational_exits_2():
    assert run("matrix", "--t", "1/0").exit_code == 2
    assert run("matrix", "--t", "abc").exit_code == 2


def test_derive_phase_space():
    result = run("derive", "phase-space")
    assert result.exit_code == 0
    assert len(result.output.strip().splitlines()) == 10
    assert "1/2*(h + hp)" in result.output


def test_derive_minus_h():
    result = run("derive", "phase-space", "--hprime", "minus-h")
    assert result.exit_code == 0
    assert "hp" not in result.output
    assert "Pp^2 = h*Pp*Pt" in result.output


def test_derive_equal_h():
    result = run("derive", "phase-space", "--hprime", "equal-h")
    assert result.exit_code == 0
    assert "hp" not in result.output


def test_derive_unknown_target_exits_2():
    assert run("derive", "momentum-map").exit_code == 2


def test_derive_json():
    result = run("derive", "phase-space", "--format", "json")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert len(payload) == 10
    assert all(item["residual"] == "0" for item in payload)
