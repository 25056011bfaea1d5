import json

import pytest

from pseudocalc import cli


def run_cli(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_builtin_ok(capsys):
    code, out, _ = run_cli(capsys, ["validate", "--generator", "power:2"])
    assert code == 0
    assert "all checks passed" in out


def test_validate_reports_direction(capsys):
    code, out, _ = run_cli(capsys, ["validate", "--generator", "neglog"])
    assert code == 0
    assert "decreasing" in out


def test_validate_failing_generator_file(tmp_path, capsys):
    doc = {
        "name": "bad",
        "g": "-ln(x)",
        "domain": {"lo": 0.0, "hi": 1.0, "lo_open": True},
        "direction": "increasing",
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, ["validate", "--generator-file", str(path)])
    assert code == 1
    assert "strict_monotonicity" in out


def test_validate_malformed_file_is_config_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run_cli(capsys, ["validate", "--generator-file", str(path)])
    assert code == 2
    assert "error" in err


def test_integrate_g_flavor(capsys):
    code, out, _ = run_cli(
        capsys,
        ["integrate", "--generator", "power:2", "--f", "x", "--from", "0", "--to", "1",
         "--flavor", "g"],
    )
    assert code == 0
    assert "0.707106781187" in out


def test_integrate_oplus(capsys):
    code, out, _ = run_cli(
        capsys,
        ["integrate", "--generator", "identity", "--f", "x^2", "--from", "0", "--to", "1",
         "--flavor", "oplus"],
    )
    assert code == 0
    assert "0.333333333333" in out


def test_integrate_gh_matches_g(capsys):
    code, out, _ = run_cli(
        capsys,
        ["integrate", "--generator", "power:2", "--f", "x", "--from", "0", "--to", "1",
         "--flavor", "gh", "--h", "2*x"],
    )
    assert code == 0
    assert "0.707106781187" in out


def test_integrate_parse_error_exit_1(capsys):
    code, _, err = run_cli(
        capsys,
        ["integrate", "--generator", "power:2", "--f", "2*+x", "--from", "0", "--to", "1"],
    )
    assert code == 1
    assert "offset 2" in err


def test_integrate_quadrature_failure_exit_3(capsys):
    code, _, err = run_cli(
        capsys,
        ["integrate", "--generator", "identity", "--f", "exp(x)", "--from", "0", "--to", "1",
         "--max-depth", "1", "--rel-tol", "1e-15", "--abs-tol", "1e-16"],
    )
    assert code == 3
    assert "DepthExceeded" in err


def test_integrate_json_format(capsys):
    code, out, _ = run_cli(
        capsys,
        ["integrate", "--generator", "identity", "--f", "x", "--from", "0", "--to", "2",
         "--format", "json"],
    )
    assert code == 0
    body = json.loads(out)
    assert body["raw"] == pytest.approx(2.0, rel=1e-9)
    assert body["generator"] == "identity"


def test_derive(capsys):
    code, out, _ = run_cli(
        capsys,
        ["derive", "--generator", "identity", "--f", "x^2", "--x", "3", "--format", "json"],
    )
    assert code == 0
    assert json.loads(out)["raw"] == pytest.approx(6.0, rel=1e-7)


def test_eval_cmp(capsys):
    code, out, _ = run_cli(
        capsys, ["eval", "--generator", "neglog", "--op", "cmp", "--x", "0.2", "--y", "0.3"]
    )
    assert code == 0
    assert out.strip() == "less_g"


def test_eval_division_by_zero_is_config_error(capsys):
    code, _, err = run_cli(
        capsys, ["eval", "--generator", "power:2", "--op", "div", "--x", "1", "--y", "0"]
    )
    assert code == 2
    assert "DivisionByZeroG" in err


def _write_young_suite(tmp_path):
    suite = {
        "schema_version": 1,
        "items": [
            {
                "inequality": "young",
                "generator": "identity",
                "params": {"b": 1.0},
                "grid": {"p": [1.5, 2.0, 3.0], "a": [0.5, 1.0, 2.0]},
            }
        ],
    }
    path = tmp_path / "young.json"
    path.write_text(json.dumps(suite))
    return path


def test_check_suite_exit_0_and_csv_columns(tmp_path, capsys):
    path = _write_young_suite(tmp_path)
    code, out, _ = run_cli(capsys, ["check", "--suite", str(path), "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "name,generator,direction,p,q,r,t,lambda,lhs_img,rhs_img,margin,holds"
    assert len(lines) == 10  # header + 9 verdicts
    assert all(line.endswith("true") for line in lines[1:])


def test_check_failing_verdict_exit_1(tmp_path, capsys):
    suite = {
        "items": [
            {
                "inequality": "hermite_hadamard",
                "generator": "identity",
                "functions": {"f": "sqrt(x)"},  # concave: convex chain fails
                "interval": [0, 1],
            }
        ]
    }
    path = tmp_path / "failing.json"
    path.write_text(json.dumps(suite))
    code, out, _ = run_cli(capsys, ["check", "--suite", str(path)])
    assert code == 1
    assert "0/1 hold" in out


def test_check_malformed_expression_exit_2(tmp_path, capsys):
    suite = {
        "items": [
            {
                "inequality": "holder",
                "generator": "identity",
                "functions": {"f": "2*+x", "h": "x"},
                "interval": [0, 1],
                "params": {"p": 2.0},
            }
        ]
    }
    path = tmp_path / "malformed.json"
    path.write_text(json.dumps(suite))
    code, _, err = run_cli(capsys, ["check", "--suite", str(path)])
    assert code == 2
    assert "offset 2" in err


def test_check_inline_item(capsys):
    code, out, _ = run_cli(
        capsys,
        ["check", "--inequality", "young", "--generator", "identity",
         "--param", "a=1", "--param", "b=2", "--param", "p=2"],
    )
    assert code == 0
    assert "1/1 hold" in out


def test_check_needs_suite_or_inline(capsys):
    code, _, err = run_cli(capsys, ["check"])
    assert code == 2


def test_check_deterministic_bytes(tmp_path, capsys):
    path = _write_young_suite(tmp_path)
    argv = ["check", "--suite", str(path), "--format", "json", "--seed", "3"]
    code1, out1, _ = run_cli(capsys, argv)
    code2, out2, _ = run_cli(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_sweep_csv_and_determinism(capsys):
    argv = [
        "sweep", "--generator", "identity", "--inequality", "young",
        "--range", "p=1.1:4:10", "--param", "a=1", "--param", "b=2",
    ]
    code1, out1, _ = run_cli(capsys, argv)
    code2, out2, _ = run_cli(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2
    lines = out1.strip().splitlines()
    header = "name,generator,direction,p,q,r,t,lambda,lhs_img,rhs_img,margin,holds,error"
    assert lines[0] == header
    assert len(lines) == 11


def test_sweep_zero_steps_exit_2(capsys):
    code, _, err = run_cli(
        capsys,
        ["sweep", "--generator", "identity", "--inequality", "young",
         "--range", "p=1:2:0", "--param", "a=1", "--param", "b=2"],
    )
    assert code == 2


def test_sweep_unknown_inequality_exit_2(capsys):
    code, _, err = run_cli(
        capsys,
        ["sweep", "--generator", "identity", "--inequality", "banach", "--range", "p=1.5:2:2"],
    )
    assert code == 2
    assert "UnknownInequality" in err


def test_sweep_row_errors_keep_exit_0(capsys):
    code, out, _ = run_cli(
        capsys,
        ["sweep", "--generator", "identity", "--inequality", "young",
         "--range", "p=0.5:1.5:3", "--param", "a=1", "--param", "b=2"],
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert any("ParameterError" in line for line in lines)  # the p=1 row


def test_exactly_one_generator_source(tmp_path, capsys):
    doc = {
        "name": "id2",
        "g": "x",
        "g_inv": "x",
        "domain": {"lo": 0.0, "hi": None, "hi_open": True},
        "direction": "increasing",
    }
    path = tmp_path / "gen.json"
    path.write_text(json.dumps(doc))
    code, _, err = run_cli(
        capsys,
        ["validate", "--generator", "identity", "--generator-file", str(path)],
    )
    assert code == 2
    assert "exactly one generator source" in err


def test_server_dispatch_roundtrip(monkeypatch, capsys):
    from fastapi.testclient import TestClient

    from pseudocalc.service.app import app

    client = TestClient(app)

    def fake_post(url, json=None, timeout=None):
        return client.post(url.replace("http://fake", ""), json=json)

    import httpx

    monkeypatch.setattr(httpx, "post", fake_post)
    code, out, _ = run_cli(
        capsys,
        ["eval", "--generator", "power:2", "--op", "add", "--x", "3", "--y", "4",
         "--server", "http://fake", "--format", "json"],
    )
    assert code == 0
    assert json.loads(out)["raw"] == pytest.approx(5.0)
    # a remote parse error keeps the local exit-code contract
    code, _, err = run_cli(
        capsys,
        ["integrate", "--generator", "power:2", "--f", "2*+x", "--from", "0", "--to", "1",
         "--server", "http://fake"],
    )
    assert code == 1
    assert "offset 2" in err


def test_env_var_overrides_rel_tol(monkeypatch):
    monkeypatch.setenv("PSEUDOCALC_QUAD_TOL", "1e-6")
    args = cli.build_parser().parse_args(
        ["integrate", "--generator", "identity", "--f", "x", "--from", "0", "--to", "1"]
    )
    assert cli._quadrature(args).rel_tol == 1e-6
    # explicit flag wins
    args = cli.build_parser().parse_args(
        ["integrate", "--generator", "identity", "--f", "x", "--from", "0", "--to", "1",
         "--rel-tol", "1e-9"]
    )
    assert cli._quadrature(args).rel_tol == 1e-9


def test_custom_generator_file_roundtrip(tmp_path, capsys):
    doc = {
        "name": "neglog-json",
        "g": "-ln(x)",
        "g_inv": "exp(-x)",
        "g_prime": "-1/x",
        "domain": {"lo": 0.0, "hi": 1.0, "lo_open": True},
        "direction": "decreasing",
    }
    path = tmp_path / "neglog.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(
        capsys,
        ["integrate", "--generator-file", str(path), "--f", "0.5", "--from", "0.2",
         "--to", "0.9", "--flavor", "oplus", "--format", "json"],
    )
    assert code == 0
    assert json.loads(out)["generator"] == "neglog-json"
