import json
import subprocess
import sys

import jsonschema
import pytest

from hermite5.cli import main, verify_all

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "p", "modulus", "point", "element", "minpoly",
                 "c_pattern_ok", "primitive_ok", "on_surface_ok"],
    "properties": {
        "schema": {"const": 1},
        "p": {"type": "integer"},
        "modulus": {"type": "string"},
        "point": {"type": "array", "items": {"type": "integer"}, "minItems": 5, "maxItems": 5},
        "element": {"type": "string"},
        "minpoly": {"type": "string"},
        "c_pattern_ok": {"type": "boolean"},
        "primitive_ok": {"type": "boolean"},
        "on_surface_ok": {"type": "boolean"},
        "elapsed_ms": {"type": "number"},
    },
}

SUMMARY_SCHEMA = {
    "type": "object",
    "required": ["schema", "p", "expected", "tested", "succeeded", "failed", "count_ok", "digest"],
    "properties": {
        "schema": {"const": 1},
        "tested": {"type": "integer"},
        "succeeded": {"type": "integer"},
        "failed": {"type": "array", "items": {"type": "string"}},
        "count_ok": {"type": "boolean"},
        "digest": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
    },
}

DESCENT_SCHEMA = {
    "type": "object",
    "required": ["schema", "outcome", "point"],
    "properties": {
        "schema": {"const": 1},
        "outcome": {"enum": ["descended", "already_rational", "line_on_surface", "tangent_secant"]},
        "point": {"anyOf": [{"type": "null"},
                            {"type": "array", "items": {"type": "integer"}, "minItems": 4, "maxItems": 4}]},
    },
}

DIAG_SCHEMA = {
    "type": "object",
    "required": ["schema", "p", "modulus", "trivial_point", "warnings"],
    "properties": {
        "trivial_point": {
            "type": "object",
            "required": ["on_system", "c_values"],
            "properties": {"on_system": {"type": "boolean"}},
        },
        "singular_scan": {"type": "object", "required": ["maxdeg", "points"]},
        "counts": {"type": "object", "required": ["affine", "projective", "relation_ok", "congruence_ok"]},
        "warnings": {"type": "array", "items": {"type": "string"}},
    },
}

DEMO = ["descend", "--p", "7", "--surface", "x0^3 + x1^3 + x2^3 + x3^3", "--point", "1; w+2; 3*w; 3*w+5"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestSolve:
    def test_json_report(self, capsys):
        code, out = run(capsys, "solve", "--p", "2", "--modulus", "x^5+x^2+1", "--format", "json")
        assert code == 0
        d = json.loads(out)
        jsonschema.validate(d, REPORT_SCHEMA)
        assert d["minpoly"] == "x^5 + x^3 + 1"

    def test_reducible_exit_2(self, capsys):
        assert run(capsys, "solve", "--p", "7", "--modulus", "x^5+1")[0] == 2

    def test_composite_p_exit_64(self, capsys):
        assert run(capsys, "solve", "--p", "4", "--modulus", "x^5+1")[0] == 64

    def test_bad_degree_exit_64(self, capsys):
        assert run(capsys, "solve", "--p", "7", "--modulus", "x^3+x+1")[0] == 64

    def test_default_modulus_and_text(self, capsys):
        code, out = run(capsys, "solve", "--p", "3", "--format", "text")
        assert code == 0
        assert "minpoly" in out and "x^5 + 2*x + 1" in out

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "r.json"
        code, out = run(capsys, "solve", "--p", "2", "--no-timing", "--out", str(path))
        assert code == 0
        assert json.loads(path.read_text(encoding="utf-8")) == json.loads(out)

    def test_deterministic(self, capsys):
        a = run(capsys, "solve", "--p", "7", "--no-timing")[1]
        b = run(capsys, "solve", "--p", "7", "--no-timing")[1]
        assert a == b


class TestVerifyAll:
    @pytest.mark.parametrize("p,count", [(2, 6), (3, 48)])
    def test_counts(self, capsys, p, count):
        code, out = run(capsys, "verify-all", "--p", str(p))
        assert code == 0
        d = json.loads(out)
        jsonschema.validate(d, SUMMARY_SCHEMA)
        assert d["tested"] == d["succeeded"] == d["expected"] == count
        assert d["failed"] == []

    def test_budget_exit_4(self, capsys):
        assert run(capsys, "verify-all", "--p", "11")[0] == 4
        assert run(capsys, "verify-all", "--p", "3", "--budget", "100")[0] == 4

    def test_env_budget_override(self, capsys, monkeypatch):
        monkeypatch.setenv("HERMITE_BUDGET", "100")
        assert run(capsys, "verify-all", "--p", "3", "--budget", "100000000")[0] == 4
        monkeypatch.setenv("HERMITE_BUDGET", "lots")
        assert run(capsys, "verify-all", "--p", "3")[0] == 64

    def test_jobs_same_output(self):
        assert verify_all(3, jobs=1) == verify_all(3, jobs=2)

    def test_text(self, capsys):
        code, out = run(capsys, "verify-all", "--p", "2", "--format", "text")
        assert code == 0 and "tested 6" in out


class TestDescend:
    def test_demo_descends(self, capsys):
        code, out = run(capsys, *DEMO)
        assert code == 0
        d = json.loads(out)
        jsonschema.validate(d, DESCENT_SCHEMA)
        assert d["outcome"] == "descended" and d["point"] == [1, 3, 3, 1]

    def test_rational(self, capsys):
        code, out = run(capsys, "descend", "--p", "7", "--surface", "x0^3+x1^3+x2^3+x3^3", "--point", "1;6;0;0")
        assert code == 0 and json.loads(out)["outcome"] == "already_rational"

    def test_off_surface_exit_2(self, capsys):
        code, _ = run(capsys, "descend", "--p", "7", "--surface", "x0^3+x1^3+x2^3+x3^3", "--point", "1;1;1;w")
        assert code == 2

    def test_line_exit_5(self, capsys):
        code, out = run(capsys, "descend", "--p", "7", "--surface", "x0^3+x1^3+x2^3+x3^3", "--point", "1;6;w;6*w")
        assert code == 5
        jsonschema.validate(json.loads(out), DESCENT_SCHEMA)

    def test_line_through_conjugates_exit_5(self, capsys):
        # x2 = x3 = 0 lies on the surface, and so does the conjugate secant through (1 : w : 0 : 0)
        surface = "x0^2*x2 + x1^2*x2 + x2^3 + x3^3"
        code, out = run(capsys, "descend", "--p", "3", "--surface", surface, "--point", "1;w;0;0")
        d = json.loads(out)
        assert d["outcome"] == "line_on_surface" and d["point"] is None
        assert code == 5

    def test_json_surface_and_file(self, capsys, tmp_path):
        from hermite5.forms import parse_form
        obj = parse_form("x0^3 + x1^3 + x2^3 + x3^3", 7, 4).to_json()
        path = tmp_path / "s.json"
        path.write_text(json.dumps(obj), encoding="utf-8")
        argv = list(DEMO)
        argv[argv.index("--surface") + 1] = "@" + str(path)
        assert run(capsys, *argv)[0] == 0
        argv[argv.index("--surface") + 1] = json.dumps(obj)
        assert run(capsys, *argv)[0] == 0

    def test_bad_point_usage(self, capsys):
        assert run(capsys, "descend", "--p", "7", "--surface", "x0^3", "--point", "1;2")[0] == 64


class TestDiag:
    def test_char5(self, capsys):
        code, out = run(capsys, "diag", "--p", "5", "--maxdeg", "1")
        d = json.loads(out)
        jsonschema.validate(d, DIAG_SCHEMA)
        assert code == 0 and d["trivial_point"]["on_system"] is True

    def test_char7(self, capsys):
        code, out = run(capsys, "diag", "--p", "7", "--maxdeg", "1")
        d = json.loads(out)
        assert code == 0 and d["trivial_point"]["on_system"] is False
        assert d["trivial_point"]["c_values"][:3] == [2, 3, 4]

    def test_p2_congruence(self, capsys):
        code, out = run(capsys, "diag", "--p", "2", "--modulus", "x^5+x^2+1")
        d = json.loads(out)
        jsonschema.validate(d, DIAG_SCHEMA)
        assert d["counts"] == {"affine": 6, "projective": 5, "relation_ok": True, "congruence_ok": True}
        assert d["singular_scan"]["points"] == []

    def test_budget_warning(self, capsys):
        code, out = run(capsys, "diag", "--p", "7", "--budget", "1000")
        d = json.loads(out)
        assert code == 0
        assert "counts" not in d and "singular_scan" not in d
        assert len(d["warnings"]) == 2

    def test_reducible(self, capsys):
        assert run(capsys, "diag", "--p", "7", "--modulus", "x^5+1")[0] == 2


def test_usage_errors(capsys):
    assert run_exit(["bogus"]) == 64
    assert run_exit(["solve"]) == 64
    assert run_exit(["solve", "--p", "7", "--format", "xml"]) == 64


def run_exit(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    return exc.value.code


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hermite5", "solve", "--p", "2", "--no-timing"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    jsonschema.validate(json.loads(proc.stdout), REPORT_SCHEMA)


class TestInjectedFailures:
    """Exit paths that no real modulus reaches, driven through a patched pipeline."""

    def test_no_point_exit_3(self, capsys, monkeypatch):
        import hermite5.cli as cli

        def boom(p, f):
            raise cli.NoPointFound("empty")
        monkeypatch.setattr(cli, "hermite_pipeline", boom)
        assert run(capsys, "solve", "--p", "7")[0] == 3

    def test_failed_verdict_exit_1(self, capsys, monkeypatch):
        import dataclasses
        import hermite5.cli as cli
        real = cli.hermite_pipeline
        monkeypatch.setattr(cli, "hermite_pipeline",
                            lambda p, f: dataclasses.replace(real(p, f), primitive_ok=False))
        code, out = run(capsys, "solve", "--p", "7", "--no-timing")
        assert code == 1
        assert json.loads(out)["primitive_ok"] is False

    def test_verify_all_failure_exit_1(self, capsys, monkeypatch):
        import hermite5.cli as cli
        real = cli._solve_one

        def flaky(args):
            r = real(args)
            if args[1] == (1, 0, 1, 0, 0, 1):
                r["on_surface_ok"] = False
            return r
        monkeypatch.setattr(cli, "_solve_one", flaky)
        code, out = run(capsys, "verify-all", "--p", "2")
        assert code == 1
        assert json.loads(out)["failed"] == ["x^5 + x^2 + 1"]
