import json
import subprocess
import sys

import pytest

from teamlogic.cli import main
from teamlogic.jsonio import load_model


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "teamlogic.cli", *argv],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


class TestEval:
    def test_sig_nosig_false(self):
        code, out, _ = run_cli("check", "--model", "builtin:sig", "--property", "no-sig")
        assert code == 0 and "false" in out

    def test_empty_team_dep_true(self, tmp_path):
        team = tmp_path / "empty.json"
        team.write_text('{"domain": ["x", "y"], "rows": []}')
        code, out, _ = run_cli("eval", "--team", str(team), "--formula", "dep(x, y)")
        assert code == 0 and "true" in out

    def test_prob_eval(self):
        code, out, _ = run_cli(
            "eval", "--team", "builtin:pt1", "--formula", "z _||_{x y} w", "--prob")
        assert code == 0 and "false" in out

    def test_malformed_json_is_input_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        code, _, err = run_cli("eval", "--team", str(bad), "--formula", "dep(x, y)")
        assert code == 2 and "error" in err

    def test_parse_error_is_input_error(self):
        code, _, err = run_cli("eval", "--team", "builtin:rt2", "--formula", "dep(")
        assert code == 2

    def test_budget_error_exit_code(self, tmp_path):
        team = tmp_path / "t.json"
        team.write_text(json.dumps({
            "domain": ["x"],
            "rows": [[i] for i in range(8)],
        }))
        code, _, err = run_cli(
            "eval", "--team", str(team),
            "--formula", "A a . A b . A c . dep(a b c, x)",
            "--budget", "50")
        assert code == 3 and "budget" in err.lower()


class TestNogo:
    def test_hardy_verdict(self):
        code, out, _ = run_cli("nogo", "hardy")
        assert code == 0
        assert "StrongDet & lambda-indep model exists: False" in out

    def test_exists_on_ex22(self):
        code, out, _ = run_cli(
            "nogo", "exists", "--model", "builtin:ex22", "--target", "strong-det+lambda")
        assert code == 0 and "exists with 2 hidden values" in out

    def test_ks_json(self):
        code, out, _ = run_cli("nogo", "ks", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["ok"] and not payload["colorable"]


class TestConstruct:
    def test_construct_roundtrip(self, tmp_path):
        out_file = tmp_path / "hv.json"
        code, out, _ = run_cli(
            "construct", "--model", "builtin:ex22",
            "--target", "weakdet-lambda-indep", "--out", str(out_file))
        assert code == 0
        model = load_model(out_file)
        from teamlogic.properties import PropertyName, check_property

        assert check_property(model, PropertyName.WEAK_DET_H)
        assert check_property(model, PropertyName.LAMBDA_INDEP_H)

    def test_localize_requires_hidden(self):
        code, _, err = run_cli(
            "construct", "--model", "builtin:ex22", "--target", "localize", "--out", "-")
        assert code == 2

    def test_localize_precondition_failure(self):
        code, _, err = run_cli(
            "construct", "--model", "builtin:loc6", "--target", "localize", "--out", "-")
        assert code == 2 and "Locality" in err


class TestVerifySuites:
    def test_separations_suite(self):
        code, out, _ = run_cli("verify", "--suite", "separations")
        assert code == 0 and "suite separations: PASS" in out

    def test_fig1_small(self):
        code, out, _ = run_cli("verify", "--suite", "fig1", "--samples", "25", "--seed", "7")
        assert code == 0 and "25 ok, 0 failures" in out

    def test_ks_suite_json(self):
        code, out, _ = run_cli("verify", "--suite", "ks", "--json")
        assert code == 0 and json.loads(out)["ok"]

    def test_appendix_suite(self):
        code, out, _ = run_cli("verify", "--suite", "appendix")
        assert code == 0 and "suite appendix: PASS" in out

    def test_entailments_suite(self):
        code, out, _ = run_cli("verify", "--suite", "entailments", "--json")
        assert code == 0 and json.loads(out)["ok"]


class TestDeterminism:
    COMMANDS = (
        ("check", "--model", "builtin:loc6", "--property", "locality", "--json"),
        ("nogo", "hardy", "--json"),
        ("nogo", "ks", "--json"),
        ("eval", "--team", "builtin:pt1", "--formula", "z _||_{x} w", "--prob", "--json"),
        ("entail", "--lhs", "dep(m1 l, o1)", "--rhs", "dep(m1, o1)",
         "--vars", "m1", "o1", "l", "--json"),
        ("verify", "--suite", "fig1", "--samples", "20", "--seed", "3", "--json"),
        ("construct", "--model", "builtin:ex22", "--target", "strong-det", "--out", "-"),
    )

    @pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
    def test_byte_identical_across_runs(self, argv):
        first = run_cli(*argv)
        second = run_cli(*argv)
        assert first == second
        assert first[0] == 0

    def test_in_process_matches_subprocess(self, capsys):
        code = main(["check", "--model", "builtin:sig", "--property", "weak-det", "--json"])
        in_process = capsys.readouterr().out
        _, out, _ = run_cli("check", "--model", "builtin:sig", "--property", "weak-det", "--json")
        assert code == 0 and in_process == out
