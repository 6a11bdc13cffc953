import json
import os
import subprocess
import sys

import pytest

from qgamma.qcore import QParam
from qgamma.qspecial import psi_q


def run_cli(*args, env_extra=None):
    env = os.environ.copy()
    env.pop("QGAMMA_MAX_TERMS", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "qgamma.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def parse_plain(stdout):
    out = {}
    for line in stdout.strip().splitlines():
        key, _, value = line.partition(": ")
        out[key] = value
    return out


class TestEval:
    def test_gamma_q_integer_point(self):
        res = run_cli("eval", "--fn", "gamma_q", "--x", "3", "--q", "0.5")
        assert res.returncode == 0
        fields = parse_plain(res.stdout)
        assert float(fields["value"]) == pytest.approx(1.5, rel=1e-12)
        assert int(fields["terms_used"]) > 0

    def test_psi_q_value(self):
        res = run_cli("eval", "--fn", "psi_q", "--x", "1", "--q", "0.5")
        assert res.returncode == 0
        assert float(parse_plain(res.stdout)["value"]) == pytest.approx(-0.42052903435604578, abs=1e-12)

    def test_classical_functions(self):
        res = run_cli("eval", "--fn", "gamma", "--x", "5")
        assert float(parse_plain(res.stdout)["value"]) == pytest.approx(24.0, rel=1e-7)
        res = run_cli("eval", "--fn", "psi", "--x", "1")
        assert float(parse_plain(res.stdout)["value"]) == pytest.approx(-0.5772156649015329, abs=1e-9)

    def test_psi_q_m_requires_m(self):
        res = run_cli("eval", "--fn", "psi_q_m", "--x", "2", "--q", "0.5", "--m", "2")
        assert res.returncode == 0
        assert float(parse_plain(res.stdout)["value"]) < 0

    def test_domain_rejection_exits_2(self):
        res = run_cli("eval", "--fn", "gamma_q", "--x", "-1", "--q", "0.5")
        assert res.returncode == 2
        assert "error" in res.stderr

    def test_bad_function_exits_2(self):
        res = run_cli("eval", "--fn", "zeta", "--x", "1", "--q", "0.5")
        assert res.returncode == 2

    def test_round_trip_17_digits(self):
        res = run_cli("eval", "--fn", "psi_q", "--x", "1.7", "--q", "0.37")
        printed = float(parse_plain(res.stdout)["value"])
        assert printed == psi_q(1.7, QParam(0.37)).value

    def test_json_format_matches_plain(self):
        plain = parse_plain(run_cli("eval", "--fn", "psi_q", "--x", "2", "--q", "0.5").stdout)
        blob = json.loads(run_cli("eval", "--fn", "psi_q", "--x", "2", "--q", "0.5",
                                  "--format", "json").stdout)
        assert float(plain["value"]) == blob["value"]

    def test_env_max_terms_causes_non_convergence(self):
        res = run_cli("eval", "--fn", "psi_q", "--x", "0.5", "--q", "0.9",
                      env_extra={"QGAMMA_MAX_TERMS": "5"})
        assert res.returncode == 3

    def test_flag_beats_env(self):
        res = run_cli("eval", "--fn", "psi_q", "--x", "0.5", "--q", "0.9",
                      "--max-terms", "100000", env_extra={"QGAMMA_MAX_TERMS": "5"})
        assert res.returncode == 0


class TestBounds:
    def test_satisfied_point(self):
        res = run_cli("bounds", "--ineq", "thm_mvt", "--x", "2", "--y", "1", "--q", "0.5")
        assert res.returncode == 0
        fields = parse_plain(res.stdout)
        assert fields["satisfied"] == "True"
        assert float(fields["lower"]) <= float(fields["ratio"]) <= float(fields["upper"])

    def test_domain_violation_exits_2(self):
        res = run_cli("bounds", "--ineq", "thm_mvt", "--x", "1", "--y", "2", "--q", "0.5")
        assert res.returncode == 2

    def test_force_allows_out_of_domain(self):
        res = run_cli("bounds", "--ineq", "thm_mvt", "--x", "1", "--y", "2", "--q", "0.5", "--force")
        assert res.returncode == 0

    def test_alpha_collapse_point(self):
        res = run_cli("bounds", "--ineq", "thm_alpha", "--x", "1", "--y", "1",
                      "--alpha", "5", "--q", "0.5")
        fields = parse_plain(res.stdout)
        assert float(fields["lower"]) == float(fields["ratio"]) == float(fields["upper"]) == 1.0

    def test_alpha_below_root_exits_2(self):
        res = run_cli("bounds", "--ineq", "thm_alpha", "--x", "1", "--y", "2",
                      "--alpha", "0.3", "--q", "0.5")
        assert res.returncode == 2

    def test_missing_argument_exits_2(self):
        res = run_cli("bounds", "--ineq", "thm_mvt", "--x", "2", "--q", "0.5")
        assert res.returncode == 2


class TestVerify:
    def test_single_inequality_passes(self):
        res = run_cli("verify", "--ineq", "thm_mvt", "--samples", "150", "--seed", "7")
        assert res.returncode == 0
        assert "n_samples: 150" in res.stdout
        assert "n_pass: 150" in res.stdout

    def test_json_reports(self):
        res = run_cli("verify", "--ineq", "thm_main", "--samples", "50", "--seed", "3",
                      "--format", "json")
        reports = json.loads(res.stdout)
        assert len(reports) == 1
        assert reports[0]["inequality_id"] == "thm_main"
        assert reports[0]["n_pass"] == 50
        assert reports[0]["schema_version"] == 1

    def test_corrupted_bounds_self_test(self):
        res = run_cli("verify", "--ineq", "thm_mvt", "--samples", "100", "--seed", "7",
                      "--corrupt-bounds", "--format", "json")
        assert res.returncode == 1
        report = json.loads(res.stdout)[0]
        assert report["n_pass"] < report["n_samples"]
        assert len(report["failures"]) > 0

    def test_unknown_id_exits_2(self):
        res = run_cli("verify", "--ineq", "thm_nonexistent", "--samples", "10")
        assert res.returncode == 2

    def test_all_runs_every_registered_check(self):
        from qgamma.propcheck import ALL_CHECK_IDS

        res = run_cli("verify", "--ineq", "all", "--samples", "20", "--seed", "5",
                      "--format", "json")
        assert res.returncode == 0
        seen = [r["inequality_id"] for r in json.loads(res.stdout)]
        assert seen == list(ALL_CHECK_IDS)


class TestRoot:
    def test_reference_root(self):
        res = run_cli("root", "--q", "0.5")
        assert res.returncode == 0
        fields = parse_plain(res.stdout)
        root = float(fields["root"])
        assert 1.0 < root < 2.0
        assert abs(float(fields["residual"])) <= 1e-10

    def test_bad_q_exits_2(self):
        assert run_cli("root", "--q", "1.5").returncode == 2


class TestTable:
    def test_row_count_and_header(self):
        res = run_cli("table", "--ineq", "cor_one_half", "--var", "x",
                      "--min", "0.1", "--max", "5", "--steps", "3", "--q", "0.5")
        assert res.returncode == 0
        lines = res.stdout.strip().split("\n")
        assert lines[0] == "x,lower,ratio,upper,lower_margin,upper_margin"
        assert len(lines) == 4

    def test_rows_satisfy_bounds(self):
        res = run_cli("table", "--ineq", "cor_one_half", "--var", "x",
                      "--min", "0.1", "--max", "5", "--steps", "8", "--q", "0.5")
        for line in res.stdout.strip().split("\n")[1:]:
            _, lower, ratio, upper, *_ = map(float, line.split(","))
            assert lower <= ratio * (1 + 1e-9) and ratio <= upper * (1 + 1e-9)

    def test_json_rows_match_csv(self):
        args = ("--ineq", "cor_one_half", "--var", "x", "--min", "0.5", "--max", "2",
                "--steps", "4", "--q", "0.4")
        csv_out = run_cli("table", *args).stdout.strip().split("\n")[1:]
        json_out = json.loads(run_cli("table", *args, "--format", "json").stdout)
        for line, obj in zip(csv_out, json_out):
            values = list(map(float, line.split(",")))
            assert values == [obj["x"], obj["lower"], obj["ratio"], obj["upper"],
                              obj["lower_margin"], obj["upper_margin"]]

    def test_malformed_sweep_exits_2(self):
        res = run_cli("table", "--ineq", "cor_one_half", "--var", "x",
                      "--min", "5", "--max", "1", "--steps", "3", "--q", "0.5")
        assert res.returncode == 2
        res = run_cli("table", "--ineq", "cor_one_half", "--var", "x",
                      "--min", "1", "--max", "5", "--steps", "1", "--q", "0.5")
        assert res.returncode == 2

    def test_sweep_variable_must_apply(self):
        res = run_cli("table", "--ineq", "cor_one_half", "--var", "y",
                      "--min", "1", "--max", "5", "--steps", "3", "--q", "0.5")
        assert res.returncode == 2
