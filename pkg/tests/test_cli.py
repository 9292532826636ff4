import json
import logging

import pytest

from src.cli.commands import CommandRunner
from src.cli.parser import build_parser
from src.core.config import Config
from src.main import main

HERMITIAN = "[[[1,0],[0.5,-1]],[[0.5,1],[-2,0]]]"
AMBIGUOUS = "[[[0,0],[2,0]],[[0.5,0],[0,0]]]"


@pytest.fixture(autouse=True)
def restore_logging():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def error_line(err):
    return json.loads(err.strip().splitlines()[-1])


class TestClassify:

    def test_diagonal(self, capsys):
        code, out, _ = run(capsys, "classify", "--h", "[[[1,0],[0,0]],[[0,0],[2,0]]]")
        assert code == 0
        payload = json.loads(out)
        assert "case1" in payload["case_labels"]
        assert payload["phase_if_pseudo"] == "trivial"
        assert payload["hermitian"] is True

    def test_catalog_entry(self, capsys):
        code, out, _ = run(capsys, "classify", "--entry", "complex-ghost",
                           "--param", "m=1", "--param", "eps=2", "--param", "gamma=1")
        assert code == 0
        assert json.loads(out)["case_labels"] == ["case2"]

    def test_malformed_json(self, capsys):
        code, out, err = run(capsys, "classify", "--h", "[[1,0],")
        assert code == 3
        assert out == ""
        payload = error_line(err)
        assert payload["error"] == "InputError"
        assert payload["field"] == "h"

    def test_bad_element_names_position(self, capsys):
        code, _, err = run(capsys, "classify", "--h", '[[[1,0],[0,0]],[[0,0],"x"]]')
        assert code == 3
        assert error_line(err)["field"] == "h[1][1]"

    def test_neither(self, capsys):
        code, _, err = run(capsys, "classify", "--h", "[[[1,1],[0,0]],[[0,0],[2,0]]]")
        assert code == 2
        assert error_line(err)["error"] == "NotClassifiable"


class TestMetric:

    def test_hermitian_defaults(self, capsys):
        code, out, _ = run(capsys, "metric", "--h", HERMITIAN)
        assert code == 0
        payload = json.loads(out)
        for row, expected in zip(payload["eta"], ([1, 0], [0, 1])):
            for (re, im), value in zip(row, expected):
                assert re == pytest.approx(value, abs=1e-14)
                assert im == pytest.approx(0, abs=1e-14)
        assert payload["residual"] < 1e-14

    def test_kind_required(self, capsys):
        code, out, err = run(capsys, "metric", "--h", AMBIGUOUS)
        assert code == 2
        assert out == ""
        payload = error_line(err)
        assert payload["error"] == "CaseMismatch"
        assert "kind required" in payload["message"]

    def test_explicit_kind(self, capsys):
        code, out, _ = run(capsys, "metric", "--h", AMBIGUOUS, "--kind", "anti", "--phi", "0.3")
        assert code == 0
        payload = json.loads(out)
        assert payload["case"] == "case4"
        assert payload["sign"] == "anti"

    @pytest.mark.parametrize("q, case, sign", [
        ("parity", "case4", "anti"),
        ("identity", "case1", "pseudo"),
    ])
    def test_q_selects_kind(self, capsys, q, case, sign):
        code, out, _ = run(capsys, "metric", "--h", AMBIGUOUS, "--q", q)
        assert code == 0
        payload = json.loads(out)
        assert payload["case"] == case
        assert payload["sign"] == sign

    def test_exceptional(self, capsys):
        code, _, err = run(capsys, "metric", "--entry", "complex-ghost",
                           "--param", "eps=1", "--param", "gamma=1")
        assert code == 2
        assert error_line(err)["error"] == "ExceptionalPoint"

    def test_matches_catalog_oracle(self, capsys):
        params = ["--param", "m=0.5", "--param", "eps=0.3", "--param", "gamma=1,0.2"]
        flags = ["--n1", "1.5,0.5", "--n2", "0,0.4", "--branch", "minus"]
        _, out, _ = run(capsys, "metric", "--entry", "complex-ghost", *params, *flags)
        general = json.loads(out)["eta"]
        _, out, _ = run(capsys, "catalog", "complex-ghost", *params, *flags, "--case", "case1")
        oracle = json.loads(out)["oracle"]["case1"]
        for row_g, row_o in zip(general, oracle):
            for zg, zo in zip(row_g, row_o):
                assert zg == pytest.approx(zo, abs=1e-12)

    def test_round_trip_through_verify(self, capsys, tmp_path):
        target = tmp_path / "metric.json"
        code, out, _ = run(capsys, "metric", "--entry", "bender-das", "--output", str(target))
        assert code == 0
        assert out == ""
        residual = json.loads(target.read_text(encoding="utf-8"))["residual"]
        code, out, _ = run(capsys, "verify", "--input", str(target))
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"] is True
        assert payload["residual"] == pytest.approx(residual, abs=1e-14)

    def test_verify_failure(self, capsys):
        code, out, err = run(capsys, "verify", "--h", "[[[1,-0.5],[1,0]],[[1,0],[1,0.5]]]",
                             "--eta", "[[[1,0],[0,0]],[[0,0],[1,0]]]", "--sign", "pseudo")
        assert code == 2
        assert json.loads(out)["passed"] is False
        assert error_line(err)["error"] == "VerificationFailed"

    def test_deterministic(self, capsys):
        argv = ["metric", "--entry", "complex-ghost", "--param", "eps=2", "--phi", "0.4"]
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second

    def test_csv_not_supported(self, capsys):
        code, _, err = run(capsys, "metric", "--h", HERMITIAN, "--csv")
        assert code == 3
        assert error_line(err)["field"] == "format"


class TestSweep:

    def test_ghost_csv(self, capsys):
        code, out, _ = run(capsys, "sweep", "complex-ghost", "--grid", "eps=0:2:21",
                           "--param", "m=1", "--param", "gamma=1")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("m,eps,gamma_re,gamma_im,status,case")
        assert len(lines) == 22
        assert ",exceptional," in lines[11]
        assert ",case1," in lines[10]
        assert ",case2," in lines[12]

    def test_empty_grid(self, capsys):
        code, out, _ = run(capsys, "sweep", "complex-ghost", "--grid", "eps=0:1:0")
        assert code == 0
        assert out.count("\n") == 1

    def test_json_rows(self, capsys):
        code, out, _ = run(capsys, "sweep", "bender-das", "--grid", "theta=0.1:1.5:3", "--json")
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 3
        assert all(row["det_eta_sign"] == 1 for row in rows)

    def test_unknown_entry(self, capsys):
        code, _, err = run(capsys, "sweep", "harmonic-oscillator", "--grid", "x=0:1:2")
        assert code == 2
        assert error_line(err)["error"] == "NotFound"

    def test_unknown_parameter(self, capsys):
        code, _, _ = run(capsys, "sweep", "complex-ghost", "--grid", "mass=0:1:2")
        assert code == 2


class TestOtherCommands:

    def test_lee_wick(self, capsys):
        code, out, _ = run(capsys, "lee-wick", "--omega", "1,-0.5")
        assert code == 0
        report = json.loads(out)["report"]
        assert report["max_residual"] <= 1e-13

    def test_dynamics_hermitian(self, capsys):
        code, out, _ = run(capsys, "dynamics", "--h", HERMITIAN)
        assert code == 0
        assert json.loads(out)["report"]["max_drift"] <= 1e-12

    @pytest.mark.parametrize("h", ["[[[1,0],[0,0]],[[0,0],[1,0]]]", "[[[0,0],[0,0]],[[0,0],[0,0]]]"])
    def test_dynamics_scalar(self, capsys, h):
        code, out, _ = run(capsys, "dynamics", "--h", h)
        assert code == 0
        assert json.loads(out)["report"]["max_drift"] <= 1e-14

    def test_dynamics_leaves_kind_unset(self, capsys):
        args = build_parser().parse_args(["dynamics", "--h", AMBIGUOUS])
        CommandRunner(Config()).run(args)
        capsys.readouterr()
        assert args.kind is None

    def test_dynamics_csv(self, capsys):
        code, out, _ = run(capsys, "dynamics", "--h", HERMITIAN, "--csv", "--samples", "5")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "t,re,im"
        assert len(lines) == 6

    def test_involution_asymmetric(self, capsys):
        code, out, _ = run(capsys, "involution", "--entry", "bender-das",
                           "--param", "t=1.5", "--param", "phi=0.2")
        assert code == 0
        assert json.loads(out)["constraint"]["satisfiable"] is False

    def test_catalog_list(self, capsys):
        code, out, _ = run(capsys, "catalog")
        assert code == 0
        names = [entry["name"] for entry in json.loads(out)["entries"]]
        assert "znojil-wdw" in names

    def test_catalog_beta(self, capsys):
        code, out, _ = run(capsys, "catalog", "znojil-wdw", "--param", "tau=0.7", "--beta", "0.5")
        assert code == 0
        eta = json.loads(out)["beta"]["eta"]
        assert eta[0][1][0] == pytest.approx(0.5)

    def test_catalog_unknown(self, capsys):
        code, _, err = run(capsys, "catalog", "harmonic-oscillator")
        assert code == 2
        assert error_line(err)["error"] == "NotFound"

    def test_unknown_flag(self, capsys):
        code, _, err = run(capsys, "classify", "--frobnicate")
        assert code == 3
        assert error_line(err)["error"] == "InputError"

    def test_missing_subcommand(self, capsys):
        assert run(capsys)[0] == 3
