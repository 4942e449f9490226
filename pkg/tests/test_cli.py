"""
Tests for the command-line interface.
"""

import json

import pytest

from permstat.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from permstat.models.records import VerificationReport


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


class TestCommands:
    """Each subcommand on a small input."""

    def test_verify_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "--theorem", "qmac", "--n", "4", "--q", "2", "--threads", "1")
        assert code == EXIT_OK
        assert out == "PASS"

    def test_verify_fail_exit_code(self, capsys, monkeypatch):
        failing = VerificationReport(
            theorem="qmac", n=2, q=2, m=3, status="fail", lhs="1", rhs="2", witness={"lhs": "1", "rhs": "2"}
        )
        monkeypatch.setattr("permstat.cli.verify", lambda *args, **kwargs: failing)
        code, out, _ = run(capsys, "verify", "--theorem", "qmac", "--n", "2", "--q", "2")
        assert code == EXIT_FAILED
        lines = out.splitlines()
        assert lines[0] == "FAIL"
        assert json.loads(lines[1]) == {"lhs": "1", "rhs": "2"}

    def test_numbers(self, capsys):
        code, out, _ = run(capsys, "numbers", "--kind", "bellq", "--q", "2", "--n", "3")
        assert code == EXIT_OK
        assert out == "22"

    def test_stats_json(self, capsys):
        code, out, _ = run(capsys, "stats", "--q", "2", "7 8 6 5 2 9 4 1 3")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["Del_q"] == [3, 4, 5, 7, 8]
        assert data["rmaj_q"] == 23

    def test_stats_rejects_repeated_value(self, capsys):
        code, _, err = run(capsys, "stats", "--q", "2", "1 2 2")
        assert code == EXIT_USAGE
        assert err.startswith("error:")

    def test_bad_q(self, capsys):
        code, _, _ = run(capsys, "stats", "--q", "0", "1 2")
        assert code == EXIT_USAGE

    def test_decompose(self, capsys):
        assert run(capsys, "decompose", "2 3 1")[1] == "s1 | s2"
        assert run(capsys, "decompose", "--group", "a", "3 1 2")[1] == "a1^-1"

    def test_decompose_json_keeps_degree(self, capsys):
        _, out, _ = run(capsys, "decompose", "1", "--format", "json")
        assert json.loads(out) == {"group": "s", "degree": 1, "word": ""}

    def test_dist_text_and_csv(self, capsys):
        code, out, _ = run(capsys, "dist", "--m", "3", "--q", "2", "--stats", "inv_q", "--threads", "1")
        assert code == EXIT_OK
        assert out == "2 + 4*t1"
        _, out, _ = run(capsys, "dist", "--m", "3", "--q", "2", "--stats", "inv_q", "--format", "csv", "--threads", "1")
        assert out.splitlines() == ["t1,coef", "0,2", "1,4"]

    def test_dist_over_budget(self, capsys):
        code, _, err = run(capsys, "dist", "--m", "12", "--stats", "inv_q", "--budget", "9")
        assert code == EXIT_USAGE
        assert "budget" in err

    def test_unknown_statistic(self, capsys):
        code, _, _ = run(capsys, "dist", "--m", "3", "--stats", "inv_q,bogus", "--threads", "1")
        assert code == EXIT_USAGE

    def test_map_and_fiber(self, capsys):
        assert run(capsys, "map", "--q", "2", "2 3 1")[1] == "2 1"
        assert run(capsys, "fiber", "--q", "2", "1 2")[1].splitlines() == ["1 2 3", "2 1 3"]

    def test_avoid(self, capsys):
        code, out, _ = run(capsys, "avoid", "--q", "1", "1 3 2", "2 1 3", "--format", "json")
        assert code == EXIT_OK
        results = json.loads(out)
        assert results[0]["avoids"] is False
        assert results[0]["witness"] == {"positions": [1, 2], "bottom": 3}
        assert results[1] == {"window": "2 1 3", "avoids": True, "witness": None}

    def test_count(self, capsys):
        code, out, _ = run(capsys, "count", "--m", "4", "--q", "2")
        assert code == EXIT_OK
        assert out.splitlines() == ["m,q,h_q", "0,2,1", "1,2,1", "2,2,2", "3,2,6", "4,2,22"]

    def test_classes(self, capsys):
        code, out, _ = run(capsys, "classes", "--m", "4", "--q", "1", "--no-del", "--threads", "1")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "B1,B2,size,poly_inv,poly_rmaj,equal"
        assert all(line.endswith("true") for line in lines[1:])

    def test_unknown_theorem_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["verify", "--theorem", "riemann", "--n", "3"])
        assert excinfo.value.code == EXIT_USAGE


class TestDeterminism:
    """--threads 1 and parallel runs print identical bytes."""

    @pytest.mark.parametrize(
        "argv",
        [
            ["dist", "--m", "6", "--q", "2", "--stats", "inv_q,del_q", "--format", "json"],
            ["verify", "--theorem", "qmac2", "--n", "4", "--q", "2", "--format", "json"],
            ["classes", "--m", "5", "--q", "2"],
            ["verify", "--theorem", "q6", "--n", "4", "--q", "2", "--format", "json"],
        ],
    )
    def test_sequential_matches_parallel(self, capsys, argv):
        _, sequential, _ = run(capsys, *argv, "--threads", "1")
        _, parallel, _ = run(capsys, *argv, "--threads", "3")
        assert sequential == parallel
