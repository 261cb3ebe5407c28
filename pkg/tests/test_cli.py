import io
import json
from contextlib import redirect_stdout

import pytest

from breedsim.cli import main


def run_cli(*args):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(args))
    return code, buf.getvalue()


class TestAnalyze:
    def test_six_four_two(self):
        code, out = run_cli("analyze", "--code", "six_four_two")
        assert code == 0
        assert "n=6 k=4 d=2 pure=yes" in out

    def test_five_qubit(self):
        code, out = run_cli("analyze", "--code", "five_qubit")
        assert code == 0
        assert "n=5 k=1 d=3 pure=yes" in out

    def test_malformed_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("code x p=2 n=2 k=0 d=1 pure=1\n10|00\n00|10\n")
        code, _ = run_cli("analyze", "--code", str(bad))
        assert code == 1

    def test_unknown_name(self):
        code, _ = run_cli("analyze", "--code", "nonesuch")
        assert code == 1

    def test_catalog_file(self, tmp_path):
        path = tmp_path / "one.txt"
        path.write_text("code tiny p=2 n=4 k=2 d=2 pure=1\n1111|0000\n0000|1111\n")
        code, out = run_cli("analyze", "--code", str(path))
        assert code == 0
        assert "name=tiny n=4 k=2 d=2" in out


class TestVerify:
    def test_worked_example(self):
        code, out = run_cli("verify", "--code", "six_four_two", "--puncture", "6")
        assert code == 0
        assert "patterns=16" in out and "result=PASS" in out

    def test_hashing_five_qubit(self):
        code, out = run_cli("verify", "--code", "five_qubit")
        assert code == 0
        assert "result=PASS" in out

    def test_puncture_beyond_distance(self):
        code, _ = run_cli("verify", "--code", "six_four_two", "--puncture", "1,2")
        assert code == 1


class TestSimulate:
    def test_rate_zero(self):
        code, out = run_cli(
            "simulate", "--code", "six_four_two", "--puncture", "6",
            "--rates", "0.0", "--trials", "200",
        )
        assert code == 0
        assert "fidelity=1.000000" in out and "net=3" in out

    def test_rate_grid_row_per_rate(self):
        code, out = run_cli(
            "simulate", "--code", "six_four_two", "--puncture", "6",
            "--rates", "0.01,0.1", "--trials", "500", "--seed", "7",
        )
        assert code == 0
        assert len(out.strip().splitlines()) == 2

    def test_invalid_rate(self):
        code, _ = run_cli(
            "simulate", "--code", "six_four_two", "--puncture", "6",
            "--rates", "1.5", "--trials", "10",
        )
        assert code == 1


class TestSearch:
    def test_not_exists(self):
        code, out = run_cli("search", "--p", "2", "--n", "5", "--k", "3", "--dmin", "2")
        assert code == 0
        assert "NOT EXISTS (exhaustive)" in out

    def test_exists_with_witness(self):
        code, out = run_cli("search", "--p", "2", "--n", "6", "--k", "4", "--dmin", "2")
        assert code == 0
        assert "verdict=EXISTS" in out and "witness=" in out

    def test_infeasible_exit_code(self):
        code, _ = run_cli("search", "--p", "2", "--n", "8", "--k", "3", "--dmin", "3")
        assert code == 3


class TestCompare:
    def test_contains_dominance_row(self):
        code, out = run_cli("compare", "--format", "tsv")
        assert code == 0
        lines = [l.split("\t") for l in out.strip().splitlines()]
        header = lines[0]
        rows = [dict(zip(header, l)) for l in lines[1:]]
        star = [
            r for r in rows
            if r["kind"] == "breeding" and r["name"] == "six_four_two"
        ]
        assert star and star[0]["net"] == "3" and star[0]["dominant"] == "yes"


class TestFormats:
    def test_jsonl_round_trip(self):
        _, human = run_cli("analyze", "--code", "six_four_two")
        _, jsonl = run_cli("analyze", "--code", "six_four_two", "--format", "jsonl")
        rec = json.loads(jsonl)
        for token in human.strip().split():
            key, _, value = token.partition("=")
            assert str(rec[key]) == value

    def test_jsonl_simulate_round_trip(self):
        _, human = run_cli(
            "simulate", "--code", "six_four_two", "--puncture", "6",
            "--rates", "0.1", "--trials", "300",
        )
        _, jsonl = run_cli(
            "simulate", "--code", "six_four_two", "--puncture", "6",
            "--rates", "0.1", "--trials", "300", "--format", "jsonl",
        )
        rec = json.loads(jsonl)
        assert f"fidelity={rec['fidelity']}" in human


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ["analyze", "--code", "five_qubit"],
            ["verify", "--code", "six_four_two", "--puncture", "6"],
            ["simulate", "--code", "six_four_two", "--puncture", "6",
             "--rates", "0.05,0.1", "--trials", "1000", "--seed", "3"],
            ["search", "--p", "2", "--n", "5", "--k", "3", "--dmin", "2"],
            ["compare"],
        ],
    )
    def test_repeat_runs_identical(self, argv):
        assert run_cli(*argv) == run_cli(*argv)

    def test_worker_count_does_not_change_output(self):
        base = ["simulate", "--code", "six_four_two", "--puncture", "6",
                "--rates", "0.1", "--trials", "25000", "--seed", "11"]
        assert run_cli(*base, "--workers", "1") == run_cli(*base, "--workers", "2")


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--code", "six_four_two"])  # missing --rates
    assert exc.value.code == 2
