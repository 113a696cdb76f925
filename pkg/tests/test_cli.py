"""Command-line interface behaviour: outputs, determinism, exit codes."""

from __future__ import annotations

import json

import pytest

from ringtour.cli import RunReport, main

K6_MATRIX_TEXT = """6
0 6 4 8 7 14
6 0 7 11 7 10
4 7 0 4 3 10
8 11 4 0 5 11
7 7 3 5 0 7
14 10 10 11 7 0
"""

K4_MATRIX_TEXT = """4
0 10 5 9
10 0 6 9
5 6 0 3
9 9 3 0
"""


@pytest.fixture()
def k6_file(tmp_path):
    path = tmp_path / "k6.txt"
    path.write_text(K6_MATRIX_TEXT)
    return path


@pytest.fixture()
def k4_file(tmp_path):
    path = tmp_path / "k4.txt"
    path.write_text(K4_MATRIX_TEXT)
    return path


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolveCommand:
    def test_k6_json(self, capsys, k6_file):
        code, out, _ = run_cli(
            capsys, "solve", "--matrix", str(k6_file),
            "--beam", "all-ties", "--format", "json",
        )
        assert code == 0
        report = json.loads(out)
        assert report["results"]["weight"] == 36
        assert report["results"]["edges"] == [1, 2, 9, 10, 13, 15]
        assert report["results"]["tour"] == [1, 2, 6, 5, 4, 3]

    def test_text_mirrors_desk_notation(self, capsys, k4_file):
        code, out, _ = run_cli(capsys, "solve", "--matrix", str(k4_file))
        assert code == 0
        assert "(v1,v2,v4,v3)" in out
        assert "{e1,e2,e5,e6}" in out
        assert "weight 27" in out

    def test_trace_lists_frontiers(self, capsys, k6_file):
        code, out, _ = run_cli(
            capsys, "solve", "--matrix", str(k6_file), "--trace"
        )
        assert code == 0
        assert "L=4 w=20" in out
        assert "L=5 w=26" in out

    def test_random_source(self, capsys):
        code, out, _ = run_cli(
            capsys, "solve", "--random", "n=7", "seed=3", "--format", "json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["instance"]["seed"] == 3
        assert len(report["results"]["tour"]) == 7

    def test_deterministic_json(self, capsys, k6_file, tmp_path):
        outputs = []
        for _ in range(2):
            code, out, _ = run_cli(
                capsys, "solve", "--matrix", str(k6_file), "--format", "json"
            )
            assert code == 0
            payload = json.loads(out)
            payload.pop("timing_ms")
            outputs.append(json.dumps(payload, sort_keys=True))
        assert outputs[0] == outputs[1]

    def test_out_file(self, capsys, k4_file, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(
            capsys, "solve", "--matrix", str(k4_file),
            "--format", "json", "--out", str(target),
        )
        assert code == 0
        assert json.loads(target.read_text())["results"]["weight"] == 27

    def test_coords_source(self, capsys, tmp_path):
        pts = tmp_path / "pts.txt"
        pts.write_text("4\n0 0\n0 3\n4 3\n4 0\n")
        code, out, _ = run_cli(
            capsys, "solve", "--coords", str(pts), "--format", "json"
        )
        assert code == 0
        # rectangle perimeter 3+4+3+4
        assert json.loads(out)["results"]["weight"] == 14


class TestCompareCommand:
    def test_k6(self, capsys, k6_file):
        code, out, _ = run_cli(
            capsys, "compare", "--matrix", str(k6_file), "--format", "json"
        )
        assert code == 0
        r = json.loads(out)["results"]
        assert r["optimum"] == 36
        assert r["heuristic"] == 36
        assert r["ratio"] == 1.0
        assert r["match"] is True

    def test_random_ratio_bound(self, capsys):
        code, out, _ = run_cli(
            capsys, "compare", "--random", "n=8", "seed=7", "--format", "json"
        )
        assert code == 0
        r = json.loads(out)["results"]
        assert r["ratio"] >= 1.0

    def test_oracle_cap(self, capsys):
        code, _, err = run_cli(
            capsys, "compare", "--random", "n=25", "seed=1"
        )
        assert code == 2
        assert "caps" in err


class TestGenCommand:
    def test_roundtrip_through_solve(self, capsys, tmp_path):
        target = tmp_path / "inst.txt"
        code, _, _ = run_cli(
            capsys, "gen", "--random", "n=6", "seed=11", "--out", str(target)
        )
        assert code == 0
        code, out_a, _ = run_cli(
            capsys, "solve", "--matrix", str(target), "--format", "json"
        )
        code2, out_b, _ = run_cli(
            capsys, "solve", "--random", "n=6", "seed=11", "--format", "json"
        )
        assert code == code2 == 0
        a, b = json.loads(out_a), json.loads(out_b)
        assert a["results"] == b["results"]

    def test_upper_encoding(self, capsys, tmp_path):
        target = tmp_path / "inst_upper.txt"
        code, _, _ = run_cli(
            capsys, "gen", "--random", "n=5", "seed=2",
            "--out", str(target), "--encoding", "upper",
        )
        assert code == 0
        assert target.read_text().splitlines()[0] == "5"
        code, out, _ = run_cli(
            capsys, "solve", "--upper", str(target), "--format", "json"
        )
        assert code == 0

    def test_gen_needs_random(self, capsys, k4_file):
        code, _, err = run_cli(capsys, "gen", "--matrix", str(k4_file))
        assert code == 1

    def test_gen_needs_out(self, capsys):
        code, _, _ = run_cli(capsys, "gen", "--random", "n=5", "seed=1")
        assert code == 1


class TestCyclesAndMacLane:
    def test_cycles_listing(self, capsys, k6_file):
        code, out, _ = run_cli(capsys, "cycles", "--matrix", str(k6_file))
        assert code == 0
        assert "c1 = {e1,e2,e6} <-> (v1,v2,v3) = 17" in out
        assert "c20 = {e13,e14,e15}" in out

    def test_maclane_report(self, capsys, k6_file):
        code, out, _ = run_cli(
            capsys, "maclane", "--matrix", str(k6_file), "--format", "json"
        )
        assert code == 0
        r = json.loads(out)["results"]
        assert r["cycle_count"] == 20
        assert r["p_e"] == [4] * 15

    def test_maclane_deletion_trace(self, capsys, tmp_path):
        k5_file = tmp_path / "k5.txt"
        k5_file.write_text(
            "5\n0 6 10 5 11\n6 0 10 9 7\n10 10 0 9 8\n5 9 9 0 11\n11 7 8 11 0\n"
        )
        code, out, _ = run_cli(
            capsys, "maclane", "--matrix", str(k5_file),
            "--delete", "1,6,8,2,4", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["results"]["f2"] == 60
        assert [e["f2"] for e in payload["trace"][1:]] == [42, 24, 12, 6, 0]


class TestHamiltonianCommand:
    def test_trace_output(self, capsys, k6_file):
        code, out, _ = run_cli(capsys, "hamiltonian", "--matrix", str(k6_file))
        assert code == 0
        assert "z1 = c1 = {e1,e2,e6} <-> (v1,v2,v3)" in out
        assert "z2 = z1 (+) c2 = {e2,e3,e6,e7} <-> (v1,v2,v3,v4)" in out
        assert "edges  {e4,e5,e6,e7,e11,e14}" in out

    def test_start_flag(self, capsys, k6_file):
        code, out, _ = run_cli(
            capsys, "hamiltonian", "--matrix", str(k6_file),
            "--start", "20", "--format", "json",
        )
        assert code == 0
        report = json.loads(out)
        assert report["trace"][0]["seed_walk"] == [4, 5, 6]


class TestUsageAndErrors:
    def test_no_source(self, capsys):
        code, _, err = run_cli(capsys, "solve")
        assert code == 1
        assert "instance source" in err

    def test_two_sources(self, capsys, k4_file, k6_file):
        code, _, _ = run_cli(
            capsys, "solve", "--matrix", str(k4_file), "--upper", str(k6_file)
        )
        assert code == 1

    def test_unknown_flag(self, capsys, k4_file):
        code, _, _ = run_cli(
            capsys, "solve", "--matrix", str(k4_file), "--frobnicate"
        )
        assert code == 1

    def test_malformed_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("3\n0 1\n")
        code, _, err = run_cli(capsys, "solve", "--matrix", str(bad))
        assert code == 2

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run_cli(
            capsys, "solve", "--matrix", str(tmp_path / "absent.txt")
        )
        assert code == 2

    def test_help(self, capsys):
        code, out, _ = run_cli(capsys, "--help")
        assert code == 0
        for sub in ("solve", "compare", "gen", "cycles", "maclane",
                    "hamiltonian", "bench"):
            assert sub in out

    def test_subcommand_help_lists_flags(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "--help")
        assert code == 0
        for flag in ("--matrix", "--upper", "--coords", "--random",
                     "--beam", "--trace", "--format", "--out"):
            assert flag in out

    def test_bad_random_spec(self, capsys):
        code, _, _ = run_cli(capsys, "solve", "--random", "n=5")
        assert code == 1
        code, _, _ = run_cli(capsys, "solve", "--random", "n=5", "seed=x")
        assert code == 1

    def test_bad_beam_is_usage_error(self, capsys):
        code, _, _ = run_cli(
            capsys, "solve", "--random", "n=5", "seed=1", "--beam", "zero"
        )
        assert code == 1
        code, _, _ = run_cli(
            capsys, "solve", "--random", "n=5", "seed=1", "--beam", "0"
        )
        assert code == 1

    def test_bad_delete_list(self, capsys, k4_file):
        code, _, _ = run_cli(
            capsys, "maclane", "--matrix", str(k4_file), "--delete", "1,x"
        )
        assert code == 1

    def test_bad_sizes(self, capsys):
        code, _, _ = run_cli(capsys, "bench", "--sizes", "8,big")
        assert code == 1


class TestBenchCommand:
    def test_small_bench_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "bench", "--sizes", "8,12", "--seeds", "2",
            "--format", "json",
        )
        assert code == 0
        r = json.loads(out)["results"]
        assert len(r["rows"]) == 4
        assert set(r["median_ms"]) == {"8", "12"}
        assert r["slope"] is not None
        assert r["predicted_ops"]["12"] == (7 * 12**4 - 16 * 12**3) / 24

    def test_bench_text_table(self, capsys):
        code, out, _ = run_cli(
            capsys, "bench", "--sizes", "6", "--seeds", "1"
        )
        assert code == 0
        assert out.splitlines()[0] == "n,seed,millis,weight"
        assert "# median n=6" in out

    def test_bench_worker_pool_same_weights(self, capsys):
        code, seq_out, _ = run_cli(
            capsys, "bench", "--sizes", "6,8", "--seeds", "2", "--format", "json"
        )
        code2, par_out, _ = run_cli(
            capsys, "bench", "--sizes", "6,8", "--seeds", "2",
            "--workers", "2", "--format", "json",
        )
        assert code == code2 == 0
        seq_rows = json.loads(seq_out)["results"]["rows"]
        par_rows = json.loads(par_out)["results"]["rows"]
        key = lambda r: (r["n"], r["seed"], r["weight"])
        assert [key(r) for r in seq_rows] == [key(r) for r in par_rows]


class TestRunReport:
    def test_round_trip(self):
        report = RunReport(
            command="solve",
            instance={"n": 6, "kind": "matrix", "path": "k6.txt"},
            params={"beam": "all-ties", "format": "json"},
            results={"weight": 36.0, "tour": [1, 2, 6, 5, 4, 3]},
            timing_ms=1.25,
            trace=None,
        )
        assert RunReport.from_json(report.to_json()) == report
