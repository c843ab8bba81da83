import io
import json

import pytest

from signgame.cli import run_cli


def run(argv, stdin_text=""):
    out = io.StringIO()
    code = run_cli(argv, out=out, stdin=io.StringIO(stdin_text))
    return code, out.getvalue()


class TestSolveCommand:
    def test_k4_json(self):
        code, text = run(["solve", "--graph", "K4", "--first", "N", "--json"])
        assert code == 0
        doc = json.loads(text)
        assert doc["outcome"] == "draw" and doc["value"] == 0
        assert doc["best_move"] == {"v": 0, "sign": "+"}
        assert len(doc["principal_variation"]) == 4

    def test_text_mode_reports_same_value(self):
        code, text = run(["solve", "--graph", "P4", "--first", "P"])
        assert code == 0
        assert "value -1 (N)" in text

    def test_unparseable_spec_is_usage_error(self):
        code, _ = run(["solve", "--graph", "Q9", "--first", "P"])
        assert code == 2

    def test_budget_exceeded_exit_code(self):
        code, _ = run(["solve", "--graph", "C12", "--budget", "5"])
        assert code == 3

    def test_missing_graph_is_usage_error(self):
        code, _ = run(["solve"])
        assert code == 2

    def test_unknown_flag_rejected(self):
        code, _ = run(["solve", "--graph", "K4", "--frobnicate"])
        assert code == 2

    def test_from_transcript_round_trip(self, tmp_path):
        save = tmp_path / "game.json"
        stdin = "0 +\n1 -\n2 +\n"
        code, text = run(
            ["play", "--graph", "S2", "--first", "P", "--human", "P", "--save", str(save)],
            stdin_text=stdin,
        )
        assert code == 0
        doc = json.loads(save.read_text())
        assert doc["graph"] == "S2" and len(doc["moves"]) == 3
        code, text = run(["solve", "--from-transcript", str(save), "--json"])
        assert code == 0
        solved = json.loads(text)
        assert solved["value"] == doc["final_score"]
        assert solved["banked_score"] == doc["final_score"]
        assert solved["best_move"] is None

    def test_tampered_transcript_rejected(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(
            json.dumps(
                {
                    "graph": "P2",
                    "first_role": "P",
                    "moves": [{"v": 0, "sign": "+"}, {"v": 1, "sign": "+"}],
                    "final_score": -5,
                }
            )
        )
        code, _ = run(["solve", "--from-transcript", str(bad)])
        assert code == 2


class TestVerifyCommand:
    def test_all_suites_small_pass(self):
        code, text = run(["verify", "--suite", "all", "--max", "6", "--json"])
        assert code == 0
        doc = json.loads(text)
        assert doc["all_pass"] is True
        names = {r["theorem"] for r in doc["reports"]}
        assert "complete_outcomes" in names and "p5_classification" in names
        for r in doc["reports"]:
            assert r["failures"] == []

    def test_single_suite_text(self):
        code, text = run(["verify", "--suite", "paths", "--max", "8"])
        assert code == 0
        assert text.startswith("PASS path_values")

    def test_unknown_suite(self):
        code, _ = run(["verify", "--suite", "bogus"])
        assert code == 2


class TestReduceCommand:
    def test_leaf_pair_json(self):
        code, text = run(
            [
                "reduce",
                "--graph",
                "S4",
                "--assign",
                "0=+,1=+,2=-",
                "--rule",
                "leaf-pair",
                "--vertices",
                "1,2",
            ]
        )
        assert code == 0
        doc = json.loads(text)
        assert doc["position"]["graph"]["n"] == 3
        assert doc["position"]["cells"] == ["+", None, None]
        assert doc["index_map"] == [[0], [], [], [1], [2]]

    def test_cycle_open(self):
        code, text = run(
            ["reduce", "--graph", "C4", "--assign", "0=+", "--rule", "cycle-open", "--vertex", "0"]
        )
        assert code == 0
        doc = json.loads(text)
        assert doc["position"]["graph"]["n"] == 5
        assert doc["index_map"][0] == [0, 4]

    def test_precondition_failure_exit_one(self):
        code, _ = run(
            ["reduce", "--graph", "S4", "--assign", "1=+,2=+", "--rule", "leaf-pair",
             "--vertices", "1,2"]
        )
        assert code == 1

    def test_missing_rule_args(self):
        code, _ = run(["reduce", "--graph", "P4", "--assign", "1=+", "--rule", "path-split"])
        assert code == 2


class TestStrategyCommand:
    def test_mirror_report(self):
        code, text = run(
            [
                "strategy",
                "--graph",
                "K6",
                "--first",
                "P",
                "--kind",
                "mirror-opposite",
                "--operated",
                "N",
                "--json",
            ]
        )
        assert code == 0
        doc = json.loads(text)
        assert doc["guaranteed_value"] <= -1
        assert len(doc["witness_line"]) == 6

    def test_bipartite_needs_parts(self):
        code, _ = run(
            ["strategy", "--graph", "K3,3", "--kind", "cross-part", "--operated", "N"]
        )
        assert code == 1


class TestConjectureCommand:
    def test_table_json(self):
        code, text = run(["conjecture", "--max", "6", "--json"])
        assert code == 0
        doc = json.loads(text)
        assert doc["rows"]
        assert {"sizes", "first_role", "value", "outcome", "expected", "consistent"} <= set(
            doc["rows"][0]
        )

    def test_findings_are_not_fatal(self):
        code, text = run(["conjecture", "--max", "5"])
        assert code == 0
        assert "cases" in text


class TestGraphCommand:
    def test_build(self):
        code, text = run(["graph", "build", "--graph", "K4", "--json"])
        assert code == 0
        doc = json.loads(text)
        assert doc["n"] == 4 and len(doc["edges"]) == 6 and doc["graph6"] == "C~"

    def test_encode_decode_round_trip(self):
        code, text = run(["graph", "encode", "--graph", "C5"])
        assert code == 0
        g6 = text.strip()
        code, text = run(["graph", "decode", "--g6", g6, "--json"])
        assert code == 0
        doc = json.loads(text)
        assert doc["n"] == 5 and len(doc["edges"]) == 5

    def test_bad_graph6(self):
        code, _ = run(["graph", "decode", "--g6", "D_"])
        assert code == 2


class TestPlayCommand:
    def test_full_game_with_hints(self):
        stdin = "hint\n0 +\nnonsense\n1 -\n2 +\n"
        code, text = run(
            ["play", "--graph", "S2", "--first", "P", "--human", "P"], stdin_text=stdin
        )
        assert code == 0
        assert "hint:" in text
        assert "could not read move" in text
        assert "final score 0: draw" in text

    def test_engine_plays_between_human_moves(self):
        stdin = "0 +\n2 +\n"
        code, text = run(
            ["play", "--graph", "P4", "--first", "P", "--human", "P"], stdin_text=stdin
        )
        assert code == 0
        assert text.count("engine plays") == 2
        assert "final score" in text

    def test_quit(self):
        code, text = run(["play", "--graph", "K4", "--first", "P", "--human", "P"], "quit\n")
        assert code == 0 and "abandoned" in text

    def test_oversized_graph_rejected(self):
        code, _ = run(["play", "--graph", "K20", "--first", "P", "--human", "P"])
        assert code == 3

    def test_occupied_vertex_reported_inline(self):
        stdin = "0 +\n0 -\n1 -\n2 +\n"
        code, text = run(
            ["play", "--graph", "S2", "--first", "P", "--human", "P"], stdin_text=stdin
        )
        assert code == 0
        assert "illegal move" in text
