import io
import json
import math

import pytest

from revival_lab.cli import main, parse_time, parse_triple, parse_vertex_set
from revival_lab.graphs import build_stellar, graph_from_json, graph_to_json


class TestParseTime:
    def test_pi_forms(self):
        assert parse_time("pi") == pytest.approx(math.pi)
        assert parse_time("2pi/5") == pytest.approx(2 * math.pi / 5)
        assert parse_time("pi/sqrt(2)") == pytest.approx(math.pi / math.sqrt(2))
        assert parse_time("3/2*pi") == pytest.approx(1.5 * math.pi)
        assert parse_time("pi/2sqrt(5)") == pytest.approx(
            math.pi / (2 * math.sqrt(5)))

    def test_plain_number(self):
        assert parse_time("1.25") == 1.25

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_time("two pies")
        with pytest.raises(ValueError):
            parse_time("pi/elephant")


def test_parse_helpers():
    assert parse_vertex_set("0,3,5") == {0, 3, 5}
    assert parse_triple("3,2,6") == (3, 2, 6)
    with pytest.raises(ValueError):
        parse_triple("3,2")


def run_cli(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


class TestAnalyzeCommand:
    def test_stellar_proper(self):
        code, text = run_cli(["analyze", "--stellar", "3,2,6"])
        doc = json.loads(text)
        assert code == 0
        assert doc["certificate"]["verdict"] == "proper-FR"
        assert doc["certificate"]["tau_min"] == pytest.approx(math.pi)
        assert doc["oracle"]["off_block_norm"] < 1e-9

    def test_graph_file_k2(self, tmp_path):
        path = tmp_path / "k2.json"
        path.write_text('{"n": 2, "edges": [[0, 1]]}')
        code, text = run_cli(["analyze", "--graph", str(path)])
        assert code == 0
        assert json.loads(text)["certificate"]["verdict"] == "proper-PST"

    def test_no_fr_exit_one(self):
        code, _ = run_cli(["analyze", "--stellar", "1,2,3"])
        assert code == 1

    def test_disconnected_exit_two(self, tmp_path):
        path = tmp_path / "dis.json"
        path.write_text('{"n": 4, "edges": [[0, 1], [2, 3]]}')
        code, _ = run_cli(["analyze", "--graph", str(path)])
        assert code == 2

    def test_missing_graph_exit_two(self):
        code, _ = run_cli(["analyze"])
        assert code == 2

    def test_extra_time_observation(self):
        code, text = run_cli(["analyze", "--stellar", "3,2,6",
                              "--time", "2pi"])
        doc = json.loads(text)
        assert doc["oracle_at_time"]["off_block_norm"] < 1e-8


class TestStellarCommand:
    def test_json(self):
        code, text = run_cli(["stellar", "--stellar", "16,36,37"])
        doc = json.loads(text)
        assert code == 0 and doc["verdict"] == "proper-FR"
        assert doc["tau_min"] == pytest.approx(math.pi / 5)

    def test_text_format(self):
        code, text = run_cli(["stellar", "--stellar", "1,4,1",
                              "--format", "text"])
        assert code == 1 and "improper-FR" in text

    def test_csv_format(self):
        code, text = run_cli(["stellar", "--stellar", "3,2,6",
                              "--format", "csv"])
        assert code == 0 and "proper-FR" in text


class TestFamilyCommand:
    def test_alpha_range(self):
        code, text = run_cli(["family", "--p", "5", "--delta", "5",
                              "--alpha", "1..5", "--beta-factor", "2"])
        assert code == 0
        lines = [json.loads(line) for line in text.splitlines()]
        triples = [(d["a"], d["k"], d["c"]) for d in lines]
        assert triples == [(2 * i * i, 6 * i * i, 11 * i * i)
                           for i in range(1, 6)]
        assert all(d["diophantine"] for d in lines)

    def test_polygamy_stream(self):
        code, text = run_cli(["family", "--p", "5", "--polygamy", "1..3"])
        lines = [json.loads(line) for line in text.splitlines()]
        assert (lines[0]["a"], lines[0]["k"], lines[0]["c"]) == (10, 30, 55)
        assert all(d["verdict"] == "proper-FR" for d in lines)

    def test_workers(self):
        code, text = run_cli(["family", "--p", "5", "--delta", "1",
                              "--alpha", "2..4", "--beta", "3..6",
                              "--workers", "4"])
        assert code == 0 and text.count("\n") >= 2

    def test_non_prime_rejected(self):
        code, _ = run_cli(["family", "--p", "6", "--polygamy", "1"])
        assert code == 2

    def test_count_limit(self):
        code, text = run_cli(["family", "--p", "5", "--polygamy", "1..3",
                              "--count", "1"])
        assert len(text.splitlines()) == 1


class TestProductCommand:
    def test_polygamy_witness(self):
        code, text = run_cli(["product", "--stellar", "27,18,54",
                              "--ell", "1"])
        doc = json.loads(text)
        assert code == 0 and doc["is_polygamous"]
        assert doc["twin_time"] == pytest.approx(2 * math.pi / 3)

    def test_bad_ell(self):
        code, _ = run_cli(["product", "--stellar", "3,2,6", "--ell", "1"])
        assert code == 2


class TestSubsetCommand:
    def test_ladder_transfer(self, tmp_path):
        from revival_lab.graphs import build_path, cartesian_product
        Z = cartesian_product(build_path(2), build_path(3))
        path = tmp_path / "ladder.json"
        path.write_text(graph_to_json(Z))
        code, text = run_cli(["subset", "--graph", str(path),
                              "--s", "0,3", "--t", "2,5",
                              "--time", "pi/sqrt(2)"])
        doc = json.loads(text)
        assert code == 0 and doc["is_transfer"]
        assert doc["residual"] < 1e-9

    def test_no_transfer_exit_one(self, tmp_path):
        from revival_lab.graphs import build_path
        path = tmp_path / "p3.json"
        path.write_text(graph_to_json(build_path(3)))
        code, _ = run_cli(["subset", "--graph", str(path),
                           "--s", "0", "--t", "2", "--time", "1.0"])
        assert code == 1

    def test_empty_file_exit_two(self, tmp_path):
        path = tmp_path / "empty"
        path.write_text("")
        code, _ = run_cli(["subset", "--graph", str(path),
                           "--s", "0", "--t", "1", "--time", "pi"])
        assert code == 2


class TestExportCommand:
    def test_graph_json_round_trip(self):
        code, text = run_cli(["export", "--stellar", "3,2,6",
                              "--format", "json"])
        Y = graph_from_json(text)
        X = build_stellar(3, 2, 6)
        assert Y.n == X.n and Y.edges == X.edges

    def test_support_dot_with_colors(self):
        code, text = run_cli(["export", "--stellar", "3,2,6",
                              "--state", "0,1", "--format", "dot"])
        assert code == 0
        assert "lightblue" in text and "lightsalmon" in text
        # two loops per colored component plus edges
        assert text.count("--") >= 6

    def test_plain_dot(self):
        code, text = run_cli(["export", "--stellar", "1,1,1",
                              "--format", "dot"])
        assert code == 0 and text.startswith("graph")


def test_bad_tolerance_exit_two():
    code, _ = run_cli(["analyze", "--stellar", "3,2,6", "--tol", "-1"])
    assert code == 2


def test_env_tolerance(monkeypatch):
    monkeypatch.setenv("REVIVAL_LAB_TOL", "1e-5")
    code, text = run_cli(["analyze", "--stellar", "3,2,6"])
    assert code == 0
