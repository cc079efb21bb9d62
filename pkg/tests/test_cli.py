import json
import subprocess
import sys

import pytest

from bfcover.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cover_r5(capsys):
    code, out, _ = run(capsys, "cover", "-r", "5")
    assert code == 0
    assert "size        22" in out and "certificate True" in out


def test_cover_writes_json(tmp_path, capsys):
    f = tmp_path / "c.json"
    code, _, _ = run(capsys, "cover", "-r", "6", "-o", str(f))
    doc = json.loads(f.read_text())
    assert code == 0 and doc["size"] == 43 and doc["r"] == 6


def test_cover_stdout_artifact(capsys):
    code, out, _ = run(capsys, "cover", "-r", "5", "-o", "-")
    assert code == 0 and json.loads(out)["size"] == 22


def test_cover_construct_small_r(capsys):
    code, _, err = run(capsys, "cover", "-r", "4")
    assert code == 2 and "r >= 5" in err


def test_cover_exact_bf3_edge(capsys):
    code, out, _ = run(capsys, "cover", "-r", "3", "--method", "exact", "--mode", "edge")
    assert code == 0 and "status      optimal" in out and "size        8" in out


def test_cover_greedy(capsys):
    code, out, _ = run(capsys, "cover", "-r", "3", "--method", "greedy")
    assert code == 0 and "verified    True" in out


def test_cover_guard(capsys):
    code, _, err = run(capsys, "cover", "-r", "3", "--method", "greedy", "--guard", "10")
    assert code == 1 and "guard" in err.lower()


def test_cover_budget_exit(capsys):
    code, out, _ = run(capsys, "cover", "-r", "4", "--method", "exact", "--budget", "5")
    assert code == 1 and "budget_exceeded" in out


def test_edge_cover_construct(capsys):
    code, out, _ = run(capsys, "cover", "-r", "4", "--mode", "edge")
    assert code == 0 and "partition   True" in out and "certificate True" in out


@pytest.mark.parametrize("fmt", ["json", "dot", "edgelist"])
def test_gen_verify_round_trip(tmp_path, capsys, fmt):
    f = tmp_path / f"bf.{fmt}"
    assert run(capsys, "gen", "-r", "4", "--format", fmt, "-o", str(f))[0] == 0
    code, out, _ = run(capsys, "verify", "--graph", str(f))
    assert code == 0 and "identical" in out


def test_gen_without_output_prints_summary(capsys):
    code, out, _ = run(capsys, "gen", "-r", "3")
    assert code == 0 and "32 vertices, 48 edges" in out


def test_verify_detects_missing_path(tmp_path, capsys):
    f = tmp_path / "c.json"
    run(capsys, "cover", "-r", "5", "-o", str(f))
    doc = json.loads(f.read_text())
    doc["paths"].pop(0)
    doc["size"] -= 1
    f.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", "-r", "5", "--cover", str(f))
    assert code == 1 and "missing     L" in out and "valid       False" in out


def test_edge_partition_then_verify(tmp_path, capsys):
    f = tmp_path / "d.json"
    code, _, _ = run(capsys, "edge-partition", "-r", "3", "--as", "diametrals", "-o", str(f))
    assert code == 0
    code, out, _ = run(capsys, "verify", "-r", "3", "--cover", str(f))
    assert code == 0 and "disjoint    True" in out and "paths       8" in out


def test_edge_partition_cycles(tmp_path, capsys):
    f = tmp_path / "p.json"
    assert run(capsys, "edge-partition", "-r", "4", "--as", "cycles", "-o", str(f))[0] == 0
    doc = json.loads(f.read_text())
    assert len(doc["cycles"]) == 8 and doc["diametrals"] == []


@pytest.mark.parametrize("r", range(5, 10))
def test_construct_then_verify(tmp_path, capsys, r):
    f = tmp_path / "c.json"
    assert run(capsys, "cover", "-r", str(r), "-o", str(f))[0] == 0
    assert run(capsys, "verify", "-r", str(r), "--cover", str(f))[0] == 0


@pytest.mark.slow
@pytest.mark.parametrize("r", [10, 11, 12])
def test_construct_then_verify_large(tmp_path, capsys, r):
    f = tmp_path / "c.json"
    assert run(capsys, "cover", "-r", str(r), "-o", str(f))[0] == 0
    assert run(capsys, "verify", "-r", str(r), "--cover", str(f))[0] == 0


def test_instance_file(tmp_path, capsys):
    inst = tmp_path / "i.json"
    inst.write_text(json.dumps({"graph": {"complete_bipartite": 4}}))
    out = tmp_path / "res.json"
    code, text, _ = run(capsys, "cover", "--instance", str(inst), "--method", "exact", "-o", str(out))
    assert code == 0 and "optimal" in text
    assert json.loads(out.read_text())["size"] == 3


def test_stats(capsys):
    code, out, _ = run(capsys, "stats", "-r", "4")
    assert code == 0 and "vertices    80" in out and "(2,4)-edges 64" in out


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--r-min", "3", "--r-max", "5")
    assert code == 0 and len(out.strip().splitlines()) == 4


@pytest.mark.parametrize(
    "argv",
    [
        ["cover"],
        ["cover", "-r", "99"],
        ["verify"],
        ["verify", "-r", "3", "--cover", "/nonexistent.json"],
        ["edge-partition", "-r", "2"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_cover_file(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text("{oops")
    assert run(capsys, "verify", "-r", "3", "--cover", str(f))[0] == 2


def test_bad_graph_file(tmp_path, capsys):
    f = tmp_path / "bad.edgelist"
    f.write_text("# butterfly r=3 n=32 m=1\n0 8\n")
    assert run(capsys, "verify", "--graph", str(f))[0] == 2


def test_unknown_flag_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "bfcover", "cover", "--frobnicate"], capture_output=True, text=True
    )
    assert proc.returncode == 2 and "usage" in proc.stderr
