import json
import subprocess
import sys

import pytest

from conftest import DATA
from ms2dist.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dist_text(capsys):
    code, out, _ = run(capsys, "dist", "--input", str(DATA / "bistable.txt"))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "UGUACCGGAAGGUGCGAAUCUUCCG"
    assert lines[1] == "1234567890123456789012345"
    assert "Number of Nodes: 4" in lines and "Number of edges: 5" in lines
    assert " 4. ....((....))(....).......\t(4,13)\t-> (13,18)" in lines
    assert lines[-1] == "MS2 Distance: 11"


def test_dist_json(capsys):
    code, out, _ = run(capsys, "dist", "--input", str(DATA / "collosoma.txt"), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["distance"] == 20 and doc["method"] == "exact"
    assert doc["counts"] == {"removals": 5, "additions": 8, "shifts": 7}


@pytest.mark.parametrize("method", ["exact", "near", "greedy", "bnb", "pk"])
def test_every_method(capsys, method):
    code, out, _ = run(capsys, "dist", "--input", str(DATA / "toy20.txt"), "--method", method)
    assert code == 0 and out.rstrip().endswith(tuple(f"MS2 Distance: {d}" for d in range(1, 15)))


def test_general_relation_summary(capsys):
    code, out, _ = run(capsys, "graph", "--input", str(DATA / "collosoma.txt"), "--relation", "general")
    assert code == 0
    assert out.splitlines()[:3] == ["Number of Nodes: 12", "Number of edges: 71", "Number of cycles: 5"]
    assert "X1 = {10, 23, 31, 45} type=4" in out


def test_graph_dot(capsys):
    code, out, _ = run(capsys, "graph", "--input", str(DATA / "bistable.txt"), "--emit", "dot")
    assert code == 0 and out.startswith("digraph G {")
    assert '"(18,13,4)" -> "(19,12,5)";' in out


def test_coarse(capsys):
    code, out, _ = run(capsys, "graph", "--input", str(DATA / "toy20.txt"), "--coarse", "--emit", "dot")
    assert code == 0 and out.startswith("digraph coarse {")


def test_bad_input(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("((..)\n(....)\n")
    code, _, err = run(capsys, "dist", "--input", str(bad))
    assert code == 2 and err.startswith("ms2dist:")
    code, _, _ = run(capsys, "dist", "--input", str(tmp_path / "missing.txt"))
    assert code == 2


def test_sequence_mismatch(capsys, tmp_path):
    f = tmp_path / "pair.txt"
    f.write_text("AAAAAAAAAA\n((......))\n..........\n")
    assert run(capsys, "dist", "--input", str(f))[0] == 2


def test_cycle_cap_exit(capsys):
    code, _, err = run(capsys, "dist", "--input", str(DATA / "toy20.txt"), "--max-cycles", "1")
    assert code == 3 and "cycles" in err


def test_bench(capsys, tmp_path):
    out = tmp_path / "b.csv"
    code, msg, _ = run(capsys, "bench", "--lengths", "10:20:10", "--seqs", "1", "--structs", "3",
                       "--out", str(out), "--methods", "exact,pk")
    assert code == 0 and "wrote 12 records" in msg
    assert out.read_text().splitlines()[0] == "id,n,method,distance,removals,additions,shifts,nodes,edges,cycles,truncated,micros"
    assert run(capsys, "bench", "--lengths", "10:20:0", "--out", str(out))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ms2dist", "dist", "--input", "-"],
                          input="-\n((((....))))\n(((......)))\n", capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.rstrip().endswith("MS2 Distance: 1")
