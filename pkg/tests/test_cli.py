import json
import subprocess
import sys

import pytest

from ringged.cli import main
from ringged.datasets import read_bounds_csv
from ringged.graph import GraphCollection, SYMBOL, LabeledGraph, constant_cost_model, load_collection, save_collection
from ringged.heuristics import HeuristicConfig, upper_bound


@pytest.fixture
def trees(tmp_path):
    out = tmp_path / "trees.json"
    assert main(["generate", "--sizes", "4-6", "--alphabet", "2", "--count", "4", "--seed", "3",
                 "--out", str(out)]) == 0
    return out


def test_generate_is_byte_identical(tmp_path, trees):
    again = tmp_path / "again.json"
    main(["generate", "--sizes", "4-6", "--alphabet", "2", "--count", "4", "--seed", "3", "--out", str(again)])
    assert trees.read_bytes() == again.read_bytes()
    coll = load_collection(trees)
    assert len(coll) == 4 and all(set(g.nodes) <= {"1", "2"} for g in coll.graphs)


def test_generate_single_label(tmp_path):
    out = tmp_path / "k1.json"
    assert main(["generate", "--sizes", "8-12", "--count", "20", "--out", str(out)]) == 0
    assert {lab for g in load_collection(out).graphs for lab in g.nodes} == {"1"}


def test_generate_infeasible_exit_code(tmp_path, capsys):
    assert main(["generate", "--sizes", "4-4", "--count", "3", "--out", str(tmp_path / "x.json")]) == 2
    assert "only 2" in capsys.readouterr().err


def test_compute_two_graphs(tmp_path):
    g = LabeledGraph.from_edge_list("g", "ab", [(0, 1)], class_label="x")
    h = LabeledGraph.from_edge_list("h", "abc", [(0, 1), (1, 2)], class_label="y")
    ds = tmp_path / "two.json"
    save_collection(GraphCollection([g, h], SYMBOL, SYMBOL), ds)
    out = tmp_path / "b.csv"
    assert main(["compute", "--dataset", str(ds), "--method", "ring_opt", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 4 and lines[-1].startswith("#avg")
    bounds = read_bounds_csv(out)
    lib = upper_bound(g, h, HeuristicConfig("ring_opt"), constant_cost_model()).bound
    assert bounds[("g", "h")] == lib


def test_threads_do_not_change_bounds(tmp_path, trees):
    one, two = tmp_path / "1.csv", tmp_path / "2.csv"
    for out, t in ((one, "1"), (two, "2")):
        assert main(["compute", "--dataset", str(trees), "--method", "ring_ms", "--solutions", "3",
                     "--threads", t, "--out", str(out)]) == 0
    assert read_bounds_csv(one) == read_bounds_csv(two)
    assert len(read_bounds_csv(one)) == 12


def test_compute_errors(tmp_path, trees):
    out = str(tmp_path / "x.csv")
    assert main(["compute", "--dataset", str(trees), "--method", "ring_ml", "--out", out]) == 2
    assert main(["compute", "--dataset", str(tmp_path / "missing.json"), "--out", out]) == 2
    assert main(["compute", "--dataset", str(trees), "--threads", "0", "--out", out]) == 2
    assert main(["compute", "--dataset", str(trees), "--L", "2", "--lam", "1,0,0", "--out", out]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["compute", "--dataset", str(trees), "--method", "walks", "--out", out])
    assert exc.value.code == 2


def test_train_ring_params_and_compute(tmp_path, trees):
    params = tmp_path / "p.json"
    args = ["train", "--dataset", str(trees), "--mode", "ring_params", "--mu", "1", "--restarts", "2",
            "--max-graphs", "3", "--seed", "1", "--out", str(params)]
    assert main(args) == 0
    doc = json.loads(params.read_text())
    assert {"L", "alpha", "lambda", "seed"} <= set(doc) and len(doc["lambda"]) == doc["L"]
    first = params.read_text()
    assert main(args) == 0 and params.read_text() == first
    out = tmp_path / "b.csv"
    assert main(["compute", "--dataset", str(trees), "--params", str(params), "--out", str(out)]) == 0


def test_train_model_and_compute_ring_ml(tmp_path, trees):
    model = tmp_path / "m.json"
    assert main(["train", "--dataset", str(trees), "--mode", "ml_model", "--L", "2", "--kernel-only",
                 "--out", str(model)]) == 0
    doc = json.loads(model.read_text())
    assert doc["L"] == 2 and doc["dim"] == 22 and doc["density"] is False
    out = tmp_path / "b.csv"
    assert main(["compute", "--dataset", str(trees), "--method", "ring_ml", "--model", str(model),
                 "--solutions", "2", "--out", str(out)]) == 0
    assert all(b >= 0 for b in read_bounds_csv(out).values())


def test_evaluate_knn(tmp_path, capsys):
    graphs = [LabeledGraph.from_edge_list(f"g{i}", ["a"], [], class_label=c) for i, c in enumerate("xxyy")]
    ds = tmp_path / "k.json"
    save_collection(GraphCollection(graphs, SYMBOL, SYMBOL), ds)
    csv = tmp_path / "k.csv"
    rows = ["g_id,h_id,bound,seconds"]
    for a in graphs:
        for b in graphs:
            if a is not b:
                rows.append(f"{a.id},{b.id},{0.0 if a.class_label == b.class_label else 9.0},0")
    csv.write_text("\n".join(rows) + "\n")
    assert main(["evaluate-knn", "--dataset", str(ds), "--bounds", str(csv)]) == 0
    assert "r = 1.000000" in capsys.readouterr().out
    # inverted distances: every nearest neighbour has the other class
    csv.write_text("\n".join(r.replace(",0.0,", ",X,").replace(",9.0,", ",0.0,").replace(",X,", ",9.0,")
                             for r in rows) + "\n")
    assert main(["evaluate-knn", "--dataset", str(ds), "--bounds", str(csv)]) == 0
    assert "r = 0.000000" in capsys.readouterr().out


def test_single_class_knn(tmp_path, trees, capsys):
    out = tmp_path / "b.csv"
    main(["compute", "--dataset", str(trees), "--method", "node_only", "--out", str(out)])
    assert main(["evaluate-knn", "--dataset", str(trees), "--bounds", str(out)]) == 0
    assert "r = 1.000000" in capsys.readouterr().out


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "ringged.cli", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "generate" in res.stdout
