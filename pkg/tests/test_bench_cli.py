import os
from pathlib import Path

import pytest

from vhembed.bench import (
    CSV_HEADER,
    Cell,
    QuboError,
    SweepPlan,
    parse_qubo,
    records_to_csv,
    run_cell,
    run_sweep,
    summarize,
    summary_to_csv,
)
from vhembed.chimera import ChimeraSpec
from vhembed.cli import main
from vhembed.embedders import pipeline
from vhembed.generators import GeneratorConfig, generate
from vhembed.graph import Graph, format_edge_list

DATA = Path(__file__).parent / "data"


def test_parse_qubo_examples():
    g = parse_qubo("0 0 1.5\n0 1 -2\n1 1 0.5\n")
    assert (g.n, g.m) == (2, 1)
    g = parse_qubo("0 1 0.0\n")
    assert (g.n, g.m) == (2, 0)
    g = parse_qubo((DATA / "qubo10.txt").read_text())
    assert (g.n, g.m) == (10, 12)
    assert parse_qubo("1 0 2\n0 1 2\n").m == 1  # either order, same coefficient


def test_parse_qubo_errors():
    with pytest.raises(QuboError, match="line 2"):
        parse_qubo("0 1 1\n0 1\n")
    with pytest.raises(QuboError, match="line 2"):
        parse_qubo("0 1 1\n1 0 2\n")
    with pytest.raises(QuboError, match="line 1"):
        parse_qubo("0 x 1\n")
    with pytest.raises(QuboError):
        parse_qubo("0 1 nan\n")
    with pytest.raises(QuboError):
        parse_qubo("-1 1 1\n")


def k12_cells():
    return [Cell("k12", "gnp", "high", 12, 0, alg, (), 0) for alg in ("native", "triad")]


def test_sweep_k12_medians(tmp_path):
    spec = ChimeraSpec(4, 3, 3)
    out = tmp_path / "k12.csv"
    recs = run_sweep(k12_cells(), spec, out=out, graphs={"k12": Graph.complete(12)})
    assert len(recs) == 2
    rows = {r.algorithm: r for r in summarize(recs)}
    assert rows["native"].median_qubits == 72 and rows["triad"].median_qubits == 48
    text = out.read_text()
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    assert len(text.splitlines()) == 3
    assert "native,,12,1,1,72" in summary_to_csv(summarize(recs))


def test_single_cell_matches_pipeline():
    spec = ChimeraSpec(4, 8, 8)
    cell = Cell("x", "gnp", "low", 16, 2, "oct-fast", ("qubit",), 1)
    rec = run_cell(cell, spec, restarts=100)
    g = generate(GeneratorConfig("gnp", "low", 16, 2))
    _, m = pipeline(g, spec, "oct-fast", ("qubit",), 1, restarts=100)
    assert rec.success == m["success"] and rec.qubits == m["qubits"] and rec.m == g.m
    row = rec.row()
    assert row[CSV_HEADER.index("success")] == "1" and row[CSV_HEADER.index("reductions")] == "qubit"


def test_timeout_record_and_clean_output(tmp_path):
    spec = ChimeraSpec(4, 8, 8)
    cell = Cell("g", "gnp", "high", 40, 0, "oct-exact", (), 0)
    out = tmp_path / "t.csv"
    recs = run_sweep([cell], spec, timeout_ms=1, out=out)
    assert recs[0].fail_reason == "timeout" and not recs[0].success and recs[0].qubits is None
    lines = out.read_text().splitlines()
    assert len(lines) == 2 and ",0,timeout,," in lines[1]
    assert sorted(os.listdir(tmp_path)) == ["t.csv"]


def test_unwritable_output_fails_before_running(tmp_path):
    with pytest.raises(OSError):
        run_sweep(k12_cells(), ChimeraSpec(4, 3, 3), out=tmp_path / "missing" / "x.csv",
                  graphs={"k12": Graph.complete(12)})


def small_plan(**kw):
    base = dict(families=["gnp", "noisy-bipartite"], densities=["low"], sizes=[8, 12],
                instance_seeds=[0, 1], algo_seeds=[0, 1], algorithms=["triad", "oct-fast+qubit+2ex"],
                restarts=50, record_runtime=False)
    base.update(kw)
    return SweepPlan(**base)


def test_plan_cells_sorted_and_seeded():
    cells = small_plan().cells()
    assert cells == sorted(cells, key=Cell.key)
    # the deterministic embedder runs once per instance, the greedy one per algorithm seed
    assert sum(c.algorithm == "triad" for c in cells) == 8
    assert sum(c.algorithm == "oct-fast" for c in cells) == 16
    plan = small_plan()
    assert SweepPlan.from_json(plan.to_json()) == plan
    with pytest.raises(ValueError):
        SweepPlan.from_json('{"bogus": 1}')
    with pytest.raises(ValueError):
        small_plan(algorithms=["oct-fast+3ex"])


def test_sweep_bit_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_sweep(small_plan(), out=a)
    run_sweep(small_plan(), out=b)
    assert a.read_bytes() == b.read_bytes()


def test_sweep_workers_match_serial(tmp_path):
    serial = records_to_csv(run_sweep(small_plan(sizes=[8])))
    parallel = records_to_csv(run_sweep(small_plan(sizes=[8]), workers=2))
    assert serial == parallel


# ---------------------------------------------------------------------------
# command line

def test_cli_generate_and_embed(tmp_path, capsys):
    g = tmp_path / "g.txt"
    assert main(["generate", "--family", "gnp", "--density", "low", "--n", "12", "--seed", "3", "--out", str(g)]) == 0
    emb = tmp_path / "e.txt"
    assert main(["embed", str(g), "--algorithm", "oct-fast", "--reduce", "qubit,2ex",
                 "--restarts", "50", "--out", str(emb)]) == 0
    assert "qubits=" in capsys.readouterr().err
    assert main(["validate", str(g), str(emb)]) == 0
    assert "valid minor embedding" in capsys.readouterr().out
    # the same embedding is not valid for a different graph
    k = tmp_path / "k.txt"
    k.write_text(format_edge_list(Graph.complete(12)))
    assert main(["validate", str(k), str(emb)]) == 1


def test_cli_generate_into_directory(tmp_path):
    assert main(["generate", "--family", "regular", "--density", "medium", "--n", "10", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "regular_medium_n10_s0.txt").exists()


def test_cli_witness(capsys):
    assert main(["generate", "--witness", "2,1,1"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "3 3"


def test_cli_oct(tmp_path, capsys):
    g = tmp_path / "k5.txt"
    g.write_text(format_edge_list(Graph.complete(5)))
    for method in ("exact", "brute", "greedy"):
        assert main(["oct", str(g), "--method", method, "--restarts", "10"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0].split()[0] == "3" and out[1].startswith("S:")
    assert main(["oct", str(g), "--method", "series-parallel"]) == 1
    assert main(["oct", str(g), "--k-max", "2"]) == 1


def test_cli_qubo_input(tmp_path, capsys):
    assert main(["embed", str(DATA / "qubo10.txt"), "--qubo", "--algorithm", "triad", "--chimera", "4,3,3"]) == 0
    out = capsys.readouterr().out
    assert len(out.splitlines()) == 10


def test_cli_failures_and_usage_errors(tmp_path, capsys):
    g = tmp_path / "k13.txt"
    g.write_text(format_edge_list(Graph.complete(13)))
    assert main(["embed", str(g), "--algorithm", "native", "--chimera", "4,3,3"]) == 1
    assert "capacity" in capsys.readouterr().err
    assert main(["embed", str(tmp_path / "nope.txt")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 x\n")
    assert main(["embed", str(bad)]) == 2
    assert main(["generate", "--family", "gnp"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["embed", str(g), "--chimera", "4,3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["embed", str(g), "--reduce", "3ex"])


def test_cli_sweep(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(small_plan(sizes=[8], instance_seeds=[0]).to_json())
    out, summary = tmp_path / "s.csv", tmp_path / "sum.csv"
    assert main(["sweep", str(plan), "--out", str(out), "--summary", str(summary), "--no-timing"]) == 0
    assert summary.read_text().startswith("algorithm,reductions,n,runs,successes")
    first = out.read_bytes()
    assert main(["sweep", str(plan), "--out", str(out), "--summary", str(summary), "--no-timing"]) == 0
    assert out.read_bytes() == first
    assert main(["sweep", str(plan), "--out", str(tmp_path / "no" / "x.csv")]) == 2
    plan.write_text(small_plan(sizes=[8], instance_seeds=[0], algorithms=["native"]).to_json())
    assert main(["sweep", str(plan), "--out", str(out), "--chimera", "1,1,1"]) == 1
