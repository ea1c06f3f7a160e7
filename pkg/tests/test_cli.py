import json
import subprocess
import sys
from pathlib import Path

import pytest

from hclustpants.cli import EXIT_INPUT, EXIT_PRECONDITION, EXIT_VALIDATION, main
from hclustpants.files import loads_result

FIX = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_oracle_p4(capsys):
    code, out, _ = run(capsys, "cluster", FIX / "p4_graph.json", "--algorithm", "oracle")
    assert code == 0
    assert loads_result(out).costs["total"] == 5


def test_metric_tree_p4(capsys):
    code, out, _ = run(capsys, "cluster", FIX / "p4_graph.json", "--algorithm", "metric-tree")
    r = loads_result(out)
    assert r.costs["total"] <= 3.42 * r.costs["lower_bound"]
    assert r.costs["ratio"] == pytest.approx(r.costs["total"] / r.costs["lower_bound"])


def test_quadtree_l_instance(capsys):
    code, out, _ = run(capsys, "cluster", FIX / "l_instance.json", "--algorithm", "euclid-quadtree")
    r = loads_result(out)
    assert code == 0
    assert r.costs["pants_length"] == pytest.approx(2.0, abs=0.05)


def test_cluster_deterministic(capsys):
    a = run(capsys, "cluster", FIX / "five_points.json", "--algorithm", "euclid-quadtree")
    b = run(capsys, "cluster", FIX / "five_points.json", "--algorithm", "euclid-quadtree")
    assert a == b


def test_timings_flag(capsys):
    _, out, _ = run(capsys, "cluster", FIX / "p4_graph.json", "--timings")
    assert "cluster_s" in loads_result(out).timings


def test_incompatible_algorithm(capsys):
    code, _, err = run(capsys, "cluster", FIX / "p4_graph.json", "--algorithm", "euclid-quadtree")
    assert code == EXIT_INPUT
    assert "cannot run" in err


def test_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"version": 1, "kind": "metric", "n": 2, "matrix": [[0, 1], [3, 0]]}')
    code, _, err = run(capsys, "cluster", bad)
    assert code == EXIT_INPUT
    assert "matrix[0][1]" in err


def test_oracle_size_limit(tmp_path, capsys):
    path = tmp_path / "big.json"
    assert main(["generate", "uniform-square", "--n", "16", "--seed", "1", "-o", str(path)]) == 0
    code, _, _ = run(capsys, "cluster", path, "--algorithm", "oracle")
    assert code == EXIT_PRECONDITION


def test_delta_out_of_range(tmp_path, capsys):
    path = tmp_path / "h.json"
    main(["generate", "hyperbolic-disk", "--n", "10", "-o", str(path)])
    code, _, _ = run(capsys, "cluster", path, "--algorithm", "hyperbolic", "--delta", "20")
    assert code == EXIT_PRECONDITION
    code, out, _ = run(capsys, "cluster", path, "--algorithm", "hyperbolic", "--delta", "0.5")
    assert code == 0 and loads_result(out).extra["delta"] == 0.5


def test_pants_l_instance(capsys, tmp_path):
    out_path = tmp_path / "pants.json"
    code, _, _ = run(capsys, "pants", FIX / "l_instance.json", "-o", out_path)
    assert code == 0
    r = loads_result(out_path.read_text())
    assert len(r.curves) == 1
    assert r.validation["ok"]
    assert r.costs["pants_length"] <= 2.05


def test_pants_random(tmp_path, capsys):
    path = tmp_path / "u.json"
    main(["generate", "uniform-square", "--n", "10", "--seed", "3", "-o", str(path)])
    code, out, _ = run(capsys, "pants", path)
    r = loads_result(out)
    assert code == 0 and len(r.curves) == 8 and r.validation["ok"]


def test_pants_collinear(tmp_path, capsys):
    path = tmp_path / "line.json"
    path.write_text(json.dumps({"version": 1, "kind": "euclidean", "n": 5, "points": [[i, 0] for i in (0, 1, 2, 4, 8)]}))
    code, out, _ = run(capsys, "pants", path)
    assert code == 0 and loads_result(out).validation["ok"]


def test_pants_too_small(tmp_path, capsys):
    path = tmp_path / "two.json"
    path.write_text(json.dumps({"version": 1, "kind": "euclidean", "n": 2, "points": [[0, 0], [1, 0]]}))
    code, _, _ = run(capsys, "pants", path)
    assert code == EXIT_PRECONDITION


def test_pants_validation_failure_exit(monkeypatch, capsys):
    from hclustpants import cli
    from hclustpants.pants import ValidationReport

    monkeypatch.setattr(cli, "validate_pants", lambda d, p: ValidationReport(pants=False, problems=["forced"]))
    code, out, err = run(capsys, "pants", FIX / "l_instance.json")
    assert code == EXIT_VALIDATION
    assert "forced" in err
    assert loads_result(out).validation["ok"] is False


def test_bisect_and_count(capsys):
    code, out, _ = run(capsys, "bisect", FIX / "p4_tree.json")
    assert code == 0 and json.loads(out)["bisectable"] is True
    code, out, _ = run(capsys, "count", "5")
    assert json.loads(out)["d"] == 2098176
    code, out, _ = run(capsys, "count", "4")
    assert json.loads(out)["d"] == 136
    code, _, _ = run(capsys, "count", "0")
    assert code == EXIT_INPUT


def test_bisect_malformed(tmp_path, capsys):
    path = tmp_path / "cyc.json"
    path.write_text(json.dumps({"version": 1, "kind": "tree", "n": 3, "edges": [[0, 1], [1, 2], [2, 0]]}))
    code, _, err = run(capsys, "bisect", path)
    assert code == EXIT_INPUT


def test_generate(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["generate", "uniform-square", "--n", "20", "--seed", "7", "-o", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["metadata"]["seed"] == 7 and data["n"] == 20
    code, out, _ = run(capsys, "generate", "star-metric", "--n", "8")
    m = json.loads(out)["matrix"]
    assert m[0][1:] == [1.0] * 7 and m[1][2] == 2.0
    code, out, _ = run(capsys, "generate", "graph-metric", "--n", "6", "--seed", "1")
    assert json.loads(out)["kind"] == "metric"
    code, out, _ = run(capsys, "generate", "random-tree", "--n", "9", "--seed", "1")
    assert len(json.loads(out)["edges"]) == 8
    code, _, _ = run(capsys, "generate", "bisectable-tree", "--n", "12")
    assert code == EXIT_INPUT
    code, _, _ = run(capsys, "generate", "nonsense", "--n", "3")
    assert code == EXIT_INPUT


def test_every_algorithm_on_generated(tmp_path, capsys):
    sq, hy, gm = tmp_path / "sq.json", tmp_path / "hy.json", tmp_path / "gm.json"
    main(["generate", "uniform-square", "--n", "9", "--seed", "2", "-o", str(sq)])
    main(["generate", "hyperbolic-disk", "--n", "40", "--seed", "2", "--radius", "4", "-o", str(hy)])
    main(["generate", "graph-metric", "--n", "9", "--seed", "2", "-o", str(gm)])
    for path, algorithm in [(sq, "metric-tree"), (sq, "euclid-quadtree"), (sq, "oracle"), (hy, "hyperbolic"), (hy, "metric-tree"), (gm, "oracle")]:
        code, out, _ = run(capsys, "cluster", path, "--algorithm", algorithm)
        assert code == 0, (path, algorithm)
        assert loads_result(out).hierarchy is not None
    code, out, _ = run(capsys, "cluster", sq, "--algorithm", "oracle", "--objective", "perimeter_sum")
    assert code == 0


def test_table_format(capsys):
    code, out, _ = run(capsys, "cluster", FIX / "p4_graph.json", "--format", "table")
    assert code == 0 and "costs.total" in out


def test_render_commands(tmp_path, capsys):
    res = tmp_path / "pants.json"
    main(["pants", str(FIX / "l_instance.json"), "-o", str(res)])
    svg = tmp_path / "out.svg"
    assert main(["render", str(res), "-o", str(svg)]) == 0
    text = svg.read_text()
    assert text.count("<path") == 1
    res2 = tmp_path / "metric.json"
    main(["cluster", str(FIX / "p4_graph.json"), "-o", str(res2)])
    code, _, _ = run(capsys, "render", res2)
    assert code == EXIT_PRECONDITION
    hy, hres = tmp_path / "hy.json", tmp_path / "hres.json"
    main(["generate", "hyperbolic-disk", "--n", "15", "-o", str(hy)])
    main(["cluster", str(hy), "--algorithm", "hyperbolic", "-o", str(hres)])
    code, out, _ = run(capsys, "render", hres)
    assert code == 0 and 'id="boundary"' in out


def test_empty_curves_render_sites_only(tmp_path, capsys):
    res = tmp_path / "r.json"
    main(["cluster", str(FIX / "five_points.json"), "--algorithm", "euclid-quadtree", "-o", str(res)])
    code, out, _ = run(capsys, "render", res)
    assert code == 0 and "<path" not in out and out.count("<circle") == 5


def test_bench_command(capsys):
    code, out, _ = run(capsys, "bench", "metric", "--sizes", "6,7", "--seeds", "5")
    rep = json.loads(out)
    assert rep["summary"]["overall"]["ratio_lower"]["max"] <= 3.42
    code, out, _ = run(capsys, "bench", "msthull", "--sizes", "30", "--seeds", "3", "--format", "table")
    assert code == 0 and "suite msthull" in out


def test_usage_error(capsys):
    assert main(["cluster"]) == EXIT_INPUT


def test_console_script(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "hclustpants.cli", "count", "3"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["d"] == 3
