"""Command-line interface: ``hclustpants <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import bench, generators
from .bisectable import FreeTree, count_bisectable, is_bisectable
from .files import InputError, InstanceFile, ResultFile, dumps, read_instance, read_result
from .geometry import (
    DomainError,
    euclidean_distance_matrix,
    hyperbolic_distance_matrix,
    hyperbolic_hull_perimeter,
    klein_images,
)
from .hierarchy import HierarchyError
from .hyperbolic import cluster_hyperbolic
from .oracle import MAX_SITES, metric_from_graph, optimal_clustering
from .pants import PantsError, hierarchy_to_pants, validate_pants
from .quadtree import clustering_cost_perimeter, quadtree_clustering
from .render import render_svg
from .treecluster import clustering_cost_mst, cluster_by_tree_splitting

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_VALIDATION = 4

ALGORITHMS = ("metric-tree", "euclid-quadtree", "hyperbolic", "oracle")
GENERATOR_KINDS = (
    "uniform-square",
    "hyperbolic-disk",
    "star-metric",
    "graph-metric",
    "random-tree",
    "bisectable-tree",
)


class PreconditionError(Exception):
    """Well-formed input that the requested operation cannot accept."""


class ValidationFailure(Exception):
    def __init__(self, message: str, result: ResultFile):
        super().__init__(message)
        self.result = result


def _metric_of(inst: InstanceFile) -> np.ndarray:
    if inst.kind == "metric":
        return inst.matrix_array()
    if inst.kind in ("graph", "tree"):
        return metric_from_graph(inst.n, inst.edges)
    if inst.kind == "euclidean":
        return euclidean_distance_matrix(inst.points_array())
    return hyperbolic_distance_matrix(inst.points_array())


def _require_kind(inst: InstanceFile, algorithm: str, kinds: tuple[str, ...]) -> None:
    if inst.kind not in kinds:
        raise InputError(f"algorithm {algorithm!r} cannot run on a {inst.kind!r} instance (expects {', '.join(kinds)})")


def _costs(report, **extra) -> dict:
    out = {
        "total": report.total_cost,
        "lower_bound": report.lower_bound,
        "upper_bound": report.upper_bound,
        "ratio": report.ratio if np.isfinite(report.ratio) else None,
        "level_costs": list(report.level_costs),
    }
    out.update(extra)
    return out


def _curves_doc(decomposition) -> list[dict]:
    return [
        {"cluster": list(c.cluster_id), "vertices": c.vertices.tolist(), "length": c.length}
        for c in decomposition.curves
    ]


def cmd_cluster(inst: InstanceFile, algorithm: str, *, objective: str | None = None, delta: float = 1.0) -> ResultFile:
    timings: dict = {}
    start = time.perf_counter()
    points = inst.points if inst.kind in ("euclidean", "hyperbolic") else None
    extra: dict = {}
    if algorithm == "metric-tree":
        d = _metric_of(inst)
        h = cluster_by_tree_splitting(d)
        costs = _costs(clustering_cost_mst(h, d))
        objective = "mst_sum"
    elif algorithm == "euclid-quadtree":
        _require_kind(inst, algorithm, ("euclidean",))
        p = inst.points_array()
        h = quadtree_clustering(p)
        costs = _costs(clustering_cost_perimeter(h, p))
        if inst.n >= 3:
            costs["pants_length"] = hierarchy_to_pants(h, p).total_length
        objective = "perimeter_sum"
    elif algorithm == "hyperbolic":
        _require_kind(inst, algorithm, ("hyperbolic",))
        p = inst.points_array()
        res = cluster_hyperbolic(p, delta)
        h = res.hierarchy
        lb = hyperbolic_hull_perimeter(p) if inst.n > 1 else 0.0
        costs = {
            "total": res.total_perimeter,
            "lower_bound": lb,
            "upper_bound": max(inst.n - 1, 0) * lb,
            "ratio": res.total_perimeter / lb if lb > 0 else None,
            "backbone_cost": res.backbone_cost,
        }
        extra = {
            "delta": delta,
            "centers": list(res.separated.chosen),
            "per_cell_costs": {str(k): v for k, v in res.per_cell_costs.items()},
        }
        objective = "perimeter_sum"
    elif algorithm == "oracle":
        objective = objective or "mst_sum"
        if inst.n > MAX_SITES:
            raise PreconditionError(f"oracle is limited to {MAX_SITES} sites, instance has {inst.n}")
        if objective == "perimeter_sum":
            _require_kind(inst, f"oracle/{objective}", ("euclidean",))
            p = inst.points_array()
            res = optimal_clustering(points=p, objective=objective)
            report = clustering_cost_perimeter(res.hierarchy, p)
        else:
            d = _metric_of(inst)
            res = optimal_clustering(d)
            report = clustering_cost_mst(res.hierarchy, d)
        h = res.hierarchy
        costs = _costs(report)
        costs["total"] = res.optimal_cost
        if costs["lower_bound"]:
            costs["ratio"] = res.optimal_cost / costs["lower_bound"]
        extra = {"subsets_evaluated": res.subsets_evaluated}
    else:
        raise InputError(f"unknown algorithm {algorithm!r}")
    timings["cluster_s"] = time.perf_counter() - start
    return ResultFile(
        kind=inst.kind,
        algorithm=algorithm,
        hierarchy=h,
        costs=costs,
        points=points,
        extra={"objective": objective, **extra},
        timings=timings,
        metadata=dict(inst.metadata),
    )


def cmd_pants(inst: InstanceFile, *, epsilon: float | None = None) -> ResultFile:
    if inst.kind != "euclidean":
        raise InputError(f"pants needs a 'euclidean' instance, got {inst.kind!r}")
    if inst.n < 3:
        raise PreconditionError("a pants decomposition needs at least three sites")
    start = time.perf_counter()
    p = inst.points_array()
    h = quadtree_clustering(p)
    decomposition = hierarchy_to_pants(h, p, epsilon=epsilon)
    report = validate_pants(decomposition, p)
    cost = clustering_cost_perimeter(h, p)
    result = ResultFile(
        kind=inst.kind,
        algorithm="euclid-quadtree",
        hierarchy=h,
        costs=_costs(cost, pants_length=decomposition.total_length),
        curves=_curves_doc(decomposition),
        points=inst.points,
        validation=report.as_dict(),
        extra={"epsilon": decomposition.epsilon},
        timings={"pants_s": time.perf_counter() - start},
        metadata=dict(inst.metadata),
    )
    if not report.ok:
        raise ValidationFailure("; ".join(report.problems), result)
    return result


def cmd_bisect(inst: InstanceFile) -> dict:
    if inst.kind != "tree":
        raise InputError(f"bisect needs a 'tree' instance, got {inst.kind!r}")
    try:
        tree = FreeTree(inst.n, inst.edges)
    except ValueError as exc:
        raise InputError(f"field 'edges': {exc}") from None
    res = is_bisectable(tree)
    return {
        "bisectable": res.bisectable,
        "hierarchy": res.hierarchy.to_nested() if res.hierarchy is not None else None,
        "work": res.work,
        "n": inst.n,
    }


def cmd_count(i: int) -> dict:
    if i < 1:
        raise InputError("i must be at least 1")
    c = count_bisectable(i)
    return {"i": i, "d": c.d, "s": c.s, "a": c.a}


def cmd_generate(kind: str, n: int, seed: int | None, *, radius: float = 3.0, p: float = 0.3, name: str | None = None) -> InstanceFile:
    if kind not in GENERATOR_KINDS:
        raise InputError(f"unknown generator kind {kind!r}, expected one of {GENERATOR_KINDS}")
    if n < 1:
        raise InputError("n must be at least 1")
    rng = np.random.default_rng(seed)
    meta = {"name": name or f"{kind}-{n}", "seed": seed, "generator": kind}
    if kind == "uniform-square":
        return InstanceFile("euclidean", n, points=generators.uniform_square(n, rng).tolist(), metadata=meta)
    if kind == "hyperbolic-disk":
        meta["radius"] = radius
        return InstanceFile("hyperbolic", n, points=generators.hyperbolic_disk(n, radius, rng).tolist(), metadata=meta)
    if kind == "star-metric":
        return InstanceFile("metric", n, matrix=generators.star_metric(n).tolist(), metadata=meta)
    if kind == "graph-metric":
        d, edges = generators.graph_metric(n, p, rng)
        meta["p"] = p
        meta["graph_edges"] = [list(e) for e in edges]
        return InstanceFile("metric", n, matrix=d.tolist(), metadata=meta)
    if kind == "random-tree":
        return InstanceFile("tree", n, edges=[list(e) for e in generators.random_tree(n, rng)], metadata=meta)
    if n & (n - 1):
        raise InputError("bisectable-tree needs n to be a power of two")
    i = n.bit_length() - 1
    edges = generators.random_bisectable_tree(i, rng)
    return InstanceFile("tree", n, edges=[list(e) for e in edges], metadata=meta)


def cmd_render(result: ResultFile) -> str:
    if result.points is None or result.kind not in ("euclidean", "hyperbolic"):
        raise PreconditionError(f"cannot render a {result.kind!r} result without planar points")
    pts = np.asarray(result.points, dtype=float)
    disk = result.kind == "hyperbolic"
    if disk:
        # Klein chart: hyperbolic hulls are straight-edged there
        pts = klein_images(pts)
    clusters = result.hierarchy.clusters() if result.hierarchy is not None else []
    curves = [c["vertices"] for c in result.curves]
    return render_svg(pts, clusters, curves, disk=disk)


def _table(data: dict) -> str:
    rows = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for k in sorted(value):
                walk(f"{prefix}.{k}" if prefix else k, value[k])
        elif isinstance(value, float):
            rows.append((prefix, f"{value:.6g}"))
        else:
            rows.append((prefix, json.dumps(value)))

    walk("", data)
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in rows)


def _result_table(r: ResultFile) -> str:
    summary = {
        "kind": r.kind,
        "algorithm": r.algorithm,
        "hierarchy": r.hierarchy.to_nested() if r.hierarchy is not None else None,
        "costs": {k: v for k, v in r.costs.items() if k != "level_costs"},
    }
    if r.curves:
        summary["curves"] = len(r.curves)
    if r.validation is not None:
        summary["valid"] = r.validation["ok"]
    if r.timings:
        summary["timings"] = r.timings
    return _table(summary)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_doc(doc, fmt: str, output: str | None, table) -> None:
    if fmt == "table":
        sys.stdout.write(table(doc))
        if output:
            Path(output).write_text(dumps(doc))
    else:
        _emit(dumps(doc), output)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hclustpants", description="Hierarchical clustering and pants decompositions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, seed=False):
        p.add_argument("--output", "-o", help="write the result here instead of stdout")
        p.add_argument("--format", choices=("json", "table"), default="json")
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("cluster", help="cluster an instance file")
    p.add_argument("input")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="metric-tree")
    p.add_argument("--objective", choices=("mst_sum", "perimeter_sum"), default=None)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--timings", action="store_true", help="record wall-clock timings in the result")
    common(p)

    p = sub.add_parser("pants", help="pants decomposition of a Euclidean instance")
    p.add_argument("input")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--timings", action="store_true")
    common(p)

    p = sub.add_parser("bisect", help="test a tree for bisectability")
    p.add_argument("input")
    common(p)

    p = sub.add_parser("count", help="count bisectable trees")
    p.add_argument("i", type=int)
    common(p)

    p = sub.add_parser("generate", help="write a random instance")
    p.add_argument("kind", choices=GENERATOR_KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--radius", type=float, default=3.0)
    p.add_argument("--p", type=float, default=0.3, help="edge probability for graph-metric")
    p.add_argument("--name")
    common(p, seed=True)

    p = sub.add_parser("bench", help="run a benchmark suite")
    p.add_argument("suite", choices=bench.SUITES)
    p.add_argument("--sizes", type=lambda s: [int(x) for x in s.split(",")], default=None)
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--rows", action="store_true", help="include per-instance rows in json output")
    common(p)

    p = sub.add_parser("render", help="draw a result file as SVG")
    p.add_argument("input")
    p.add_argument("--output", "-o", help="SVG path (stdout if omitted)")
    return parser


def _run(args) -> int:
    if args.command == "cluster":
        inst = read_instance(args.input)
        result = cmd_cluster(inst, args.algorithm, objective=args.objective, delta=args.delta)
        if not args.timings:
            result.timings = {}
        _emit_doc(result, args.format, args.output, _result_table)
    elif args.command == "pants":
        inst = read_instance(args.input)
        try:
            result = cmd_pants(inst, epsilon=args.epsilon)
        except ValidationFailure as exc:
            _emit_doc(exc.result, args.format, args.output, _result_table)
            raise
        if not args.timings:
            result.timings = {}
        _emit_doc(result, args.format, args.output, _result_table)
    elif args.command == "bisect":
        _emit_doc(cmd_bisect(read_instance(args.input)), args.format, args.output, _table)
    elif args.command == "count":
        _emit_doc(cmd_count(args.i), args.format, args.output, _table)
    elif args.command == "generate":
        inst = cmd_generate(args.kind, args.n, args.seed, radius=args.radius, p=args.p, name=args.name)
        _emit_doc(inst, args.format, args.output, lambda d: _table(d.to_dict()))
    elif args.command == "bench":
        try:
            rows = bench.run_suite(args.suite, args.sizes, args.seeds, args.jobs)
        except ValueError as exc:
            raise PreconditionError(str(exc)) from None
        rep = bench.report(args.suite, rows, args.seeds)
        if args.format == "table":
            sys.stdout.write(bench.format_table(rep))
            if args.output:
                Path(args.output).write_text(dumps(rep))
        else:
            if not args.rows:
                rep = {k: v for k, v in rep.items() if k != "rows"}
            _emit(dumps(rep), args.output)
    elif args.command == "render":
        _emit(cmd_render(read_result(args.input)), args.output)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return _run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationFailure as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (PreconditionError, PantsError, DomainError, HierarchyError, ValueError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
