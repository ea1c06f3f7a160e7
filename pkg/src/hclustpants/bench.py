"""Benchmark suites comparing algorithm costs with oracle optima and bounds."""

from __future__ import annotations

import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import generators
from .oracle import MAX_SITES, evaluate_cost, optimal_clustering
from .quadtree import clustering_cost_perimeter, quadtree_clustering
from .treecluster import clustering_cost_mst, cluster_by_tree_splitting, entropy_lower_bound
from .hyperbolic import mst_hull_ratio, well_separated_subset

SUITES = ("metric", "star", "euclid", "msthull")
DEFAULT_SIZES = {
    "metric": [6, 7, 8, 9, 10],
    "star": [8, 16, 32, 64, 128, 256],
    "euclid": [4, 5, 6, 7, 8, 9],
    "msthull": [20, 50, 100],
}


@dataclass
class BenchRow:
    suite: str
    n: int
    seed: int
    cost: float
    oracle: float | None
    lower_bound: float | None
    ratio_oracle: float | None
    ratio_lower: float | None
    normalized: float | None = None


def instance_rng(suite: str, n: int, seed: int) -> np.random.Generator:
    return np.random.default_rng([SUITES.index(suite), n, seed])


def _metric_row(n: int, seed: int) -> BenchRow:
    d = generators.random_metric(n, instance_rng("metric", n, seed))
    h = cluster_by_tree_splitting(d)
    cost = clustering_cost_mst(h, d).total_cost
    lb = entropy_lower_bound(d)
    opt = optimal_clustering(d).optimal_cost if n <= MAX_SITES else None
    return BenchRow("metric", n, seed, cost, opt, lb, cost / opt if opt else None, cost / lb if lb else None)


def _star_row(n: int, seed: int) -> BenchRow:
    d = generators.star_metric(n)
    h = cluster_by_tree_splitting(d)
    cost = clustering_cost_mst(h, d).total_cost
    lb = entropy_lower_bound(d)
    opt = optimal_clustering(d).optimal_cost if n <= MAX_SITES else None
    return BenchRow(
        "star", n, seed, cost, opt, lb,
        cost / opt if opt else None,
        cost / lb if lb else None,
        cost / (n * math.log2(n)) if n > 1 else None,
    )


def _euclid_row(n: int, seed: int) -> BenchRow:
    p = generators.uniform_square(n, instance_rng("euclid", n, seed))
    h = quadtree_clustering(p)
    report = clustering_cost_perimeter(h, p)
    cost = evaluate_cost(h, points=p, objective="perimeter_sum")
    opt = optimal_clustering(points=p, objective="perimeter_sum").optimal_cost if n <= MAX_SITES else None
    lb = report.lower_bound
    return BenchRow("euclid", n, seed, cost, opt, lb, cost / opt if opt else None, cost / lb if lb else None)


def _msthull_row(n: int, seed: int) -> BenchRow:
    p = generators.hyperbolic_disk(n, 4.0, instance_rng("msthull", n, seed))
    chosen = well_separated_subset(p, 1.0).chosen
    if len(chosen) < 2:
        return BenchRow("msthull", n, seed, math.nan, None, None, None, None, None)
    ratio = mst_hull_ratio(p[chosen], 1.0)
    return BenchRow("msthull", n, seed, ratio, None, None, None, None, ratio)


_RUNNERS = {"metric": _metric_row, "star": _star_row, "euclid": _euclid_row, "msthull": _msthull_row}


def _run_one(args: tuple[str, int, int]) -> BenchRow:
    suite, n, seed = args
    return _RUNNERS[suite](n, seed)


def run_suite(suite: str, sizes=None, seeds: int = 10, jobs: int = 1) -> list[BenchRow]:
    """Rows ordered by (size, seed) however many workers run them."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}, expected one of {SUITES}")
    sizes = list(sizes or DEFAULT_SIZES[suite])
    if suite in ("metric", "euclid") and max(sizes) > MAX_SITES:
        raise ValueError(f"oracle comparisons are limited to n <= {MAX_SITES}")
    n_seeds = 1 if suite == "star" else seeds
    tasks = [(suite, n, s) for n in sorted(sizes) for s in range(n_seeds)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_one, tasks))
    return [_run_one(t) for t in tasks]


def _finite(values) -> list[float]:
    return [v for v in values if v is not None and math.isfinite(v)]


def summarize(rows: list[BenchRow]) -> dict:
    """Aggregate max/mean per size and overall for each ratio column."""
    out: dict = {"by_size": {}, "overall": {}}
    columns = ("ratio_oracle", "ratio_lower", "normalized")

    def agg(subset):
        stats = {}
        for col in columns:
            vals = _finite(getattr(r, col) for r in subset)
            if vals:
                stats[col] = {"max": max(vals), "mean": math.fsum(vals) / len(vals), "min": min(vals)}
        return stats

    for n in sorted({r.n for r in rows}):
        out["by_size"][str(n)] = agg([r for r in rows if r.n == n])
    out["overall"] = agg(rows)
    return out


def report(suite: str, rows: list[BenchRow], seeds: int) -> dict:
    return {
        "suite": suite,
        "seeds": seeds,
        "rows": [asdict(r) for r in rows],
        "summary": summarize(rows),
    }


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _cell(v) -> str:
    if v is None or (isinstance(v, float) and not math.isfinite(v)):
        return "-"
    if isinstance(v, float):
        return f"{v:.4f}"
    return str(v)


def format_table(rep: dict, stream=None) -> str:
    stream = stream or sys.stdout
    bold, reset = ("\x1b[1m", "\x1b[0m") if _use_color(stream) else ("", "")
    header = ["n", "ratio_oracle max", "mean", "ratio_lower max", "mean", "normalized max", "mean"]
    lines = [f"{bold}suite {rep['suite']}{reset}", bold + "  ".join(f"{h:>16}" for h in header) + reset]
    sections = list(rep["summary"]["by_size"].items()) + [("all", rep["summary"]["overall"])]
    for n, stats in sections:
        cells = [n]
        for col in ("ratio_oracle", "ratio_lower", "normalized"):
            s = stats.get(col)
            cells += [_cell(s["max"]), _cell(s["mean"])] if s else ["-", "-"]
        lines.append("  ".join(f"{c:>16}" for c in cells))
    return "\n".join(lines) + "\n"
