import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hclustpants import generators
from hclustpants.oracle import evaluate_cost
from hclustpants.treecluster import (
    APPROXIMATION_RATIO,
    SEPARATOR_FRACTION,
    WeightedTree,
    best_split_edge,
    check_metric,
    cluster_by_tree_splitting,
    clustering_cost_mst,
    entropy_lower_bound,
    entropy_lower_bound_from_weights,
    entropy_sum,
    entropy_upper_bound,
    forest_lower_bound_from_weights,
    mst_edges,
    mst_metric,
    rank_code_sum,
    rank_sum,
    split_side_weights,
    split_tree,
    ternarize,
)

from _oracles import brute_mst_weight, components, edge_scan_split


def test_approximation_ratio_constant():
    assert APPROXIMATION_RATIO == pytest.approx(3.4190226, abs=1e-7)


@pytest.mark.parametrize("seed", range(6))
def test_mst_matches_cayley_enumeration(seed):
    d = generators.random_metric(6, seed)
    got = math.fsum(w for _, _, w in mst_edges(d))
    assert got == pytest.approx(brute_mst_weight(d), rel=1e-12)


def test_mst_cayley_seven_points():
    d = generators.random_metric(7, 99)
    assert math.fsum(w for _, _, w in mst_edges(d)) == pytest.approx(brute_mst_weight(d), rel=1e-12)


def test_mst_tie_breaks_are_deterministic():
    d = generators.star_metric(5)
    assert mst_edges(d) == [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)]


@pytest.mark.parametrize(
    "bad",
    [np.array([[0, 1], [2, 0]]), np.array([[1.0]]), np.array([[0, -1], [-1, 0]]), np.zeros((2, 3))],
)
def test_check_metric_rejects(bad):
    with pytest.raises(ValueError):
        check_metric(bad)


def _star_tree(k: int) -> WeightedTree:
    return WeightedTree(k + 1, [(0, i, float(i)) for i in range(1, k + 1)])


@pytest.mark.parametrize("k", [3, 4, 5, 9])
def test_ternarize_bounds_degree(k):
    t = ternarize(_star_tree(k))
    assert max(t.degrees()) <= 3
    assert t.total_length == _star_tree(k).total_length
    assert sorted(x for x in t.tags if x is not None) == list(range(k + 1))
    assert len(components(t.n_vertices, t.edges)) == 1


def test_ternarize_respects_order():
    t = _star_tree(5)
    out = ternarize(t, {0: [5, 4, 3, 2, 1]})
    adj = out.adjacency()
    assert sorted(nb for nb, _ in adj[0] if out.tags[nb] is not None) == [4, 5]


def test_ternarize_rejects_bad_order():
    with pytest.raises(ValueError):
        ternarize(_star_tree(5), {0: [1, 2, 3]})


@pytest.mark.parametrize("seed", range(40))
def test_best_split_matches_edge_scan(seed):
    edges, n = generators.random_degree3_tree(int(np.random.default_rng(seed).integers(2, 25)), seed)
    t = WeightedTree(n, edges)
    k = best_split_edge(t)
    _, heavy_ref = edge_scan_split(n, edges)
    lo, hi = split_side_weights(t, k)
    assert max(lo, hi) == pytest.approx(heavy_ref, abs=1e-9)
    assert max(lo, hi) <= SEPARATOR_FRACTION * t.total_length + 1e-12


def test_best_split_lowest_index_on_ties():
    t = WeightedTree(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)])
    assert best_split_edge(t) == 1
    t = WeightedTree(3, [(0, 1, 1.0), (1, 2, 1.0)])
    assert best_split_edge(t) == 0


def test_split_tree_discards_untagged_sides():
    # tagged 0 and 1, plus an untagged leaf hanging off a zero edge
    t = WeightedTree(3, [(0, 1, 1.0), (1, 2, 5.0)], [0, 1, None])
    h, records = split_tree(t)
    assert h.root in ((0, 1), (1, 0))
    assert all(r.heavier <= SEPARATOR_FRACTION * r.total + 1e-12 for r in records)


def test_p4_metric_clusters_to_five():
    d = np.array([[0, 1, 2, 2], [1, 0, 1, 2], [2, 1, 0, 1], [2, 2, 1, 0]], dtype=float)
    h = cluster_by_tree_splitting(d)
    assert clustering_cost_mst(h, d).total_cost == 5.0


def test_single_and_pair():
    assert cluster_by_tree_splitting(np.zeros((1, 1))).root == 0
    d = np.array([[0.0, 2.0], [2.0, 0.0]])
    report = clustering_cost_mst(cluster_by_tree_splitting(d), d)
    assert report.total_cost == 2.0
    assert report.lower_bound == 1.0


def test_star_metric_cost_within_bounds():
    for n in (4, 8, 16, 33):
        d = generators.star_metric(n)
        r = clustering_cost_mst(cluster_by_tree_splitting(d), d)
        assert r.lower_bound <= r.total_cost <= r.upper_bound
        assert r.ratio <= APPROXIMATION_RATIO


def test_level_costs_sum_to_total():
    d = generators.random_metric(12, 3)
    r = clustering_cost_mst(cluster_by_tree_splitting(d), d)
    assert math.fsum(r.level_costs) == pytest.approx(r.total_cost)
    assert r.level_costs[0] == pytest.approx(math.fsum(w for _, _, w in mst_edges(d)))


@given(st.integers(2, 14), st.integers(0, 2**32 - 1))
def test_ratio_and_upper_bound_property(n, seed):
    d = generators.random_metric(n, seed)
    h, records = cluster_by_tree_splitting(d, return_splits=True)
    r = clustering_cost_mst(h, d)
    assert sorted(h.sites) == list(range(n))
    assert r.total_cost <= APPROXIMATION_RATIO * r.lower_bound * (1 + 1e-12)
    assert r.total_cost <= r.upper_bound * (1 + 1e-12)
    assert all(x.heavier <= SEPARATOR_FRACTION * x.total + 1e-12 * max(1.0, x.total) for x in records)


@given(st.integers(2, 10), st.integers(0, 2**32 - 1))
def test_cost_evaluators_agree_exactly(n, seed):
    d = generators.random_metric(n, seed)
    h = cluster_by_tree_splitting(d)
    assert clustering_cost_mst(h, d).total_cost == evaluate_cost(h, d)


def test_euclidean_metric_path():
    p = generators.uniform_square(30, 4)
    d = np.hypot(*(p[:, None, :] - p[None, :, :]).transpose(2, 0, 1))
    r = clustering_cost_mst(cluster_by_tree_splitting(d), d)
    assert r.lower_bound <= r.total_cost <= r.upper_bound


weights = st.lists(st.floats(1e-6, 1e6), min_size=1, max_size=40)


@given(weights)
def test_bound_chain(ws):
    lb = entropy_lower_bound_from_weights(ws)
    forest = forest_lower_bound_from_weights(ws)
    assert lb <= forest * (1 + 1e-12)


@given(weights)
def test_rank_entropy_inequalities(ws):
    h = entropy_sum(ws)
    assert rank_code_sum(ws) >= 0.5 * h - 1e-9 * max(1.0, h)
    assert rank_sum(ws) <= h + 1e-9 * max(1.0, h)


def test_entropy_bounds_of_metric():
    d = generators.star_metric(5)
    w = [1.0] * 4
    assert entropy_lower_bound(d) == pytest.approx(0.5 * 4 * (1 + 2))
    assert entropy_upper_bound(d) == pytest.approx(4 * (1 + math.log(4, 1.5)))
    assert mst_metric(d).total_length == sum(w)
