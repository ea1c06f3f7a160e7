"""Sum-of-spanning-tree hierarchical clustering for finite metric spaces.

The clustering algorithm computes a minimum spanning tree, splits every
vertex of degree above three by zero-length edges, and then recursively cuts
the expanded tree at the edge that minimises the heavier remaining side.
Entropy-style bounds on the optimal cost come from the sorted MST weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .hierarchy import ClusterHierarchy, HierarchyError

SEPARATOR_FRACTION = 2.0 / 3.0
# cost <= 2 log_{3/2} 2 * entropy_lower_bound
APPROXIMATION_RATIO = 2.0 * math.log(2.0) / math.log(1.5)


@dataclass
class WeightedTree:
    """Tree with nonnegative edge lengths.

    ``tags[v]`` is the site index carried by vertex ``v``, or ``None`` for the
    zero-length copies introduced by :func:`ternarize`.
    """

    n_vertices: int
    edges: list[tuple[int, int, float]]
    tags: list[int | None] = field(default_factory=list)

    def __post_init__(self):
        if not self.tags:
            self.tags = list(range(self.n_vertices))
        if len(self.tags) != self.n_vertices:
            raise ValueError("one tag per vertex required")
        if len(self.edges) != max(self.n_vertices - 1, 0):
            raise ValueError(
                f"a tree on {self.n_vertices} vertices has {self.n_vertices - 1} edges, got {len(self.edges)}"
            )
        for u, v, w in self.edges:
            if w < 0 or not math.isfinite(w):
                raise ValueError(f"edge ({u}, {v}) has invalid length {w}")

    @property
    def total_length(self) -> float:
        return math.fsum(w for _, _, w in self.edges)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per vertex, (neighbor, edge index) pairs in edge-list order."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
        for k, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, k))
            adj[v].append((u, k))
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass
class CostReport:
    total_cost: float
    level_costs: list[float]
    lower_bound: float
    upper_bound: float

    @property
    def ratio(self) -> float:
        if self.lower_bound == 0:
            return 1.0 if self.total_cost == 0 else math.inf
        return self.total_cost / self.lower_bound


@dataclass(frozen=True)
class SplitRecord:
    """One recursive cut: weights of the subtree and of its heavier side."""

    total: float
    heavier: float
    edge: tuple[int, int]


def check_metric(m) -> np.ndarray:
    d = np.asarray(m, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {d.shape}")
    if d.shape[0] == 0:
        raise ValueError("empty distance matrix")
    if not np.all(np.isfinite(d)) or np.any(d < 0):
        raise ValueError("distances must be finite and nonnegative")
    if np.any(np.diag(d) != 0):
        raise ValueError("distance matrix must have a zero diagonal")
    if not np.array_equal(d, d.T):
        raise ValueError("distance matrix must be symmetric")
    return d


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def mst_edges(d: np.ndarray) -> list[tuple[int, int, float]]:
    """Kruskal over all pairs, ties by (min index, max index)."""
    n = d.shape[0]
    if n < 2:
        return []
    iu, ju = np.triu_indices(n, k=1)
    w = d[iu, ju]
    order = np.lexsort((ju, iu, w))
    dsu = _DSU(n)
    out = []
    for k in order:
        i, j = int(iu[k]), int(ju[k])
        if dsu.union(i, j):
            out.append((i, j, float(w[k])))
            if len(out) == n - 1:
                break
    return out


def mst_metric(m) -> WeightedTree:
    d = check_metric(m)
    return WeightedTree(d.shape[0], mst_edges(d))


def mst_length(d: np.ndarray, sites: Sequence[int] | None = None) -> float:
    if sites is not None:
        idx = np.asarray(sites, dtype=int)
        d = d[np.ix_(idx, idx)]
    return math.fsum(w for _, _, w in mst_edges(d))


def ternarize(t: WeightedTree, order: dict[int, list[int]] | None = None) -> WeightedTree:
    """Split vertices of degree > 3 with zero-length edges.

    ``order[v]`` lists the neighbors of ``v`` in the sequence used for grouping
    (for planar trees this should be the radial order).  A split keeps the
    first two neighbors on the original vertex and moves the rest to a new
    untagged copy joined by a zero-length edge; the copy is split again if
    needed.
    """
    adj = [[nb for nb, _ in row] for row in t.adjacency()]
    length = {}
    for u, v, w in t.edges:
        length[(u, v)] = length[(v, u)] = w
    if order:
        for v, seq in order.items():
            if sorted(seq) != sorted(adj[v]):
                raise ValueError(f"neighbor order for vertex {v} does not match its adjacency")
            adj[v] = list(seq)

    n = t.n_vertices
    tags = list(t.tags)
    # owner[(v, nb)] = the copy of v that holds the edge towards nb
    owner = {(v, nb): v for v in range(n) for nb in adj[v]}
    new_edges: list[tuple[int, int, float]] = []
    for v in range(n):
        nbrs = adj[v]
        if len(nbrs) <= 3:
            continue
        cur = v
        pending = list(nbrs)
        while len(pending) > (3 if cur == v else 2):
            keep = pending[:2] if cur == v else pending[:1]
            pending = pending[len(keep):]
            copy = len(tags)
            tags.append(None)
            new_edges.append((cur, copy, 0.0))
            for nb in pending:
                owner[(v, nb)] = copy
            cur = copy
    edges = []
    for u, v, w in t.edges:
        edges.append((owner[(u, v)], owner[(v, u)], w))
    edges.extend(new_edges)
    return WeightedTree(len(tags), edges, tags)


def _side_weights(n_vertices: int, edges: Sequence[tuple[int, int, float]], vertices: Sequence[int], edge_ids: Sequence[int]):
    """Root the subtree at vertices[0]; for each edge id return (child vertex, below weight)."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in vertices}
    for k in edge_ids:
        u, v, _ = edges[k]
        adj[u].append((v, k))
        adj[v].append((u, k))
    root = vertices[0]
    parent_edge = {root: -1}
    order = [root]
    stack = [root]
    while stack:
        u = stack.pop()
        for v, k in adj[u]:
            if v not in parent_edge:
                parent_edge[v] = k
                order.append(v)
                stack.append(v)
    if len(order) != len(vertices):
        raise ValueError("subtree is disconnected")
    below = {v: 0.0 for v in vertices}
    child_of_edge = {}
    for v in reversed(order):
        k = parent_edge[v]
        if k >= 0:
            u = edges[k][0] if edges[k][1] == v else edges[k][1]
            child_of_edge[k] = v
            below[u] += below[v] + edges[k][2]
    return adj, below, child_of_edge, order, parent_edge


def best_split_edge(t: WeightedTree) -> int:
    """Index of the edge whose removal minimises the heavier side's length.

    Ties go to the smallest edge index.
    """
    if not t.edges:
        raise ValueError("tree has no edges to split")
    k, _, _ = _best_split(t.edges, list(range(t.n_vertices)), list(range(len(t.edges))))
    return k


def _best_split(edges, vertices, edge_ids):
    _, below, child_of_edge, _, _ = _side_weights(len(vertices), edges, vertices, edge_ids)
    total = math.fsum(edges[k][2] for k in edge_ids)
    best = None
    for k in sorted(edge_ids):
        lower = below[child_of_edge[k]]
        upper = total - lower - edges[k][2]
        heavy = max(lower, upper)
        if best is None or heavy < best[1]:
            best = (k, heavy)
    return best[0], best[1], total


def split_side_weights(t: WeightedTree, k: int) -> tuple[float, float]:
    """Total lengths of the two components left after deleting edge ``k``."""
    _, below, child_of_edge, _, _ = _side_weights(
        t.n_vertices, t.edges, list(range(t.n_vertices)), list(range(len(t.edges)))
    )
    lower = below[child_of_edge[k]]
    return lower, t.total_length - lower - t.edges[k][2]


def split_tree(t: WeightedTree) -> tuple[ClusterHierarchy, list[SplitRecord]]:
    """Recursive balanced-edge splitting of a tagged tree.

    A cut whose side carries no tagged vertex does not create a cluster; that
    side is discarded and the other side is cut again.
    """
    if not any(tag is not None for tag in t.tags):
        raise ValueError("tree carries no sites")
    edges = t.edges
    records: list[SplitRecord] = []

    def component(start: int, edge_ids: set[int], adj) -> tuple[list[int], list[int]]:
        seen = {start}
        stack = [start]
        comp_edges: set[int] = set()
        while stack:
            u = stack.pop()
            for v, k in adj[u]:
                if k in edge_ids and k not in comp_edges:
                    comp_edges.add(k)
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
        return sorted(seen), sorted(comp_edges)

    full_adj = t.adjacency()

    def build(vertices: list[int], edge_ids: list[int]):
        while True:
            sites = [t.tags[v] for v in vertices if t.tags[v] is not None]
            if len(sites) == 1:
                return sites[0]
            k, heavy, total = _best_split(edges, vertices, edge_ids)
            if heavy > SEPARATOR_FRACTION * total + 1e-12 * max(total, 1.0):
                raise AssertionError(
                    f"separator bound violated: heavier side {heavy} of total {total}"
                )
            records.append(SplitRecord(total, heavy, (edges[k][0], edges[k][1])))
            rest = set(edge_ids)
            rest.discard(k)
            left = component(edges[k][0], rest, full_adj)
            right = component(edges[k][1], rest, full_adj)
            left_has = any(t.tags[v] is not None for v in left[0])
            right_has = any(t.tags[v] is not None for v in right[0])
            if left_has and right_has:
                return (build(*left), build(*right))
            vertices, edge_ids = left if left_has else right

    root = build(list(range(t.n_vertices)), list(range(len(edges))))
    return ClusterHierarchy(root), records


def cluster_by_tree_splitting(m, *, return_splits: bool = False):
    """Approximate minimum sum-of-MST hierarchical clustering of a metric."""
    d = check_metric(m)
    if d.shape[0] == 1:
        h = ClusterHierarchy(0)
        return (h, []) if return_splits else h
    expanded = ternarize(mst_metric(d))
    h, records = split_tree(expanded)
    return (h, records) if return_splits else h


def _descending_weights(weights) -> list[float]:
    return sorted((float(w) for w in weights), reverse=True)


def entropy_lower_bound_from_weights(weights) -> float:
    w = _descending_weights(weights)
    total = math.fsum(w)
    return math.fsum(0.5 * x * (1.0 + math.log2(total / x)) for x in w if x > 0)


def entropy_upper_bound_from_weights(weights) -> float:
    w = _descending_weights(weights)
    total = math.fsum(w)
    return math.fsum(x * (1.0 + math.log(total / x, 1.5)) for x in w if x > 0)


def forest_lower_bound_from_weights(weights) -> float:
    """Sum over levels j of the lightest spanning forest with 2^j trees.

    Equals sum_i w_i (1 + floor(log2(i + 1))) with weights descending; it sits
    between the optimum and :func:`entropy_lower_bound`.
    """
    w = _descending_weights(weights)
    return math.fsum(x * (1 + (i + 1).bit_length() - 1) for i, x in enumerate(w))


def _mst_weights(m) -> list[float]:
    d = check_metric(m)
    if d.shape[0] < 2:
        raise ValueError("entropy bounds need at least two points")
    return [w for _, _, w in mst_edges(d)]


def entropy_lower_bound(m) -> float:
    return entropy_lower_bound_from_weights(_mst_weights(m))


def entropy_upper_bound(m) -> float:
    return entropy_upper_bound_from_weights(_mst_weights(m))


def rank_code_sum(weights) -> float:
    """sum_i w_i (1/2 + floor(log2(i+1))) over descending weights."""
    w = _descending_weights(weights)
    return math.fsum(x * (0.5 + (i + 1).bit_length() - 1) for i, x in enumerate(w))


def rank_sum(weights) -> float:
    """sum_i w_i floor(log2(i+1)) over descending weights."""
    w = _descending_weights(weights)
    return math.fsum(x * ((i + 1).bit_length() - 1) for i, x in enumerate(w))


def entropy_sum(weights) -> float:
    """sum_i w_i log2(W / w_i), zero weights contributing nothing."""
    w = _descending_weights(weights)
    total = math.fsum(w)
    return math.fsum(x * math.log2(total / x) for x in w if x > 0)


def clustering_cost_mst(h: ClusterHierarchy, m) -> CostReport:
    """Sum over all internal nodes, root included, of the cluster MST length."""
    d = check_metric(m)
    n = d.shape[0]
    if h.sites != frozenset(range(n)):
        raise HierarchyError(f"hierarchy sites do not match a metric on {n} points")
    levels: dict[int, list[float]] = {}
    stack = [(h.root, 0)]
    while stack:
        node, depth = stack.pop()
        if isinstance(node, int):
            continue
        sites = ClusterHierarchy(node).sites
        levels.setdefault(depth, []).append(mst_length(d, sorted(sites)))
        stack.append((node[0], depth + 1))
        stack.append((node[1], depth + 1))
    level_costs = [math.fsum(levels[k]) for k in sorted(levels)]
    total = math.fsum(x for k in sorted(levels) for x in levels[k])
    if n >= 2:
        lower, upper = entropy_lower_bound(d), entropy_upper_bound(d)
    else:
        lower = upper = 0.0
    return CostReport(total, level_costs, lower, upper)
