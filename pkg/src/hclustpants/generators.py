"""Seeded instance generators used by the CLI, the benchmarks and the tests."""

from __future__ import annotations

import math

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .oracle import metric_from_graph


def rng_from(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def uniform_square(n: int, seed=None) -> np.ndarray:
    return rng_from(seed).random((n, 2))


def hyperbolic_disk(n: int, radius: float = 3.0, seed=None) -> np.ndarray:
    """Uniform (by hyperbolic area) points within ``radius`` of the origin, Poincare coordinates."""
    rng = rng_from(seed)
    u = rng.random(n)
    r = np.arccosh(1.0 + u * (math.cosh(radius) - 1.0))
    theta = rng.random(n) * 2 * math.pi
    t = np.tanh(r / 2)
    pts = np.column_stack([t * np.cos(theta), t * np.sin(theta)])
    # tanh saturates near the boundary; keep points strictly inside
    norm = np.hypot(pts[:, 0], pts[:, 1])
    too_far = norm >= 1.0
    pts[too_far] *= (np.nextafter(1.0, 0.0) / norm[too_far])[:, None]
    return pts


def star_metric(n: int) -> np.ndarray:
    """Unit star K_{1,n-1}: center 0 at distance 1 from all, leaves 2 apart."""
    if n < 1:
        raise ValueError("n must be positive")
    d = np.full((n, n), 2.0)
    d[0, :] = d[:, 0] = 1.0
    np.fill_diagonal(d, 0.0)
    return d


def random_graph(n: int, p: float = 0.3, seed=None) -> list[tuple[int, int]]:
    rng = rng_from(seed)
    return [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]


def graph_metric(n: int, p: float = 0.3, seed=None) -> tuple[np.ndarray, list[tuple[int, int]]]:
    edges = random_graph(n, p, seed)
    return metric_from_graph(n, edges), edges


def random_tree(n: int, seed=None) -> list[tuple[int, int]]:
    """Uniform labelled tree from a random Pruefer sequence."""
    rng = rng_from(seed)
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    edges.append((u, v))
    return edges


def random_bisectable_tree(i: int, seed=None) -> list[tuple[int, int]]:
    """Random i-bisectable tree on 2^i vertices with shuffled labels."""
    rng = rng_from(seed)

    def build(lo: int, size: int) -> list[tuple[int, int]]:
        if size == 1:
            return []
        half = size // 2
        left = build(lo, half)
        right = build(lo + half, half)
        a = lo + int(rng.integers(half))
        b = lo + half + int(rng.integers(half))
        return left + right + [(a, b)]

    n = 2**i
    perm = rng.permutation(n)
    return [(int(perm[a]), int(perm[b])) for a, b in build(0, n)]


def random_degree3_tree(n: int, seed=None) -> tuple[list[tuple[int, int, float]], int]:
    """Random tree with max degree 3 and exponential-ish random weights."""
    rng = rng_from(seed)
    degree = [0] * n
    edges = []
    for v in range(1, n):
        open_ = [u for u in range(v) if degree[u] < 3]
        u = open_[int(rng.integers(len(open_)))]
        w = float(rng.choice([0.0, rng.random(), rng.exponential(5.0)], p=[0.05, 0.6, 0.35]))
        edges.append((u, v, w))
        degree[u] += 1
        degree[v] += 1
    return edges, n


def random_metric(n: int, seed=None) -> np.ndarray:
    """Shortest-path closure of a complete graph with random positive weights."""
    rng = rng_from(seed)
    w = rng.random((n, n)) * rng.choice([1.0, 10.0], size=(n, n)) + 1e-3
    w = np.triu(w, 1)
    w = w + w.T
    d = shortest_path(w, method="FW", directed=False)
    d = np.minimum(d, d.T)
    np.fill_diagonal(d, 0.0)
    return d
