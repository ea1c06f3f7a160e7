"""Exact optimal hierarchies by dynamic programming over subsets.

``cost(S) = size(S) + min cost(A) + cost(S \\ A)`` over proper bipartitions,
with ``size`` either the MST length or the convex-hull perimeter of ``S``.
Subsets are bitmasks and bipartitions come from submask enumeration, giving
O(3^n) work.  Nothing here shares code with the clustering modules, so the
cost evaluator doubles as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .hierarchy import ClusterHierarchy, HierarchyError

MAX_SITES = 15
OBJECTIVES = ("mst_sum", "perimeter_sum")


@dataclass
class OracleResult:
    optimal_cost: float
    hierarchy: ClusterHierarchy
    subsets_evaluated: int


@numba.njit(cache=True)
def _subset_mst_lengths(d):
    n = d.shape[0]
    full = 1 << n
    out = np.zeros(full)
    idx = np.empty(n, dtype=np.int64)
    best = np.empty(n)
    used = np.empty(n, dtype=np.bool_)
    for mask in range(1, full):
        k = 0
        for i in range(n):
            if mask >> i & 1:
                idx[k] = i
                k += 1
        if k < 2:
            continue
        for a in range(k):
            used[a] = False
            best[a] = d[idx[0], idx[a]]
        used[0] = True
        total = 0.0
        for _ in range(k - 1):
            pick = -1
            for a in range(k):
                if not used[a] and (pick < 0 or best[a] < best[pick]):
                    pick = a
            used[pick] = True
            total += best[pick]
            for a in range(k):
                if not used[a]:
                    w = d[idx[pick], idx[a]]
                    if w < best[a]:
                        best[a] = w
        out[mask] = total
    return out


@numba.njit(cache=True)
def _subset_hull_perimeters(p):
    n = p.shape[0]
    full = 1 << n
    out = np.zeros(full)
    idx = np.empty(n, dtype=np.int64)
    for mask in range(1, full):
        k = 0
        for i in range(n):
            if mask >> i & 1:
                idx[k] = i
                k += 1
        if k < 2:
            continue
        # gift wrapping from the lowest-leftmost point, farthest on collinear ties
        start = idx[0]
        for a in range(k):
            j = idx[a]
            if p[j, 0] < p[start, 0] or (p[j, 0] == p[start, 0] and p[j, 1] < p[start, 1]):
                start = j
        cur = start
        total = 0.0
        for _ in range(k + 1):
            cand = -1
            for a in range(k):
                j = idx[a]
                if j == cur:
                    continue
                if cand < 0:
                    cand = j
                    continue
                cr = (p[cand, 0] - p[cur, 0]) * (p[j, 1] - p[cur, 1]) - (p[cand, 1] - p[cur, 1]) * (p[j, 0] - p[cur, 0])
                if cr < 0:
                    cand = j
                elif cr == 0:
                    dc = (p[cand, 0] - p[cur, 0]) ** 2 + (p[cand, 1] - p[cur, 1]) ** 2
                    dj = (p[j, 0] - p[cur, 0]) ** 2 + (p[j, 1] - p[cur, 1]) ** 2
                    if dj > dc:
                        cand = j
            total += math.hypot(p[cand, 0] - p[cur, 0], p[cand, 1] - p[cur, 1])
            cur = cand
            if cur == start:
                break
        out[mask] = total
    return out


@numba.njit(cache=True)
def _subset_dp(size):
    full = size.shape[0]
    cost = np.zeros(full)
    choice = np.zeros(full, dtype=np.int64)
    evaluated = 0
    for mask in range(1, full):
        if mask & (mask - 1) == 0:
            continue
        low = mask & -mask
        rest = mask ^ low
        best = np.inf
        arg = 0
        # submasks of rest, each completed with the lowest bit
        sub = rest
        while True:
            a = sub | low
            if a != mask:
                c = cost[a] + cost[mask ^ a]
                evaluated += 1
                if c < best:
                    best = c
                    arg = a
            if sub == 0:
                break
            sub = (sub - 1) & rest
        cost[mask] = size[mask] + best
        choice[mask] = arg
    return cost, choice, evaluated


def _rebuild(choice: np.ndarray, mask: int):
    if mask & (mask - 1) == 0:
        return mask.bit_length() - 1
    a = int(choice[mask])
    return (_rebuild(choice, a), _rebuild(choice, mask ^ a))


def _prepare(metric, points, objective: str):
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")
    if points is not None:
        p = np.asarray(points, dtype=float)
        if p.ndim != 2 or p.shape[1] != 2:
            raise ValueError("points must be an (n, 2) array")
        if metric is None:
            diff = p[:, None, :] - p[None, :, :]
            metric = np.hypot(diff[..., 0], diff[..., 1])
    else:
        p = None
        if objective == "perimeter_sum":
            raise ValueError("the perimeter objective needs planar points")
        if metric is None:
            raise ValueError("provide a distance matrix or points")
    d = np.asarray(metric, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] == 0:
        raise ValueError("distance matrix must be square and nonempty")
    if p is not None and len(p) != d.shape[0]:
        raise ValueError("points and distance matrix disagree on n")
    return d, p


def optimal_clustering(metric=None, *, points=None, objective: str = "mst_sum") -> OracleResult:
    """Minimum-cost hierarchy for up to :data:`MAX_SITES` sites."""
    d, p = _prepare(metric, points, objective)
    n = d.shape[0]
    if n > MAX_SITES:
        raise ValueError(f"oracle is limited to {MAX_SITES} sites, got {n}")
    if n == 1:
        return OracleResult(0.0, ClusterHierarchy(0), 0)
    if objective == "mst_sum":
        size = _subset_mst_lengths(np.ascontiguousarray(d))
    else:
        size = _subset_hull_perimeters(np.ascontiguousarray(p))
    _, choice, evaluated = _subset_dp(size)
    h = ClusterHierarchy(_rebuild(choice, (1 << n) - 1))
    return OracleResult(evaluate_cost(h, d, points=p, objective=objective), h, int(evaluated))


def _prim_weights(d: np.ndarray, sites: list[int]) -> list[float]:
    best = {s: d[sites[0], s] for s in sites[1:]}
    out = []
    while best:
        s = min(best, key=lambda k: (best[k], k))
        out.append(float(best.pop(s)))
        for t in best:
            if d[s, t] < best[t]:
                best[t] = d[s, t]
    return out


def _jarvis_edges(p: np.ndarray, sites: list[int]) -> list[float]:
    pts = sorted({(float(p[s, 0]), float(p[s, 1])) for s in sites})
    if len(pts) < 2:
        return []
    start = pts[0]
    cur = start
    out = []
    while True:
        cand = None
        for q in pts:
            if q == cur:
                continue
            if cand is None:
                cand = q
                continue
            cr = (cand[0] - cur[0]) * (q[1] - cur[1]) - (cand[1] - cur[1]) * (q[0] - cur[0])
            if cr < 0 or (cr == 0 and math.dist(cur, q) > math.dist(cur, cand)):
                cand = q
        out.append(math.hypot(cand[0] - cur[0], cand[1] - cur[1]))
        cur = cand
        if cur == start or len(out) > len(pts):
            break
    return out


def evaluate_cost(h: ClusterHierarchy, metric=None, *, points=None, objective: str = "mst_sum") -> float:
    """Objective value of ``h``: sum over internal nodes (root included)."""
    d, p = _prepare(metric, points, objective)
    n = d.shape[0]
    if h.sites != frozenset(range(n)):
        raise HierarchyError(f"hierarchy does not cover exactly the sites 0..{n - 1}")
    terms: list[float] = []
    for cluster in h.clusters():
        sites = list(cluster)
        if objective == "mst_sum":
            terms.append(math.fsum(_prim_weights(d, sites)))
        else:
            terms.append(math.fsum(_jarvis_edges(p, sites)))
    return math.fsum(terms)


def metric_from_graph(n: int, edges) -> np.ndarray:
    """Distance 1 between adjacent vertices, 2 otherwise, 0 on the diagonal."""
    d = np.full((n, n), 2.0)
    np.fill_diagonal(d, 0.0)
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"invalid edge ({u}, {v}) for a simple graph on {n} vertices")
        d[u, v] = d[v, u] = 1.0
    return d


def reduction_target(i: int) -> int:
    """Cost threshold i 2^i - 2^i + 1 met exactly by i-bisectable spanning trees."""
    return i * 2**i - 2**i + 1
