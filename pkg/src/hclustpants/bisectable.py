"""Bisectable trees: linear-time recognition, brute force, and exact counts.

A tree on 2^i vertices is i-bisectable when some edge splits it into two
(i-1)-bisectable halves; a single vertex is 0-bisectable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .hierarchy import ClusterHierarchy

BRUTE_FORCE_LIMIT = 32


@dataclass(frozen=True)
class FreeTree:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Sequence[Sequence[int]]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in edges))
        self._validate()

    def _validate(self) -> None:
        if self.n < 1:
            raise ValueError("a tree needs at least one vertex")
        if len(self.edges) != self.n - 1:
            raise ValueError(f"a tree on {self.n} vertices has {self.n - 1} edges, got {len(self.edges)}")
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise ValueError(f"invalid edge ({u}, {v})")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError("edge list contains a cycle")
            parent[ru] = rv


@dataclass(frozen=True)
class BisectCounts:
    d: int
    s: int
    a: int


@dataclass
class BisectionResult:
    bisectable: bool
    hierarchy: ClusterHierarchy | None
    work: int

    def __bool__(self) -> bool:
        return self.bisectable


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def is_bisectable(t: FreeTree) -> BisectionResult:
    """Recognise bisectable trees by repeatedly contracting odd edges.

    An edge is odd when its endpoint farther from the root has an odd number
    of descendants.  Odd edges of a bisectable tree pair up the vertices; the
    contracted tree is bisectable exactly when the original one is.
    ``work`` counts vertex and edge visits over the whole recursion.
    """
    work = 0
    if not _is_power_of_two(t.n):
        return BisectionResult(False, None, work)
    # current super-vertices carry partial hierarchies over original vertices
    nodes: list = list(range(t.n))
    edges = list(t.edges)
    n = t.n
    while n > 1:
        adj: list[list[int]] = [[] for _ in range(n)]
        for k, (u, v) in enumerate(edges):
            adj[u].append(k)
            adj[v].append(k)
        work += n + len(edges)
        # iterative DFS from vertex 0 for parent edges and subtree sizes
        parent_edge = [-1] * n
        order = [0]
        seen = [False] * n
        seen[0] = True
        stack = [0]
        while stack:
            u = stack.pop()
            for k in adj[u]:
                a, b = edges[k]
                v = b if a == u else a
                if not seen[v]:
                    seen[v] = True
                    parent_edge[v] = k
                    order.append(v)
                    stack.append(v)
        size = [1] * n
        odd_edges = []
        for v in reversed(order):
            k = parent_edge[v]
            if k < 0:
                continue
            a, b = edges[k]
            size[a if b == v else b] += size[v]
            if size[v] % 2 == 1:
                odd_edges.append(k)
        work += n
        if len(odd_edges) != n // 2:
            return BisectionResult(False, None, work)
        mate = [-1] * n
        for k in odd_edges:
            a, b = edges[k]
            if mate[a] >= 0 or mate[b] >= 0:
                return BisectionResult(False, None, work)
            mate[a], mate[b] = b, a
        # contract: new id per matched pair, ordered by smaller endpoint
        new_id = [-1] * n
        new_nodes = []
        for v in range(n):
            if new_id[v] < 0:
                w = mate[v]
                new_id[v] = new_id[w] = len(new_nodes)
                new_nodes.append((nodes[v], nodes[w]))
        odd = set(odd_edges)
        edges = [(new_id[a], new_id[b]) for k, (a, b) in enumerate(edges) if k not in odd]
        work += len(edges)
        nodes = new_nodes
        n = len(nodes)
    return BisectionResult(True, ClusterHierarchy(nodes[0]), work)


def brute_force_bisectable(t: FreeTree) -> bool:
    """Exponential check straight from the definition."""
    if t.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force is limited to {BRUTE_FORCE_LIMIT} vertices")
    edges = [frozenset(e) for e in t.edges]
    return _bisectable_set(frozenset(range(t.n)), frozenset(edges))


@lru_cache(maxsize=None)
def _bisectable_set(vertices: frozenset, edges: frozenset) -> bool:
    n = len(vertices)
    if n == 1:
        return True
    if not _is_power_of_two(n):
        return False
    for e in edges:
        rest = edges - {e}
        side = _reach(next(iter(e)), rest)
        if len(side) * 2 != n:
            continue
        left_edges = frozenset(f for f in rest if f <= side)
        right = vertices - side
        right_edges = rest - left_edges
        if _bisectable_set(side, left_edges) and _bisectable_set(right, right_edges):
            return True
    return False


def _reach(start: int, edges: frozenset) -> frozenset:
    adj: dict[int, list[int]] = {}
    for e in edges:
        a, b = tuple(e)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return frozenset(seen)


def count_bisectable(i: int) -> BisectCounts:
    """Numbers of i-bisectable free trees: total, symmetric, asymmetric.

    s_i = 2^(i-1) a_(i-1) + 2^(i-2) s_(i-1) and a_i = C(s_i, 2), from
    d_1 = s_1 = 1, a_1 = 0.
    """
    if i < 1:
        raise ValueError("i must be at least 1")
    s, a = 1, 0
    for j in range(2, i + 1):
        s = 2 ** (j - 1) * a + 2 ** (j - 2) * s
        a = comb(s, 2)
    return BisectCounts(a + s, s, a)
