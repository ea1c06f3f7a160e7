"""Compressed quadtrees and the clustering derived from them.

Quadrant convention: a point on a vertical midline belongs to the east
quadrants and a point on a horizontal midline to the south quadrants, so the
four quadrants of a square are disjoint and cover it.  The root square is
closed and anchored at the minimum corner of the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .geometry import as_points, hull_perimeter
from .hierarchy import ClusterHierarchy, HierarchyError
from .treecluster import CostReport

NW, NE, SW, SE = "NW", "NE", "SW", "SE"
QUADRANTS = (NW, NE, SW, SE)
SIDE_ADJACENT = {
    frozenset((NW, NE)),
    frozenset((SW, SE)),
    frozenset((NW, SW)),
    frozenset((NE, SE)),
}
MAX_DEPTH = 64


@dataclass(frozen=True)
class Square:
    min_x: float
    min_y: float
    side: float
    depth: int = 0

    @property
    def mid(self) -> tuple[float, float]:
        return self.min_x + self.side / 2, self.min_y + self.side / 2

    @property
    def perimeter(self) -> float:
        return 4.0 * self.side

    def quadrant_of(self, x: float, y: float) -> str:
        mx, my = self.mid
        east = x >= mx
        north = y > my
        if north:
            return NE if east else NW
        return SE if east else SW

    def child(self, quadrant: str) -> "Square":
        half = self.side / 2
        mx, my = self.mid
        x0 = mx if quadrant in (NE, SE) else self.min_x
        y0 = my if quadrant in (NW, NE) else self.min_y
        return Square(x0, y0, half, self.depth + 1)

    def contains(self, x: float, y: float) -> bool:
        return self.min_x <= x <= self.min_x + self.side and self.min_y <= y <= self.min_y + self.side


@dataclass
class QuadNode:
    """Square with sites in at least two quadrants; children keyed by quadrant."""

    square: Square
    children: dict[str, "QuadNode | int"] = field(default_factory=dict)
    sites: tuple[int, ...] = ()


@dataclass
class CompressedQuadtree:
    points: np.ndarray
    root_square: Square
    root: "QuadNode | int"

    def internal_nodes(self) -> list[QuadNode]:
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, QuadNode):
                out.append(node)
                stack.extend(node.children[q] for q in reversed(QUADRANTS) if q in node.children)
        return out

    def parent_of_site(self) -> dict[int, QuadNode]:
        out = {}
        for node in self.internal_nodes():
            for child in node.children.values():
                if isinstance(child, int):
                    out[child] = node
        return out


def bounding_square(points) -> Square:
    p = as_points(points)
    if len(p) == 0:
        raise ValueError("bounding square of an empty point set")
    lo = p.min(axis=0)
    side = float(max(p[:, 0].max() - lo[0], p[:, 1].max() - lo[1]))
    if side == 0.0:
        side = 1.0
    return Square(float(lo[0]), float(lo[1]), side, 0)


def build_compressed_quadtree(points) -> CompressedQuadtree:
    p = as_points(points)
    if len(p) == 0:
        raise ValueError("no points")
    if len({(x, y) for x, y in p.tolist()}) != len(p):
        raise ValueError("duplicate points cannot be separated by a quadtree")
    root_sq = bounding_square(p)

    def build(square: Square, sites: list[int]):
        if len(sites) == 1:
            return sites[0]
        while True:
            groups: dict[str, list[int]] = {}
            for s in sites:
                groups.setdefault(square.quadrant_of(p[s, 0], p[s, 1]), []).append(s)
            if len(groups) >= 2:
                break
            if square.depth >= MAX_DEPTH:
                raise ValueError("points too close to separate within the depth limit")
            (only,) = groups
            square = square.child(only)
        node = QuadNode(square, sites=tuple(sorted(sites)))
        for q in QUADRANTS:
            if q in groups:
                node.children[q] = build(square.child(q), groups[q])
        return node

    return CompressedQuadtree(p, root_sq, build(root_sq, list(range(len(p)))))


def _sites(node) -> tuple[int, ...]:
    return (node,) if isinstance(node, int) else node.sites


def _pair_cost(p: np.ndarray, nodes) -> float:
    sites = [s for node in nodes for s in _sites(node)]
    return hull_perimeter(p[sites])


def quadtree_to_hierarchy(q: CompressedQuadtree) -> ClusterHierarchy:
    """Binary hierarchy from a compressed quadtree.

    Three children: the two side-adjacent quadrants with the smaller combined
    hull perimeter are joined first.  Four children: {NW, NE} and {SW, SE},
    except at the root, where the horizontal or vertical pairing with the
    smaller total added perimeter is used.
    """
    p = q.points

    def convert(node, is_root: bool):
        if isinstance(node, int):
            return node
        sub = {quad: convert(child, False) for quad, child in node.children.items()}
        present = [quad for quad in QUADRANTS if quad in node.children]
        if len(present) == 2:
            return (sub[present[0]], sub[present[1]])
        if len(present) == 3:
            candidates = [pair for pair in combinations(present, 2) if frozenset(pair) in SIDE_ADJACENT]
            a, b = min(
                candidates,
                key=lambda pair: (
                    _pair_cost(p, [node.children[pair[0]], node.children[pair[1]]]),
                    QUADRANTS.index(pair[0]),
                    QUADRANTS.index(pair[1]),
                ),
            )
            (c,) = [quad for quad in present if quad not in (a, b)]
            return ((sub[a], sub[b]), sub[c])
        pairings = [((NW, NE), (SW, SE))]
        if is_root:
            pairings.append(((NW, SW), (NE, SE)))
        best = min(
            pairings,
            key=lambda pr: sum(_pair_cost(p, [node.children[x] for x in pair]) for pair in pr),
        )
        (a, b), (c, d) = best
        return ((sub[a], sub[b]), (sub[c], sub[d]))

    return ClusterHierarchy(convert(q.root, True))


def quadtree_clustering(points) -> ClusterHierarchy:
    return quadtree_to_hierarchy(build_compressed_quadtree(points))


def clustering_cost_perimeter(h: ClusterHierarchy, points) -> CostReport:
    """Sum of hull perimeters over internal nodes, root included.

    Bounds valid for every hierarchy: the root hull perimeter P is always
    paid, and no cluster hull exceeds it, so the cost lies in [P, (n-1) P].
    """
    p = as_points(points)
    n = len(p)
    if h.sites != frozenset(range(n)):
        raise HierarchyError(f"hierarchy does not cover exactly the sites 0..{n - 1}")
    levels: dict[int, list[float]] = {}
    stack = [(h.root, 0)]
    while stack:
        node, depth = stack.pop()
        if isinstance(node, int):
            continue
        sites = sorted(ClusterHierarchy(node).sites)
        levels.setdefault(depth, []).append(hull_perimeter(p[sites]))
        stack.append((node[0], depth + 1))
        stack.append((node[1], depth + 1))
    total = math.fsum(x for k in sorted(levels) for x in levels[k])
    level_costs = [math.fsum(levels[k]) for k in sorted(levels)]
    outer = hull_perimeter(p)
    return CostReport(total, level_costs, outer, max(n - 1, 0) * outer)


def square_perimeter_sum(q: CompressedQuadtree) -> float:
    return math.fsum(node.square.perimeter for node in q.internal_nodes())
