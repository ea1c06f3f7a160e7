"""Hierarchical clustering of sites in the hyperbolic plane.

Pipeline: pick a maximal delta-separated subset by an annulus sweep around
the disk origin, assign every site to its nearest chosen center, cluster each
center's cell with the Euclidean quadtree method in a Klein chart centered
there, and join the cells with balanced MST splitting over the centers.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    as_hyperbolic,
    hyperbolic_distance,
    hyperbolic_distance_matrix,
    hyperbolic_hull_perimeter,
    klein_images,
)
from .hierarchy import ClusterHierarchy
from .quadtree import quadtree_clustering
from .treecluster import (
    SplitRecord,
    WeightedTree,
    clustering_cost_mst,
    mst_edges,
    split_tree,
    ternarize,
)

DELTA_RANGE = (0.1, 10.0)
TWO_PI = 2.0 * math.pi


@dataclass
class SeparatedSubset:
    chosen: list[int]
    assignment: dict[int, int]
    close_pairs: list[tuple[int, int]]
    delta: float


@dataclass
class RestrictedCell:
    center_site: int
    center: tuple[float, float]
    member_sites: list[int]
    neighbor_centers: list[int]


@dataclass
class HyperbolicClustering:
    hierarchy: ClusterHierarchy
    total_perimeter: float
    per_cell_costs: dict[int, float]
    backbone_cost: float
    backbone_hierarchy: ClusterHierarchy | None = None
    backbone_splits: list[SplitRecord] | None = None
    separated: SeparatedSubset | None = None


def _check_delta(delta: float) -> float:
    delta = float(delta)
    if not DELTA_RANGE[0] <= delta <= DELTA_RANGE[1]:
        raise ValueError(f"delta must lie in [{DELTA_RANGE[0]}, {DELTA_RANGE[1]}], got {delta}")
    return delta


def polar(points) -> tuple[np.ndarray, np.ndarray]:
    """Hyperbolic distance from the disk origin and clockwise angle in [0, 2 pi)."""
    p = as_hyperbolic(points)
    r = np.hypot(p[:, 0], p[:, 1])
    radius = 2.0 * np.arctanh(r)
    angle = np.mod(-np.arctan2(p[:, 1], p[:, 0]), TWO_PI)
    return radius, angle


def scan_order(points, delta: float) -> list[int]:
    """Annulus by annulus outward, clockwise inside each annulus, ties by index."""
    radius, angle = polar(points)
    ring = np.floor(radius / delta).astype(int)
    return sorted(range(len(radius)), key=lambda i: (ring[i], angle[i], i))


def _half_width(radius: float, reach: float) -> float:
    """Angle at the origin subtended by a disk of radius ``reach`` around a point."""
    if radius <= reach:
        return math.pi
    return math.asin(min(1.0, math.sinh(reach) / math.sinh(radius)))


class _RingIndex:
    """Chosen sites per annulus, sorted by angle, for windowed lookups."""

    def __init__(self):
        self.rings: dict[int, tuple[list[float], list[int]]] = {}

    def add(self, ring: int, angle: float, site: int) -> None:
        angles, sites = self.rings.setdefault(ring, ([], []))
        pos = bisect.bisect_right(angles, angle)
        angles.insert(pos, angle)
        sites.insert(pos, site)

    def window(self, ring: int, angle: float, half: float) -> list[int]:
        if ring not in self.rings:
            return []
        angles, sites = self.rings[ring]
        if half >= math.pi:
            return list(sites)
        lo, hi = angle - half, angle + half
        out = []
        for a, b in ((lo, hi), (lo + TWO_PI, hi + TWO_PI), (lo - TWO_PI, hi - TWO_PI)):
            i = bisect.bisect_left(angles, a)
            j = bisect.bisect_right(angles, b)
            out.extend(sites[i:j])
        return sorted(set(out))


def well_separated_subset(points, delta: float = 1.0) -> SeparatedSubset:
    """Maximal subset with pairwise distance >= delta, plus nearest-center map.

    Sites are scanned in :func:`scan_order`; a site joins when it is at least
    delta from every chosen site.  Only chosen sites in the same or the
    previous annulus, within the angular window of the delta-disk, can be
    closer than delta, so each test touches O(1) candidates.
    """
    delta = _check_delta(delta)
    p = as_hyperbolic(points)
    n = len(p)
    radius, angle = polar(p)
    ring = np.floor(radius / delta).astype(int)
    margin = 1e-9
    index = _RingIndex()
    chosen: list[int] = []
    for s in scan_order(p, delta):
        half = _half_width(radius[s], delta) + margin
        ok = True
        for r in (ring[s] - 1, ring[s]):
            for c in index.window(int(r), angle[s], half):
                if hyperbolic_distance(p[s], p[c]) < delta:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            chosen.append(s)
            index.add(int(ring[s]), float(angle[s]), s)

    assignment: dict[int, int] = {}
    for s in range(n):
        half = _half_width(radius[s], delta) + margin
        best = None
        for r in (ring[s] - 1, ring[s], ring[s] + 1):
            for c in index.window(int(r), angle[s], half):
                dist = hyperbolic_distance(p[s], p[c])
                if dist <= delta and (best is None or (dist, c) < best):
                    best = (dist, c)
        if best is None:
            raise AssertionError(f"site {s} is not covered by a chosen center")
        assignment[s] = best[1]

    pairs = set()
    for c in chosen:
        half = _half_width(radius[c], 2 * delta) + margin
        for r in range(ring[c] - 2, ring[c] + 3):
            for other in index.window(int(r), angle[c], half):
                if other != c and hyperbolic_distance(p[c], p[other]) < 2 * delta:
                    pairs.add((min(c, other), max(c, other)))
    return SeparatedSubset(chosen, assignment, sorted(pairs), delta)


def restricted_voronoi_cells(points, sep: SeparatedSubset) -> list[RestrictedCell]:
    """One cell per chosen center, in chosen order, holding its assigned sites."""
    p = as_hyperbolic(points)
    members: dict[int, list[int]] = {c: [] for c in sep.chosen}
    for s in range(len(p)):
        members[sep.assignment[s]].append(s)
    neighbors: dict[int, list[int]] = {c: [] for c in sep.chosen}
    for a, b in sep.close_pairs:
        neighbors[a].append(b)
        neighbors[b].append(a)
    return [
        RestrictedCell(c, (float(p[c, 0]), float(p[c, 1])), members[c], sorted(neighbors[c]))
        for c in sep.chosen
    ]


def cluster_cell(cell: RestrictedCell, points) -> ClusterHierarchy:
    """Quadtree hierarchy of a cell's sites in the Klein chart at its center."""
    p = as_hyperbolic(points)
    sites = list(cell.member_sites)
    if not sites:
        raise ValueError("empty cell")
    if len(sites) == 1:
        return ClusterHierarchy(sites[0])
    local = klein_images(p[sites], center=cell.center)
    return quadtree_clustering(local).relabel(sites)


def perimeter_cost(h: ClusterHierarchy, points) -> float:
    """Sum of hyperbolic hull perimeters over internal nodes, root included."""
    p = as_hyperbolic(points)
    return math.fsum(hyperbolic_hull_perimeter(p[list(c)]) for c in h.clusters())


def radial_order(points, tree: WeightedTree) -> dict[int, list[int]]:
    """Neighbors of every tree vertex sorted by direction in the Klein chart at it."""
    p = as_hyperbolic(points)
    adj = tree.adjacency()
    order = {}
    for v, row in enumerate(adj):
        if len(row) <= 3:
            continue
        nbrs = [nb for nb, _ in row]
        k = klein_images(p[nbrs], center=p[v])
        ang = np.mod(np.arctan2(k[:, 1], k[:, 0]), TWO_PI)
        order[v] = [nbrs[i] for i in sorted(range(len(nbrs)), key=lambda i: (ang[i], nbrs[i]))]
    return order


def cluster_hyperbolic(points, delta: float = 1.0) -> HyperbolicClustering:
    p = as_hyperbolic(points)
    n = len(p)
    if n == 0:
        raise ValueError("no points")
    sep = well_separated_subset(p, delta)
    cells = restricted_voronoi_cells(p, sep)
    cell_h = {cell.center_site: cluster_cell(cell, p) for cell in cells}
    per_cell = {c: perimeter_cost(h, p) if not h.is_leaf() else 0.0 for c, h in cell_h.items()}

    centers = sep.chosen
    if len(centers) == 1:
        backbone = ClusterHierarchy(0)
        splits: list[SplitRecord] = []
        backbone_cost = 0.0
    else:
        sub = p[centers]
        d = hyperbolic_distance_matrix(sub)
        tree = WeightedTree(len(centers), mst_edges(d))
        expanded = ternarize(tree, radial_order(sub, tree))
        backbone, splits = split_tree(expanded)
        backbone_cost = clustering_cost_mst(backbone, d).total_cost
    full = backbone.replace_leaves({i: cell_h[c] for i, c in enumerate(centers)})
    total = perimeter_cost(full, p) if n > 1 else 0.0
    return HyperbolicClustering(
        hierarchy=full,
        total_perimeter=total,
        per_cell_costs=per_cell,
        backbone_cost=backbone_cost,
        backbone_hierarchy=backbone.relabel(centers),
        backbone_splits=splits,
        separated=sep,
    )


def hyperbolic_mst_length(points) -> float:
    p = as_hyperbolic(points)
    return math.fsum(w for _, _, w in mst_edges(hyperbolic_distance_matrix(p)))


def mst_hull_ratio(points, delta: float = 1.0, *, tol: float = 1e-9) -> float:
    """Hull perimeter over MST length for a delta-separated set."""
    p = as_hyperbolic(points)
    if len(p) < 2:
        raise ValueError("need at least two points")
    d = hyperbolic_distance_matrix(p)
    off = d[~np.eye(len(p), dtype=bool)]
    if off.min() < delta - tol:
        raise ValueError(f"points are not {delta}-separated (closest pair {off.min()})")
    return hyperbolic_hull_perimeter(p) / hyperbolic_mst_length(p)
