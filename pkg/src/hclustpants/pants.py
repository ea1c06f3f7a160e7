"""Euclidean pants decompositions built from hierarchies with disjoint hulls.

Every non-root cluster C gets a closed polyline around its convex hull at
offset |C| * eps.  Corner arcs are replaced by circumscribed polylines, so a
curve never comes closer to its hull than the nominal offset and never
strays farther than offset / cos(pi / 2k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    as_points,
    convex_polygon_distance,
    hull_indices,
)
from .hierarchy import ClusterHierarchy, HierarchyError

SEGMENTS_PER_ARC = 16


class PantsError(ValueError):
    """Precondition of the pants construction does not hold."""


@dataclass
class ClosedCurve:
    vertices: np.ndarray
    cluster_id: tuple[int, ...]

    @property
    def length(self) -> float:
        d = np.roll(self.vertices, -1, axis=0) - self.vertices
        return math.fsum(np.hypot(d[:, 0], d[:, 1]).tolist())


@dataclass
class PantsDecomposition:
    curves: list[ClosedCurve]
    hierarchy: ClusterHierarchy
    epsilon: float = 0.0

    @property
    def total_length(self) -> float:
        return math.fsum(c.length for c in self.curves)


@dataclass
class ValidationReport:
    simple: bool = True
    disjoint: bool = True
    nesting: bool = True
    pants: bool = True
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.simple and self.disjoint and self.nesting and self.pants

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "simple": self.simple,
            "disjoint": self.disjoint,
            "nesting": self.nesting,
            "pants": self.pants,
            "problems": list(self.problems),
        }


def _hull(p: np.ndarray, cluster) -> np.ndarray:
    return p[list(cluster)][hull_indices(p[list(cluster)])]


def min_hull_gap(h: ClusterHierarchy, points) -> float:
    """Smallest hull-to-hull distance over all sibling cluster pairs."""
    p = as_points(points)
    if h.sites != frozenset(range(len(p))):
        raise HierarchyError("hierarchy does not match the point set")
    best = math.inf
    for left, right in h.sibling_pairs():
        gap = convex_polygon_distance(_hull(p, left), _hull(p, right))
        if gap <= 0.0:
            raise PantsError(f"hulls of sibling clusters {left} and {right} intersect")
        best = min(best, gap)
    return best


def offset_curve(hull: np.ndarray, radius: float, k: int = SEGMENTS_PER_ARC) -> np.ndarray:
    """Closed polyline around a CCW convex hull at distance >= ``radius``.

    Hulls with one or two vertices are handled (a disk / a stadium).
    """
    hull = np.asarray(hull, dtype=float)
    m = len(hull)
    if m == 1:
        # full circle around a point, circumscribed with 4k segments
        steps = 4 * k
        beta = 2 * math.pi / steps
        r = radius / math.cos(beta / 2)
        ang = beta * (np.arange(steps) + 0.5)
        return hull[0] + r * np.column_stack([np.cos(ang), np.sin(ang)])
    # outward normal of directed edge j (hull[j] -> hull[j+1]) for a CCW polygon
    nxt = np.roll(hull, -1, axis=0)
    d = nxt - hull
    lengths = np.hypot(d[:, 0], d[:, 1])
    normals = np.column_stack([d[:, 1], -d[:, 0]]) / lengths[:, None]
    out = []
    for j in range(m):
        # corner at hull[j]: arc from normal of edge j-1 to normal of edge j
        a0 = math.atan2(normals[j - 1, 1], normals[j - 1, 0])
        a1 = math.atan2(normals[j, 1], normals[j, 0])
        theta = (a1 - a0) % (2 * math.pi)
        if m == 2:
            theta = math.pi
        beta = theta / k
        r = radius / math.cos(beta / 2)
        for t in range(k):
            ang = a0 + beta * (t + 0.5)
            out.append((hull[j, 0] + r * math.cos(ang), hull[j, 1] + r * math.sin(ang)))
    return np.asarray(out)


def default_epsilon(gap: float, n: int) -> float:
    """Offset unit for n sites whose sibling hulls are at least ``gap`` apart.

    Any eps <= gap / n^2 keeps sibling curves apart; dividing by a further
    4 pi n keeps the total arc overhead below gap / (4 n).
    """
    return gap / (4.0 * math.pi * n**3)


def _arc_segments(n: int, base: int = SEGMENTS_PER_ARC) -> int:
    # nesting needs |C| / cos(pi / 2k) < |C| + 1 for every cluster size |C| < n
    k = base
    while n / math.cos(math.pi / (2 * k)) >= n + 0.5:
        k *= 2
    return k


def hierarchy_to_pants(h: ClusterHierarchy, points, *, epsilon: float | None = None) -> PantsDecomposition:
    p = as_points(points)
    n = len(p)
    if n < 3:
        raise PantsError("a pants decomposition needs at least three sites")
    if h.sites != frozenset(range(n)):
        raise HierarchyError("hierarchy does not match the point set")
    gap = min_hull_gap(h, p)
    limit = gap / n**2
    if epsilon is None:
        epsilon = default_epsilon(gap, n)
    elif not 0 < epsilon <= limit:
        raise PantsError(f"epsilon must lie in (0, {limit}] for this hierarchy")
    k = _arc_segments(n)
    curves = []
    for cluster in h.clusters()[1:]:
        hull = _hull(p, cluster)
        curves.append(ClosedCurve(offset_curve(hull, len(cluster) * epsilon, k), cluster))
    decomposition = PantsDecomposition(curves, h, epsilon)
    report = validate_pants(decomposition, p)
    if not (report.simple and report.disjoint):
        raise PantsError("constructed curves failed the disjointness audit: " + "; ".join(report.problems))
    return decomposition


def _segments(poly: np.ndarray):
    return poly, np.roll(poly, -1, axis=0)


def _orient(a, b, c):
    return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0])


def _cross_matrix(a0, a1, b0, b1) -> np.ndarray:
    """Boolean matrix: closed segment i of A meets closed segment j of B."""
    A0, A1 = a0[:, None, :], a1[:, None, :]
    B0, B1 = b0[None, :, :], b1[None, :, :]
    d1 = _orient(B0, B1, A0)
    d2 = _orient(B0, B1, A1)
    d3 = _orient(A0, A1, B0)
    d4 = _orient(A0, A1, B1)
    proper = (d1 * d2 < 0) & (d3 * d4 < 0)

    def on(p0, p1, q, d):
        return (
            (d == 0)
            & (np.minimum(p0[..., 0], p1[..., 0]) <= q[..., 0])
            & (q[..., 0] <= np.maximum(p0[..., 0], p1[..., 0]))
            & (np.minimum(p0[..., 1], p1[..., 1]) <= q[..., 1])
            & (q[..., 1] <= np.maximum(p0[..., 1], p1[..., 1]))
        )

    touch = on(B0, B1, A0, d1) | on(B0, B1, A1, d2) | on(A0, A1, B0, d3) | on(A0, A1, B1, d4)
    return proper | touch


def _points_inside(q: np.ndarray, poly: np.ndarray) -> np.ndarray:
    """Even-odd ray casting for many query points against one polygon."""
    x, y = q[:, 0][:, None], q[:, 1][:, None]
    x0, y0 = poly[:, 0][None, :], poly[:, 1][None, :]
    nxt = np.roll(poly, -1, axis=0)
    x1, y1 = nxt[:, 0][None, :], nxt[:, 1][None, :]
    straddle = (y0 > y) != (y1 > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xc = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
    hits = straddle & (x < xc)
    return (hits.sum(axis=1) % 2) == 1


def _is_simple(poly: np.ndarray) -> bool:
    m = len(poly)
    if m < 3:
        return False
    a0, a1 = _segments(poly)
    meet = _cross_matrix(a0, a1, a0, a1)
    idx = np.arange(m)
    adjacent = (np.abs(idx[:, None] - idx[None, :]) <= 1) | (np.abs(idx[:, None] - idx[None, :]) == m - 1)
    return not np.any(meet & ~adjacent)


def _signed_area(poly: np.ndarray) -> float:
    nxt = np.roll(poly, -1, axis=0)
    return 0.5 * float(np.sum(poly[:, 0] * nxt[:, 1] - nxt[:, 0] * poly[:, 1]))


def validate_pants(p: PantsDecomposition, points) -> ValidationReport:
    """Audit simplicity, disjointness, nesting against the hierarchy, and the
    three-boundary condition of every complementary region."""
    pts = as_points(points)
    n = len(pts)
    report = ValidationReport()
    curves = p.curves
    for c in curves:
        if not _is_simple(c.vertices):
            report.simple = False
            report.problems.append(f"curve {c.cluster_id} is not simple")
        elif _signed_area(c.vertices) <= 0:
            report.simple = False
            report.problems.append(f"curve {c.cluster_id} is not positively oriented")

    lo = [c.vertices.min(axis=0) for c in curves]
    hi = [c.vertices.max(axis=0) for c in curves]
    segs = [_segments(c.vertices) for c in curves]
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            if np.any(hi[i] < lo[j]) or np.any(hi[j] < lo[i]):
                continue
            if np.any(_cross_matrix(*segs[i], *segs[j])):
                report.disjoint = False
                report.problems.append(f"curves {curves[i].cluster_id} and {curves[j].cluster_id} meet")

    # geometric containment: sites and curves inside each curve
    site_in = np.array([_points_inside(pts, c.vertices) for c in curves]).reshape(len(curves), n)
    curve_in = np.zeros((len(curves), len(curves)), dtype=bool)
    for i, outer in enumerate(curves):
        for j, inner in enumerate(curves):
            if i != j:
                curve_in[i, j] = bool(_points_inside(inner.vertices[:1], outer.vertices)[0])

    members = [set(c.cluster_id) for c in curves]
    for i, c in enumerate(curves):
        inside = set(np.flatnonzero(site_in[i]).tolist())
        if inside != members[i]:
            report.nesting = False
            report.problems.append(f"curve {c.cluster_id} encloses sites {sorted(inside)}")
        for j in range(len(curves)):
            if i != j and curve_in[i, j] != (members[j] < members[i]):
                report.nesting = False
                report.problems.append(
                    f"containment of curve {curves[j].cluster_id} in {c.cluster_id} disagrees with the hierarchy"
                )

    # each boundary's immediate container: the smallest curve around it
    depth = curve_in.sum(axis=0)

    def container(enclosing: np.ndarray):
        idx = np.flatnonzero(enclosing)
        if len(idx) == 0:
            return -1
        return int(idx[np.argmax(depth[idx])])

    counts = {i: 0 for i in range(-1, len(curves))}
    for s in range(n):
        counts[container(site_in[:, s])] += 1
    for j in range(len(curves)):
        counts[container(curve_in[:, j])] += 1
    for i, k in counts.items():
        if k != 2:
            report.pants = False
            where = "outer region" if i < 0 else f"region inside {curves[i].cluster_id}"
            report.problems.append(f"{where} has {k} inner boundaries, expected 2")
    return report
