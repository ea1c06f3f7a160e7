"""Euclidean and hyperbolic plane primitives.

Hyperbolic points are stored in Poincare-disk coordinates.  Klein coordinates
are produced on demand, after an isometry that moves a chosen center to the
origin, and are used only for convexity computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np


class DomainError(ValueError):
    """A hyperbolic point lies on or outside the unit circle."""


class PointE2(NamedTuple):
    x: float
    y: float


class PointH2(NamedTuple):
    u: float
    v: float


@dataclass(frozen=True)
class Polygon:
    """Closed polygon; hulls come out counterclockwise and strictly convex."""

    vertices: np.ndarray

    def __len__(self) -> int:
        return len(self.vertices)

    def perimeter(self) -> float:
        m = len(self.vertices)
        if m < 2:
            return 0.0
        d = np.roll(self.vertices, -1, axis=0) - self.vertices
        return math.fsum(math.hypot(dx, dy) for dx, dy in d)


def as_points(points) -> np.ndarray:
    """Coerce a point sequence to a float array of shape (n, 2)."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1 and arr.shape[0] == 2:
        arr = arr.reshape(1, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) array of points, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point coordinates must be finite")
    return arr


def euclidean_distance(a, b) -> float:
    return math.hypot(float(a[0]) - float(b[0]), float(a[1]) - float(b[1]))


def _check_disk(p) -> float:
    r2 = float(p[0]) ** 2 + float(p[1]) ** 2
    if not r2 < 1.0 or not math.isfinite(r2):
        raise DomainError(f"point {tuple(p)} is not strictly inside the unit disk")
    return r2


def hyperbolic_distance(a, b) -> float:
    """Poincare-disk distance, written as 2 asinh(|a-b| / sqrt((1-|a|^2)(1-|b|^2)))."""
    ra = _check_disk(a)
    rb = _check_disk(b)
    chord = math.hypot(float(a[0]) - float(b[0]), float(a[1]) - float(b[1]))
    return 2.0 * math.asinh(chord / math.sqrt((1.0 - ra) * (1.0 - rb)))


def hyperbolic_distance_matrix(points) -> np.ndarray:
    p = as_points(points)
    r2 = np.einsum("ij,ij->i", p, p)
    if np.any(r2 >= 1.0):
        raise DomainError("all points must lie strictly inside the unit disk")
    diff = p[:, None, :] - p[None, :, :]
    chord = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    scale = np.sqrt(np.outer(1.0 - r2, 1.0 - r2))
    d = 2.0 * np.arcsinh(chord / scale)
    np.fill_diagonal(d, 0.0)
    return d


def euclidean_distance_matrix(points) -> np.ndarray:
    p = as_points(points)
    diff = p[:, None, :] - p[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def _mobius_to_origin(z: complex, c: complex) -> complex:
    return (z - c) / (1.0 - c.conjugate() * z)


def klein_from_poincare(p, center=(0.0, 0.0)) -> PointE2:
    """Klein coordinates of ``p`` after the isometry taking ``center`` to 0."""
    _check_disk(p)
    _check_disk(center)
    w = _mobius_to_origin(complex(p[0], p[1]), complex(center[0], center[1]))
    k = 2.0 * w / (1.0 + abs(w) ** 2)
    return PointE2(k.real, k.imag)


def poincare_from_klein(k, center=(0.0, 0.0)) -> PointH2:
    """Inverse of :func:`klein_from_poincare`."""
    _check_disk(k)
    _check_disk(center)
    kz = complex(k[0], k[1])
    w = kz / (1.0 + math.sqrt(1.0 - abs(kz) ** 2))
    c = complex(center[0], center[1])
    z = (w + c) / (1.0 + c.conjugate() * w)
    return PointH2(z.real, z.imag)


def klein_images(points, center=(0.0, 0.0)) -> np.ndarray:
    """Vectorised :func:`klein_from_poincare` for an (n, 2) array."""
    p = as_points(points)
    if np.any(np.einsum("ij,ij->i", p, p) >= 1.0):
        raise DomainError("all points must lie strictly inside the unit disk")
    _check_disk(center)
    z = p[:, 0] + 1j * p[:, 1]
    c = complex(center[0], center[1])
    w = (z - c) / (1.0 - np.conj(c) * z)
    k = 2.0 * w / (1.0 + np.abs(w) ** 2)
    return np.column_stack([k.real, k.imag])


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_indices(points) -> list[int]:
    """Indices of the convex hull vertices, counterclockwise (monotone chain).

    Collinear boundary points are dropped.  Coincident points collapse to the
    lowest index among them.
    """
    p = as_points(points)
    n = len(p)
    if n == 0:
        raise ValueError("convex hull of an empty point set")
    order = sorted(range(n), key=lambda i: (p[i, 0], p[i, 1], i))
    uniq = [order[0]]
    for i in order[1:]:
        if p[i, 0] != p[uniq[-1], 0] or p[i, 1] != p[uniq[-1], 1]:
            uniq.append(i)
    if len(uniq) <= 2:
        return uniq

    def chain(seq):
        out: list[int] = []
        for i in seq:
            while len(out) >= 2 and _cross(p[out[-2]], p[out[-1]], p[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(uniq)
    upper = chain(reversed(uniq))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        # everything collinear: keep the two extremes
        return [uniq[0], uniq[-1]]
    return hull


def convex_hull(points) -> Polygon:
    p = as_points(points)
    return Polygon(p[hull_indices(p)].copy())


def hull_perimeter(points) -> float:
    """Perimeter of the convex hull; a two-point hull is traversed both ways."""
    return convex_hull(points).perimeter()


def hyperbolic_hull_indices(points) -> list[int]:
    """Hull vertex indices of a Poincare-disk point set, via the Klein model."""
    p = as_points(points)
    if len(p) == 0:
        raise ValueError("convex hull of an empty point set")
    return hull_indices(klein_images(p, center=p[0]))


def hyperbolic_hull_perimeter(points) -> float:
    p = as_points(points)
    idx = hyperbolic_hull_indices(p)
    if len(idx) < 2:
        return 0.0
    m = len(idx)
    return math.fsum(hyperbolic_distance(p[idx[j]], p[idx[(j + 1) % m]]) for j in range(m))


def point_in_convex_polygon(q, vertices: np.ndarray, tol: float = 0.0) -> bool:
    """Inside-or-on test for a CCW convex polygon (any vertex count)."""
    m = len(vertices)
    if m == 1:
        return euclidean_distance(q, vertices[0]) <= tol
    if m == 2:
        return point_segment_distance(q, vertices[0], vertices[1]) <= tol
    for j in range(m):
        a = vertices[j]
        b = vertices[(j + 1) % m]
        edge = math.hypot(b[0] - a[0], b[1] - a[1])
        if _cross(a, b, q) < -tol * edge:
            return False
    return True


def point_segment_distance(q, a, b) -> float:
    ax, ay = float(a[0]), float(a[1])
    dx, dy = float(b[0]) - ax, float(b[1]) - ay
    qx, qy = float(q[0]) - ax, float(q[1]) - ay
    len2 = dx * dx + dy * dy
    t = 0.0 if len2 == 0.0 else max(0.0, min(1.0, (qx * dx + qy * dy) / len2))
    return math.hypot(qx - t * dx, qy - t * dy)


def segments_intersect(p1, p2, q1, q2) -> bool:
    """Closed-segment intersection with exact orientation signs."""
    d1 = _cross(q1, q2, p1)
    d2 = _cross(q1, q2, p2)
    d3 = _cross(p1, p2, q1)
    d4 = _cross(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True

    def on_seg(a, b, c, d):
        return d == 0 and min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    return (
        on_seg(q1, q2, p1, d1)
        or on_seg(q1, q2, p2, d2)
        or on_seg(p1, p2, q1, d3)
        or on_seg(p1, p2, q2, d4)
    )


def convex_polygon_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Distance between two convex polygons (vertex arrays, CCW); 0 if they meet.

    Brute force over vertex/edge pairs, plus containment and crossing tests.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if point_in_convex_polygon(a[0], b) or point_in_convex_polygon(b[0], a):
        return 0.0
    ea = _edges(a)
    eb = _edges(b)
    for p1, p2 in ea:
        for q1, q2 in eb:
            if segments_intersect(p1, p2, q1, q2):
                return 0.0
    best = math.inf
    for v in a:
        for q1, q2 in eb:
            best = min(best, point_segment_distance(v, q1, q2))
    for v in b:
        for p1, p2 in ea:
            best = min(best, point_segment_distance(v, p1, p2))
    return best


def _edges(poly: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
    m = len(poly)
    if m == 1:
        return [(poly[0], poly[0])]
    if m == 2:
        return [(poly[0], poly[1])]
    return [(poly[j], poly[(j + 1) % m]) for j in range(m)]


def as_hyperbolic(points: Sequence) -> np.ndarray:
    p = as_points(points)
    if np.any(np.einsum("ij,ij->i", p, p) >= 1.0):
        raise DomainError("all points must lie strictly inside the unit disk")
    return p
