import math

import numpy as np
import pytest

from hclustpants import generators
from hclustpants.geometry import hull_indices, hull_perimeter, point_in_convex_polygon, point_segment_distance
from hclustpants.hierarchy import ClusterHierarchy
from hclustpants.pants import (
    ClosedCurve,
    PantsDecomposition,
    PantsError,
    default_epsilon,
    hierarchy_to_pants,
    min_hull_gap,
    offset_curve,
    validate_pants,
)
from hclustpants.quadtree import quadtree_clustering

from _oracles import hull_gap_brute

L_INSTANCE = np.array([(0.0, 0.0), (0.0, 1.0), (100.0, 0.0)])


def _pants(p):
    h = quadtree_clustering(p)
    return hierarchy_to_pants(h, p), h


def test_l_instance_single_short_curve():
    dec, _ = _pants(L_INSTANCE)
    assert len(dec.curves) == 1
    assert 2.0 < dec.total_length <= 2.05
    assert validate_pants(dec, L_INSTANCE).ok


@pytest.mark.parametrize("seed", range(15))
def test_random_valid(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 25))
    p = generators.uniform_square(n, rng)
    dec, _ = _pants(p)
    assert len(dec.curves) == n - 2
    report = validate_pants(dec, p)
    assert report.ok, report.problems


def test_collinear_points():
    p = np.array([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (4.0, 0.0)])
    dec, _ = _pants(p)
    assert validate_pants(dec, p).ok


def test_too_few_sites():
    with pytest.raises(PantsError):
        hierarchy_to_pants(ClusterHierarchy((0, 1)), np.array([(0.0, 0.0), (1.0, 0.0)]))


def test_epsilon_range():
    h = quadtree_clustering(L_INSTANCE)
    gap = min_hull_gap(h, L_INSTANCE)
    with pytest.raises(PantsError):
        hierarchy_to_pants(h, L_INSTANCE, epsilon=gap)
    with pytest.raises(PantsError):
        hierarchy_to_pants(h, L_INSTANCE, epsilon=0.0)
    dec = hierarchy_to_pants(h, L_INSTANCE, epsilon=gap / 9)
    assert validate_pants(dec, L_INSTANCE).ok


def test_overlapping_hulls_rejected():
    p = np.array([(0.0, 0.0), (2.0, 0.0), (1.0, 1.0), (1.0, -1.0)])
    h = ClusterHierarchy(((0, 1), (2, 3)))  # crossing segments
    with pytest.raises(PantsError):
        hierarchy_to_pants(h, p)


def test_min_hull_gap_matches_brute_force():
    for seed in range(10):
        p = generators.uniform_square(12, seed)
        h = quadtree_clustering(p)
        ref = math.inf
        for a, b in h.sibling_pairs():
            ha, hb = p[list(a)], p[list(b)]
            ha, hb = ha[hull_indices(ha)], hb[hull_indices(hb)]
            ref = min(ref, hull_gap_brute(ha, hb, lambda v, hh: len(hh) >= 3 and point_in_convex_polygon(v, hh)))
        assert min_hull_gap(h, p) == pytest.approx(ref, rel=1e-12)


def test_default_epsilon_total_overhead():
    # additive slack of all curves stays below gap / n
    for seed in range(10):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 20))
        p = generators.uniform_square(n, rng)
        dec, h = _pants(p)
        gap = min_hull_gap(h, p)
        assert dec.epsilon == default_epsilon(gap, n)
        base = math.fsum(hull_perimeter(p[list(c)]) for c in h.clusters()[1:])
        assert base < dec.total_length < base + gap / n


@pytest.mark.parametrize("hull", [[(0.0, 0.0)], [(0.0, 0.0), (3.0, 1.0)], [(0.0, 0.0), (2.0, 0.0), (1.0, 2.0)]])
def test_offset_curve_distance(hull):
    hull = np.asarray(hull)
    r = 0.1
    curve = offset_curve(hull, r, 16)
    for v in curve:
        if len(hull) == 1:
            d = float(np.hypot(*(v - hull[0])))
        else:
            d = min(point_segment_distance(v, hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull)))
        assert r - 1e-12 <= d <= r / math.cos(math.pi / 32) + 1e-12


def _square(cx, cy, s, cluster):
    v = np.array([(cx - s, cy - s), (cx + s, cy - s), (cx + s, cy + s), (cx - s, cy + s)])
    return ClosedCurve(v, cluster)


def test_validator_catches_crossings_and_bad_nesting():
    p = np.array([(0.0, 0.0), (1.0, 0.0), (5.0, 0.0)])
    h = ClusterHierarchy(((0, 1), 2))
    good = PantsDecomposition([_square(0.5, 0.0, 0.7, (0, 1))], h)
    assert validate_pants(good, p).ok
    wrong = PantsDecomposition([_square(3.0, 0.0, 2.5, (0, 1))], h)
    r = validate_pants(wrong, p)
    assert not r.nesting
    p4 = np.array([(0.0, 0.0), (1.0, 0.0), (5.0, 0.0), (6.0, 0.0)])
    h4 = ClusterHierarchy(((0, 1), (2, 3)))
    crossing = PantsDecomposition([_square(0.5, 0.0, 0.7, (0, 1)), _square(1.5, 0.0, 0.7, (2, 3))], h4)
    r = validate_pants(crossing, p4)
    assert not r.disjoint


def test_validator_catches_missing_curve():
    p = np.array([(0.0, 0.0), (1.0, 0.0), (5.0, 0.0), (6.0, 0.0)])
    h = ClusterHierarchy(((0, 1), (2, 3)))
    dec = PantsDecomposition([_square(0.5, 0.0, 0.7, (0, 1))], h)
    r = validate_pants(dec, p)
    assert not r.pants


def test_validator_catches_orientation():
    p = np.array([(0.0, 0.0), (1.0, 0.0), (5.0, 0.0)])
    h = ClusterHierarchy(((0, 1), 2))
    c = _square(0.5, 0.0, 0.7, (0, 1))
    dec = PantsDecomposition([ClosedCurve(c.vertices[::-1].copy(), (0, 1))], h)
    assert not validate_pants(dec, p).simple
