import numpy as np

from hclustpants import generators
from hclustpants.bisectable import FreeTree, is_bisectable
from hclustpants.geometry import hyperbolic_distance
from hclustpants.treecluster import check_metric


def test_uniform_square_deterministic():
    a = generators.uniform_square(20, 7)
    b = generators.uniform_square(20, 7)
    assert np.array_equal(a, b)
    assert a.min() >= 0 and a.max() < 1


def test_hyperbolic_disk_radius():
    for radius in (0.5, 3.0, 12.0):
        p = generators.hyperbolic_disk(300, radius, 1)
        assert all(hyperbolic_distance((0, 0), q) <= radius + 1e-9 for q in p)
        assert np.all(np.hypot(p[:, 0], p[:, 1]) < 1)


def test_star_metric():
    d = generators.star_metric(8)
    assert d.shape == (8, 8)
    assert np.all(d[0, 1:] == 1)
    off = d[1:, 1:][~np.eye(7, dtype=bool)]
    assert np.all(off == 2)


def test_random_metric_is_metric():
    d = generators.random_metric(12, 0)
    check_metric(d)
    # d[i, k] <= d[i, j] + d[j, k]
    assert np.all(d[:, None, :] <= d[:, :, None] + d[None, :, :] + 1e-12)


def test_random_trees_are_trees():
    for n in (1, 2, 3, 10, 50):
        FreeTree(n, generators.random_tree(n, n))


def test_random_bisectable():
    assert is_bisectable(FreeTree(32, generators.random_bisectable_tree(5, 0)))


def test_degree3_tree():
    edges, n = generators.random_degree3_tree(60, 2)
    deg = np.zeros(n, dtype=int)
    for u, v, w in edges:
        deg[u] += 1
        deg[v] += 1
        assert w >= 0
    assert deg.max() <= 3
