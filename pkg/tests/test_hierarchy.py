import pytest

from hclustpants.hierarchy import ClusterHierarchy, HierarchyError, all_hierarchies, balanced, leaves_of

from _oracles import double_factorial_odd


def test_leaf_and_join():
    h = ClusterHierarchy.join(ClusterHierarchy.leaf(0), ClusterHierarchy.join(ClusterHierarchy.leaf(1), ClusterHierarchy.leaf(2)))
    assert h.root == (0, (1, 2))
    assert h.n == 3
    assert h.sites == frozenset({0, 1, 2})
    assert h.clusters() == [(0, 1, 2), (1, 2)]


def test_lists_normalize_to_tuples():
    assert ClusterHierarchy([[0, 1], 2]) == ClusterHierarchy(((0, 1), 2))


@pytest.mark.parametrize("bad", [(0, 0), (0, (1, 0)), (0,), (0, 1, 2), -1, "a", (0, 1.5)])
def test_invalid_structures(bad):
    with pytest.raises(HierarchyError):
        ClusterHierarchy(bad)


def test_internal_node_count():
    for n in range(1, 12):
        assert len(balanced(range(n)).clusters()) == n - 1


def test_sibling_pairs_and_parents():
    h = ClusterHierarchy(((0, 1), (2, (3, 4))))
    pairs = {(tuple(sorted(a)), tuple(sorted(b))) for a, b in h.sibling_pairs()}
    assert ((0, 1), (2, 3, 4)) in pairs
    assert ((3,), (4,)) in pairs
    assert len(pairs) == 4


def test_relabel_and_replace():
    h = ClusterHierarchy((0, (1, 2)))
    assert h.relabel([10, 11, 12]).root == (10, (11, 12))
    g = h.replace_leaves({0: ClusterHierarchy((3, 4))})
    assert sorted(leaves_of(g.root)) == [1, 2, 3, 4]


@pytest.mark.parametrize("n", range(1, 8))
def test_all_hierarchies_count(n):
    trees = list(all_hierarchies(list(range(n))))
    assert len(trees) == max(1, double_factorial_odd(2 * n - 3))
    assert len(set(trees)) == len(trees)


def test_nested_round_trip():
    h = ClusterHierarchy((((3, 0), 1), (2, 4)))
    assert ClusterHierarchy.from_nested(h.to_nested()) == h
