"""Binary cluster hierarchies.

A hierarchy is stored as a nested tuple: an ``int`` is a leaf holding a site
index and a 2-tuple ``(left, right)`` is an internal node.  Every internal
node stands for the cluster of site indices below it.
"""

from __future__ import annotations

from typing import Iterator, Sequence, Union

Tree = Union[int, tuple]


class HierarchyError(ValueError):
    """Raised for malformed hierarchies or hierarchy/instance mismatches."""


def _check(node, seen: set) -> None:
    if isinstance(node, bool):
        raise HierarchyError("booleans are not site indices")
    if isinstance(node, int):
        if node < 0:
            raise HierarchyError(f"negative site index {node}")
        if node in seen:
            raise HierarchyError(f"site {node} appears twice")
        seen.add(node)
        return
    if not isinstance(node, tuple) or len(node) != 2:
        raise HierarchyError(f"internal node must have exactly 2 children, got {node!r}")
    _check(node[0], seen)
    _check(node[1], seen)


class ClusterHierarchy:
    """Rooted binary tree over site indices.

    >>> h = ClusterHierarchy(((0, 1), 2))
    >>> h.clusters()
    [(0, 1, 2), (0, 1)]
    """

    __slots__ = ("root", "_sites")

    def __init__(self, root: Tree):
        root = _normalize(root)
        seen: set = set()
        _check(root, seen)
        self.root = root
        self._sites = frozenset(seen)

    @classmethod
    def leaf(cls, site: int) -> "ClusterHierarchy":
        return cls(int(site))

    @classmethod
    def join(cls, left: "ClusterHierarchy", right: "ClusterHierarchy") -> "ClusterHierarchy":
        return cls((left.root, right.root))

    @property
    def n(self) -> int:
        return len(self._sites)

    @property
    def sites(self) -> frozenset:
        return self._sites

    def is_leaf(self) -> bool:
        return isinstance(self.root, int)

    def children(self) -> tuple["ClusterHierarchy", "ClusterHierarchy"]:
        if self.is_leaf():
            raise HierarchyError("a leaf has no children")
        return ClusterHierarchy(self.root[0]), ClusterHierarchy(self.root[1])

    def internal_nodes(self) -> Iterator[tuple]:
        """Yield internal nodes (nested tuples) in preorder."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, tuple):
                yield node
                stack.append(node[1])
                stack.append(node[0])

    def clusters(self) -> list[tuple[int, ...]]:
        """Sorted site tuples of all internal nodes, root first (preorder)."""
        return [tuple(sorted(leaves_of(node))) for node in self.internal_nodes()]

    def sibling_pairs(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return [
            (tuple(sorted(leaves_of(node[0]))), tuple(sorted(leaves_of(node[1]))))
            for node in self.internal_nodes()
        ]

    def parent_map(self) -> dict[tuple[int, ...], tuple[int, ...] | None]:
        """Map each cluster (leaves as 1-tuples) to its parent cluster."""
        out: dict = {}
        stack = [(self.root, None)]
        while stack:
            node, parent = stack.pop()
            key = tuple(sorted(leaves_of(node)))
            out[key] = parent
            if isinstance(node, tuple):
                stack.append((node[0], key))
                stack.append((node[1], key))
        return out

    def depth(self) -> int:
        def rec(node) -> int:
            if isinstance(node, int):
                return 0
            return 1 + max(rec(node[0]), rec(node[1]))

        return rec(self.root)

    def relabel(self, mapping: Sequence[int] | dict) -> "ClusterHierarchy":
        def rec(node):
            if isinstance(node, int):
                return int(mapping[node])
            return (rec(node[0]), rec(node[1]))

        return ClusterHierarchy(rec(self.root))

    def replace_leaves(self, subtrees: dict) -> "ClusterHierarchy":
        """Substitute each leaf ``i`` by ``subtrees[i]`` (a hierarchy or raw tree)."""

        def rec(node):
            if isinstance(node, int):
                sub = subtrees.get(node, node)
                return sub.root if isinstance(sub, ClusterHierarchy) else sub
            return (rec(node[0]), rec(node[1]))

        return ClusterHierarchy(rec(self.root))

    def require_sites(self, n: int) -> None:
        if self._sites != frozenset(range(n)):
            raise HierarchyError(
                f"hierarchy covers {sorted(self._sites)[:10]}..., expected sites 0..{n - 1}"
            )

    def to_nested(self):
        """JSON-friendly nested lists."""

        def rec(node):
            if isinstance(node, int):
                return node
            return [rec(node[0]), rec(node[1])]

        return rec(self.root)

    @classmethod
    def from_nested(cls, data) -> "ClusterHierarchy":
        return cls(data)

    def __eq__(self, other) -> bool:
        return isinstance(other, ClusterHierarchy) and self.root == other.root

    def __hash__(self) -> int:
        return hash(self.root)

    def __repr__(self) -> str:
        return f"ClusterHierarchy({self.root!r})"


def _normalize(node):
    if isinstance(node, (list, tuple)):
        if len(node) != 2:
            raise HierarchyError(f"internal node must have exactly 2 children, got {node!r}")
        return (_normalize(node[0]), _normalize(node[1]))
    if isinstance(node, bool):
        raise HierarchyError("booleans are not site indices")
    try:
        as_int = int(node)
    except (TypeError, ValueError):
        raise HierarchyError(f"not a site index: {node!r}") from None
    if as_int != node:
        raise HierarchyError(f"not a site index: {node!r}")
    return as_int


def leaves_of(node) -> list[int]:
    out = []
    stack = [node]
    while stack:
        cur = stack.pop()
        if isinstance(cur, int):
            out.append(cur)
        else:
            stack.append(cur[1])
            stack.append(cur[0])
    return out


def balanced(sites: Sequence[int]) -> ClusterHierarchy:
    """Balanced hierarchy splitting ``sites`` in order at each level."""
    sites = list(sites)
    if not sites:
        raise HierarchyError("empty site list")

    def rec(lo: int, hi: int):
        if hi - lo == 1:
            return sites[lo]
        mid = (lo + hi + 1) // 2
        return (rec(lo, mid), rec(mid, hi))

    return ClusterHierarchy(rec(0, len(sites)))


def all_hierarchies(sites: Sequence[int]) -> Iterator[ClusterHierarchy]:
    """Enumerate every rooted binary hierarchy on ``sites``; (2n-3)!! of them."""
    sites = list(sites)
    if len(sites) == 1:
        yield ClusterHierarchy(sites[0])
        return

    # grow trees by inserting each new leaf above every existing node
    def insert_everywhere(node, leaf):
        yield (node, leaf)
        if isinstance(node, tuple):
            for sub in insert_everywhere(node[0], leaf):
                yield (sub, node[1])
            for sub in insert_everywhere(node[1], leaf):
                yield (node[0], sub)

    def grow(k):
        if k == 2:
            yield (sites[0], sites[1])
            return
        for tree in grow(k - 1):
            yield from insert_everywhere(tree, sites[k - 1])

    for tree in grow(len(sites)):
        yield ClusterHierarchy(tree)
