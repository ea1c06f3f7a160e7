"""Bisectable trees and the clustering reduction built on them.

A tree on 2^i vertices is i-bisectable when one edge cut leaves two
(i-1)-bisectable halves.  Clustering the graph metric (1 on edges, 2 off
edges) of such a tree costs exactly i 2^i - 2^i + 1, and any graph whose
optimum hits that number must contain a bisectable spanning tree.
"""

from hclustpants import FreeTree, count_bisectable, is_bisectable, metric_from_graph, optimal_clustering
from hclustpants.generators import random_bisectable_tree
from hclustpants.oracle import reduction_target

print("How many bisectable trees are there?")
for i in range(1, 6):
    c = count_bisectable(i)
    print(f"  i={i}: {c.d} bisectable trees on {2**i} vertices")

path = FreeTree(4, [(0, 1), (1, 2), (2, 3)])
star = FreeTree(4, [(0, 1), (0, 2), (0, 3)])
print("\nThe path on four vertices splits in the middle:", is_bisectable(path).hierarchy)
print("The star on four vertices cannot be split evenly:", bool(is_bisectable(star)))

print("\nOptimal clustering cost of the graph metric against the target K:")
for i in (2, 3):
    edges = random_bisectable_tree(i, seed=i)
    opt = optimal_clustering(metric_from_graph(2**i, edges))
    print(f"  random {i}-bisectable tree: optimum {opt.optimal_cost:g}, K = {reduction_target(i)}")
star8 = [(0, v) for v in range(1, 8)]
print(f"  star on 8 vertices: optimum {optimal_clustering(metric_from_graph(8, star8)).optimal_cost:g}, K = 17")
