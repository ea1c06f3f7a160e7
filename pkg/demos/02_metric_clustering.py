"""Clustering a finite metric by splitting its minimum spanning tree.

The MST is made ternary with zero-length edges, then cut recursively at the
edge that best balances the two sides.  The cost always lands between the
entropy lower bound and 3.42 times it.
"""

import numpy as np

from hclustpants import APPROXIMATION_RATIO, cluster_by_tree_splitting, clustering_cost_mst, optimal_clustering
from hclustpants.generators import random_metric, star_metric

rng = np.random.default_rng(2024)

print("Random metrics: algorithm vs exact optimum vs entropy lower bound")
for n in (6, 8, 10, 12):
    d = random_metric(n, rng)
    r = clustering_cost_mst(cluster_by_tree_splitting(d), d)
    opt = optimal_clustering(d).optimal_cost
    print(f"  n={n:2d}  cost {r.total_cost:8.3f}  optimum {opt:8.3f}  bound {r.lower_bound:8.3f}  cost/bound {r.ratio:.3f}")
print(f"  guaranteed cost/bound ceiling: {APPROXIMATION_RATIO:.4f}")

print("\nThe unit star needs cost of order n log n:")
for n in (8, 32, 128, 512):
    d = star_metric(n)
    r = clustering_cost_mst(cluster_by_tree_splitting(d), d)
    print(f"  n={n:4d}  cost {r.total_cost:9.1f}  cost/(n log2 n) {r.total_cost / (n * np.log2(n)):.3f}")
