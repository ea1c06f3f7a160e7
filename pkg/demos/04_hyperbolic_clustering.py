"""Clustering in the hyperbolic plane.

Sites far from each other are first thinned to a well-separated subset.  Each
chosen center's neighbourhood is small enough to treat as Euclidean through
a Klein chart, and the neighbourhoods are joined by splitting an MST over the
centers.  For separated sets the hull perimeter and MST length track each
other within a factor of two.
"""

import numpy as np

from hclustpants import cluster_hyperbolic, mst_hull_ratio, well_separated_subset
from hclustpants.generators import hyperbolic_disk

pts = hyperbolic_disk(200, radius=5.0, seed=1)
sep = well_separated_subset(pts, delta=1.0)
print(f"{len(pts)} sites, {len(sep.chosen)} centers at mutual distance >= 1")

res = cluster_hyperbolic(pts)
print(f"total hull perimeter {res.total_perimeter:.2f}, backbone cost {res.backbone_cost:.2f}")
sizes = sorted((len([s for s, c in sep.assignment.items() if c == center]) for center in sep.chosen), reverse=True)
print(f"largest cells: {sizes[:5]}")

ratios = []
rng = np.random.default_rng(7)
for _ in range(20):
    p = hyperbolic_disk(150, radius=float(rng.uniform(3, 8)), seed=rng)
    chosen = well_separated_subset(p).chosen
    ratios.append(mst_hull_ratio(p[chosen]))
print(f"hull/MST over 20 separated sets: min {min(ratios):.3f}, max {max(ratios):.3f}")
