"""Euclidean clustering, pants decompositions, and the gap between them.

Three points at (0,0), (0,1), (L,0): every hierarchy pays about 2L because
the root cluster spans everything, but one short curve around the close pair
already cuts the punctured plane into a single pair of pants.
"""

import tempfile
from pathlib import Path

import numpy as np

from hclustpants import (
    clustering_cost_perimeter,
    hierarchy_to_pants,
    optimal_clustering,
    quadtree_clustering,
    validate_pants,
)
from hclustpants.files import ResultFile
from hclustpants.cli import cmd_render

L = 100.0
pts = np.array([(0.0, 0.0), (0.0, 1.0), (L, 0.0)])
h = quadtree_clustering(pts)
dec = hierarchy_to_pants(h, pts)
opt = optimal_clustering(points=pts, objective="perimeter_sum")
print(f"hierarchy {h}")
print(f"best clustering cost {opt.optimal_cost:.3f}, pants length {dec.total_length:.4f}")

rng = np.random.default_rng(3)
pts = rng.random((12, 2))
h = quadtree_clustering(pts)
cost = clustering_cost_perimeter(h, pts)
dec = hierarchy_to_pants(h, pts)
report = validate_pants(dec, pts)
print(f"\n12 random points: clustering cost {cost.total_cost:.3f}, {len(dec.curves)} curves, valid={report.ok}")

out = Path(tempfile.gettempdir()) / "twelve_points_pants.svg"
result = ResultFile(
    "euclidean",
    "euclid-quadtree",
    h,
    {},
    curves=[{"cluster": list(c.cluster_id), "vertices": c.vertices.tolist()} for c in dec.curves],
    points=pts.tolist(),
)
out.write_text(cmd_render(result))
print(f"drawing written to {out}")
