"""Hierarchical clustering by sum of cluster sizes, and pants decompositions."""

from .bisectable import BisectCounts, BisectionResult, FreeTree, brute_force_bisectable, count_bisectable, is_bisectable
from .geometry import (
    DomainError,
    PointE2,
    PointH2,
    Polygon,
    convex_hull,
    euclidean_distance,
    hull_perimeter,
    hyperbolic_distance,
    hyperbolic_hull_perimeter,
    klein_from_poincare,
    poincare_from_klein,
)
from .hierarchy import ClusterHierarchy, HierarchyError
from .hyperbolic import (
    HyperbolicClustering,
    RestrictedCell,
    SeparatedSubset,
    cluster_hyperbolic,
    mst_hull_ratio,
    restricted_voronoi_cells,
    well_separated_subset,
)
from .oracle import OracleResult, evaluate_cost, metric_from_graph, optimal_clustering
from .pants import ClosedCurve, PantsDecomposition, PantsError, ValidationReport, hierarchy_to_pants, min_hull_gap, validate_pants
from .quadtree import CompressedQuadtree, build_compressed_quadtree, clustering_cost_perimeter, quadtree_clustering, quadtree_to_hierarchy
from .treecluster import (
    APPROXIMATION_RATIO,
    CostReport,
    WeightedTree,
    best_split_edge,
    cluster_by_tree_splitting,
    clustering_cost_mst,
    entropy_lower_bound,
    entropy_upper_bound,
    mst_metric,
    split_tree,
    ternarize,
)

__version__ = "0.1.0"

__all__ = [
    "APPROXIMATION_RATIO",
    "best_split_edge",
    "BisectCounts",
    "BisectionResult",
    "brute_force_bisectable",
    "build_compressed_quadtree",
    "ClosedCurve",
    "cluster_by_tree_splitting",
    "cluster_hyperbolic",
    "ClusterHierarchy",
    "clustering_cost_mst",
    "clustering_cost_perimeter",
    "CompressedQuadtree",
    "convex_hull",
    "CostReport",
    "count_bisectable",
    "DomainError",
    "entropy_lower_bound",
    "entropy_upper_bound",
    "euclidean_distance",
    "evaluate_cost",
    "FreeTree",
    "hierarchy_to_pants",
    "HierarchyError",
    "hull_perimeter",
    "hyperbolic_distance",
    "hyperbolic_hull_perimeter",
    "HyperbolicClustering",
    "is_bisectable",
    "klein_from_poincare",
    "metric_from_graph",
    "min_hull_gap",
    "mst_hull_ratio",
    "mst_metric",
    "optimal_clustering",
    "OracleResult",
    "PantsDecomposition",
    "PantsError",
    "poincare_from_klein",
    "PointE2",
    "PointH2",
    "Polygon",
    "quadtree_clustering",
    "quadtree_to_hierarchy",
    "restricted_voronoi_cells",
    "RestrictedCell",
    "SeparatedSubset",
    "split_tree",
    "ternarize",
    "validate_pants",
    "ValidationReport",
    "WeightedTree",
    "well_separated_subset",
]
