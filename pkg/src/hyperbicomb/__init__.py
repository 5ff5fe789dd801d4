"""Geodesic bicombings on hyperspaces of metric spaces.

Base spaces (normed line and planes, Euclidean R^n, metric trees), the
Hausdorff metric, the bicombing on closed bounded convex sets, the
metric-projection bicombing on finite sets, and a randomised checker for
the bicombing axioms.
"""
from .cb_bicombing import CBForm, cb_sigma, geodesic_trace
from .convexity import convex_hull, hormander_gap, minkowski_combination, support_functional
from .hausdorff import directed_distance, hausdorff_distance, hausdorff_infimum_form, point_to_set
from .k_bicombing import k_sigma, metric_projection, naive_union_sigma, omega
from .sets import FiniteCompactSet, Interval, Polygon, Subtree
from .spaces import NormedSpace, RTree, TreePoint, euclidean, line, plane

__all__ = [
    "CBForm", "FiniteCompactSet", "Interval", "NormedSpace", "Polygon", "RTree", "Subtree", "TreePoint",
    "cb_sigma", "convex_hull", "directed_distance", "euclidean", "geodesic_trace", "hausdorff_distance",
    "hausdorff_infimum_form", "hormander_gap", "k_sigma", "line", "metric_projection",
    "minkowski_combination", "naive_union_sigma", "omega", "plane", "point_to_set", "support_functional",
]
