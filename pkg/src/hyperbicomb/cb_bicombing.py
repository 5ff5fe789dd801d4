"""The bicombing on closed bounded convex sets CB(X).

``Sigma(A, B, t)`` is the closed convex hull of ``{sigma(a, b, t) : a in A, b in B}``.
The union is never materialised: each body is cut into pieces on which the
base bicombing is affine in the piece coordinates (polygons are single
pieces; subtrees are cut at tree vertices), and the image of a pair of pieces
is spanned by the images of its corners.

Three evaluation routes are provided:

``minkowski``  closure of ``(1-t)A + tB`` (normed spaces);
``tree``       union of the piecewise images, no hull taken (R-trees);
``hull``       hull of the base bicombing applied to all generator pairs.
"""
from __future__ import annotations

from enum import Enum

import numpy as np

from .convexity import body_from_points, minkowski_combination
from .hausdorff import hausdorff_distance
from .sets import Interval, Polygon, Subtree, check_member
from .spaces import TOL, NormedSpace, RTree, Space, check_t


class CBForm(str, Enum):
    MINKOWSKI = "minkowski"
    TREE = "tree"
    HULL = "hull"


def default_form(space: Space) -> CBForm:
    return CBForm.TREE if isinstance(space, RTree) else CBForm.MINKOWSKI


def _check_form(space: Space, form: CBForm) -> CBForm:
    form = CBForm(form)
    if form is CBForm.MINKOWSKI and not isinstance(space, NormedSpace):
        raise ValueError("the Minkowski form needs a normed space")
    if form is CBForm.TREE and not isinstance(space, RTree):
        raise ValueError("the tree form needs an R-tree")
    return form


def generators(A) -> np.ndarray:
    """Points whose pairwise images span Sigma: vertices, or piece ends on a tree."""
    if isinstance(A, Subtree):
        return A.generators()
    return A.extreme_points()


def _pair_rows(G: np.ndarray, H: np.ndarray):
    i, j = np.meshgrid(np.arange(len(G)), np.arange(len(H)), indexing="ij")
    return G[i.ravel()], H[j.ravel()]


def _corner_plan(space: RTree, A: Subtree, B: Subtree):
    # sweeping t over a fixed pair reuses the routes; B is kept alive with its id
    key = ("corners", id(B))
    hit = A._memo.get(key)
    if hit is not None and hit[0] is B:
        return hit[1]
    PA, PB = A.pieces(), B.pieces()
    ia, ib = np.meshgrid(np.arange(len(PA)), np.arange(len(PB)), indexing="ij")
    corners_a = PA[ia.ravel()][:, [0, 0, 1, 1]].reshape(-1, 2)
    corners_b = PB[ib.ravel()][:, [0, 1, 0, 1]].reshape(-1, 2)
    plan = space.geodesic_plan(corners_a, corners_b)
    A._memo[key] = (B, plan)
    return plan


def _tree_union(space: RTree, A: Subtree, B: Subtree, t: float) -> Subtree:
    # image of a piece pair is the geodesic spanned by its four corner images
    img = space.sigma_rows(None, None, t, plan=_corner_plan(space, A, B))
    proj = space.projections(img).reshape(-1, 4, space.ne)
    lo, hi = proj.min(axis=1), proj.max(axis=1)              # (pairs, ne)
    covers = hi - lo > TOL
    if not covers.any():
        return Subtree.point(space, img[0])
    ulo = np.where(covers, lo, np.inf).min(axis=0)
    uhi = np.where(covers, hi, -np.inf).max(axis=0)
    keep = np.nonzero(np.isfinite(ulo))[0]
    return Subtree._from_arrays(space, keep, ulo[keep], uhi[keep])


def cb_sigma(space: Space, form, A, B, t: float):
    """Point at parameter t on the CB(X) geodesic from A to B."""
    t = check_t(t)
    form = _check_form(space, form)
    check_member(space, A)
    check_member(space, B)
    if not (isinstance(A, (Interval, Polygon, Subtree)) and isinstance(B, (Interval, Polygon, Subtree))):
        raise TypeError("cb_sigma acts on convex bodies")
    if t == 0.0:
        return A
    if t == 1.0:
        return B
    if form is CBForm.MINKOWSKI:
        return minkowski_combination(A, B, t)
    if form is CBForm.TREE:
        return _tree_union(space, A, B, t)
    X, Y = _pair_rows(generators(A), generators(B))
    return body_from_points(space, space.sigma_rows(X, Y, t))


def cb_geodesic_slack(space: Space, form, A, B, s: float, t: float) -> float:
    """``|d_H(Sigma(s), Sigma(t)) - |t - s| d_H(A, B)|``."""
    s, t = check_t(s, "s"), check_t(t)
    lhs = hausdorff_distance(space, cb_sigma(space, form, A, B, s), cb_sigma(space, form, A, B, t))
    return abs(lhs - abs(t - s) * hausdorff_distance(space, A, B))


def contract_to(space: Space, form, A, P, t: float):
    """The contraction ``(A, t) -> Sigma(A, P, t)`` of CB(X) onto P."""
    return cb_sigma(space, form, A, P, t)


def geodesic_trace(space: Space, form, A, B, k: int) -> list:
    """Snapshots at ``t = 0, 1/k, ..., 1``."""
    if k < 1:
        raise ValueError("need at least one step")
    return [cb_sigma(space, form, A, B, i / k) for i in range(k + 1)]
