"""Convex hulls, Minkowski combinations and support functionals.

Every representable set is closed, so the closed convex hull coincides with
the convex hull here.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hausdorff import hausdorff_distance
from .sets import FiniteCompactSet, Interval, Polygon, Subtree, check_member
from .spaces import NormedSpace, RTree, Space, check_t

DEFAULT_DIRECTIONS = 3600


def convex_hull(space: Space, S: FiniteCompactSet):
    """Convex hull of a finite set: an Interval, Polygon or spanned Subtree."""
    check_member(space, S)
    if isinstance(space, RTree):
        return Subtree.span(space, S.points)
    if space.dim == 1:
        return Interval(float(S.points[:, 0].min()), float(S.points[:, 0].max()))
    if space.dim == 2:
        return Polygon(tuple(map(tuple, S.points)))
    raise ValueError(f"convex bodies are only modelled up to dimension 2, not {space.dim}")


def body_from_points(space: Space, X: np.ndarray):
    return convex_hull(space, FiniteCompactSet(space, X))


def minkowski_combination(A, B, t: float):
    """``(1-t)A + tB`` for intervals or polygons (closure is a no-op here)."""
    t = check_t(t)
    if isinstance(A, Subtree) or isinstance(B, Subtree):
        raise TypeError("Minkowski combinations are undefined on trees")
    if type(A) is not type(B):
        raise TypeError("Minkowski combination needs two bodies of the same kind")
    if t == 0.0:
        return A
    if t == 1.0:
        return B
    if isinstance(A, Interval):
        return Interval((1.0 - t) * A.lo + t * B.lo, (1.0 - t) * A.hi + t * B.hi)
    P, Q = (1.0 - t) * A.array, t * B.array
    if len(P) < 3 or len(Q) < 3:
        sums = (P[:, None, :] + Q[None, :, :]).reshape(-1, 2)
        return Polygon(tuple(map(tuple, sums)))
    return Polygon._from_convex_ring(_merge_edges(P, Q))


def _edge_angles(V: np.ndarray):
    E = np.concatenate([V[1:], V[:1]]) - V + 0.0
    ang = np.arctan2(E[:, 1], E[:, 0])
    # a CCW ring from its lexicographically smallest vertex turns through (-pi/2, 3pi/2];
    # the wrap is decided on exact signs since arctan2 rounds near-vertical edges to -pi/2
    wrap = (E[:, 1] < 0) & (E[:, 0] <= 0)
    return E, np.where(wrap, ang + 2 * np.pi, ang)


def _merge_edges(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Vertex candidates of P + Q for canonical rings: n + m points instead of n * m."""
    EP, aP = _edge_angles(P)
    EQ, aQ = _edge_angles(Q)
    E = np.concatenate([EP, EQ])
    order = np.argsort(np.concatenate([aP, aQ]), kind="stable")
    return (P[0] + Q[0]) + np.vstack([np.zeros((1, 2)), np.cumsum(E[order], axis=0)[:-1]])


def _as_dirs(A, u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    dim = 1 if isinstance(A, Interval) else 2
    return u.reshape(-1, dim)


def support_functional(A, u):
    """``s_A(u) = sup_{a in A} <u, a>``; vectorised over rows of u."""
    if isinstance(A, Subtree):
        raise TypeError("support functionals need a linear body")
    U = _as_dirs(A, u)
    vals = np.max(U @ A.extreme_points().T, axis=1)
    return float(vals[0]) if np.ndim(u) <= (0 if isinstance(A, Interval) else 1) else vals


def direction_grid(dim: int, n_dirs: int = DEFAULT_DIRECTIONS) -> np.ndarray:
    """Uniform angular grid on the unit circle (or {+1, -1} on the line)."""
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if n_dirs < 8:
        raise ValueError("need at least 8 support directions")
    theta = 2.0 * np.pi * np.arange(n_dirs) / n_dirs
    return np.column_stack([np.cos(theta), np.sin(theta)])


@dataclass(frozen=True)
class SupportSample:
    directions: np.ndarray
    values: np.ndarray


def support_sample(A, n_dirs: int = DEFAULT_DIRECTIONS) -> SupportSample:
    dim = 1 if isinstance(A, Interval) else 2
    U = direction_grid(dim, n_dirs)
    return SupportSample(U, np.asarray(support_functional(A, U)))


def hormander_gap(A, B, n_dirs: int = DEFAULT_DIRECTIONS, space: NormedSpace | None = None) -> float:
    """``|sup_u |s_A(u) - s_B(u)| - d_H(A, B)|`` over a sampled unit circle.

    The support map is an isometry from Euclidean convex bodies into bounded
    functions on the dual ball, so the gap only measures sampling error.
    """
    if space is None:
        space = NormedSpace(1 if isinstance(A, Interval) else 2, "l2")
    if space.norm != "l2" and space.dim != 1:
        raise ValueError("the sampled support-function isometry is only asserted for the Euclidean norm")
    check_member(space, A)
    check_member(space, B)
    sa, sb = support_sample(A, n_dirs), support_sample(B, n_dirs)
    sampled = float(np.max(np.abs(sa.values - sb.values)))
    return abs(sampled - hausdorff_distance(space, A, B))


def cco_lipschitz_slack(space: Space, S: FiniteCompactSet, T: FiniteCompactSet) -> float:
    """``d_H(hull S, hull T) - d_H(S, T)``; non-positive when the hull map is 1-Lipschitz."""
    return hausdorff_distance(space, convex_hull(space, S), convex_hull(space, T)) - hausdorff_distance(space, S, T)
